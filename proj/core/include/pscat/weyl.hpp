#pragma once

#include <cstdint>
#include <vector>

#include "pscat/multiplicity.hpp"
#include "pscat/spectrum.hpp"

namespace pscat {

// N_m(lambda) = 1 + sum_{lambda_k <= lambda} 4 m_k.  The spectrum must start
// at 0 and reach lambda.
double counting_function(const PoissonSpectrum& spec, double lambda);

struct WeylMoments {
    double mean = 1.0;
    double variance = 0.0;
};

// mean 1 + lambda / 4 pi, variance (1/pi) int_0^lambda m.
WeylMoments weyl_moments(const MultiplicityFunction& m, double lambda);

struct CountingRecord {
    std::vector<double> lambda_grid;
    std::vector<std::vector<double>> counts;  // counts[replica][grid index]
};

// One spectrum on [0, max grid] per replica (stream (seed, replica)).
CountingRecord sample_counts(const MultiplicityFunction& m, const std::vector<double>& lambda_grid,
                             std::size_t replicas, std::uint64_t seed, unsigned threads = 0);

struct LlnRow {
    double lambda = 0.0;
    double mean_ratio = 0.0;        // replica mean of N / lambda
    double mean_rel_dev = 0.0;      // |mean_ratio / (1/4pi) - 1|
    double rms_rel_dev = 0.0;       // sqrt(mean over replicas of (ratio 4pi - 1)^2)
    double max_rel_dev = 0.0;       // max over replicas of |ratio 4pi - 1|
};

std::vector<LlnRow> lln_experiment(const MultiplicityFunction& m, const std::vector<double>& lambdas,
                                   std::size_t replicas, std::uint64_t seed, unsigned threads = 0);

struct CltResult {
    double ks_distance = 1.0;
    bool pass = false;
    std::size_t n = 0;
};

// KS distance between the counts standardized by weyl_moments and N(0,1).
CltResult clt_experiment(const MultiplicityFunction& m, double lambda, std::size_t replicas, std::uint64_t seed,
                         double threshold = 0.04, unsigned threads = 0);

}  // namespace pscat
