#pragma once

#include <cstdint>
#include <vector>

#include "pscat/multiplicity.hpp"
#include "pscat/polynomials.hpp"
#include "pscat/rational.hpp"
#include "pscat/rng.hpp"

namespace pscat {

struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

// [max(0, tau - W), tau + W] with W = frac * tau.
Window window_around(double tau, double frac);

struct PoissonSpectrum {
    Window window;
    std::vector<double> points;  // strictly increasing
    std::vector<double> mults;   // m(points[k])
    std::uint64_t master_seed = 0;
    std::uint64_t replica_id = 0;
};

// Poisson process of intensity 1/(16 pi m(t)) on the window, by thinning.
// The candidate rate is piecewise constant, 1/(16 pi m(b_i)) on block
// [b_i, b_{i+1}); m is non-decreasing, so this dominates the target rate and
// acceptance with probability m(b_i)/m(t) is exact.
PoissonSpectrum sample_spectrum(const MultiplicityFunction& m, Window window, RngStream& rng,
                                int blocks = 256);

struct SpectralSums {
    double tau = 0.0;
    double m_tau = 1.0;              // m(tau), used by the scaled normalization
    std::vector<double> values;      // S^1 .. S^p
    std::vector<double> tail_bias;   // Campbell bound on the omitted tails
    double S(int q) const { return values.at(q - 1); }
    int p_max() const { return static_cast<int>(values.size()); }
};

// S^q = sum_k m_k / (lambda_k - tau)^{2q}.  `margin` is W; the window must
// reach tau + W above and tau - W below (or start at 0).
SpectralSums spectral_sums(const PoissonSpectrum& spec, double tau, int p_max, double margin);

// Partition-sum form of the randomized even moment M^{2p}.
double randomized_even_moment(const SpectralSums& sums, const PartitionPolynomialTable& table, int p);
// (2p)!/p! P_p(2 A_1 S^1, ..., 2 A_p S^p)
double randomized_even_moment_P(const SpectralSums& sums, const PartitionPolynomialTable& table, int p);

// (M^4/(M^2)^2, ..., M^{2p}/(M^2)^p) from the moments themselves.
std::vector<double> normalized_moments(const SpectralSums& sums, const PartitionPolynomialTable& table,
                                       int p_max);
// Same ratios as mu_{2q} P_q(1, A_2/(2 m) y_2, ..., A_q/(2 m)^{q-1} y_q) with
// y_j = m^{2j-1} S^j / (m S^1)^j and m = sums.m_tau.
std::vector<double> normalized_moments_scaled(const SpectralSums& sums,
                                              const PartitionPolynomialTable& table, int p_max);

// mu_n: moments of the standard Gaussian, exact.
Rational gaussian_moment(int n);

struct MomentRow {
    std::uint64_t replica = 0;
    std::size_t points = 0;
    std::vector<double> S, M, norm, tail_bias;  // M[q-1] = M^{2q}, norm[q-2] = M^{2q}/(M^2)^q
};

// Replica r uses rng_stream(seed, r).  Rows are in replica order whatever
// the thread count.
std::vector<MomentRow> simulate_moments(const MultiplicityFunction& m, double tau, int p_max,
                                        std::size_t replicas, double window_frac, std::uint64_t seed,
                                        unsigned threads = 0);

}  // namespace pscat
