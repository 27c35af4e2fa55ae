#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pscat/partitions.hpp"
#include "pscat/polynomials.hpp"
#include "pscat/rational.hpp"
#include "pscat/rng.hpp"

namespace pscat {

enum class Variant { rectangular, square_symmetric };

Variant parse_variant(const std::string& s);
std::string to_string(Variant v);

struct WaveLevel {
    double lambda = 0.0;
    std::vector<double> thetas;
    std::vector<std::array<double, 2>> vectors;
};

// Random wave-vector sets: per level, m_k directions in (0, pi/2) giving 4 m_k
// vectors, or n_k directions in (0, pi/4) giving 8 n_k vectors.  Vectors are
// stored in +- pairs where the second is the exact negation of the first.
struct WaveVectorSystem {
    Variant variant = Variant::rectangular;
    std::vector<WaveLevel> levels;

    // Effective multiplicity m_k = r_k / 4 (2 n_k for the square variant).
    std::vector<long> effective_multiplicities() const;
    double max_lambda() const;
};

WaveVectorSystem sample_system(const std::vector<double>& lambdas,
                               const std::vector<long>& multiplicities, Variant variant,
                               RngStream& rng);

// Number of tuples in prod_k Lambda_k^{a_k} (a indexes levels from 1) whose
// sum has norm <= zero_tol.  zero_tol <= 0 selects 1e-9 sqrt(lambda_max).
// The count is recomputed at 1e-12 and 1e-6 times sqrt(lambda_max); any
// disagreement raises AccuracyError.
std::uint64_t na_bruteforce(const WaveVectorSystem& system, const FiniteSupportSequence& a,
                            double zero_tol = -1.0, std::uint64_t budget = 100'000'000ull);

// Almost-sure value of N_a from the level multiplicities m_k
// (multiplicities[k-1] is m_k).  Exact; zero when some a_k is odd.
Integer na_formula(const FiniteSupportSequence& a, const std::vector<long>& multiplicities);

// Moment of order `order` of the step-two model: zero for odd order,
// (2p)!/p! P_p(2 A_1 S^1, ..., 2 A_p S^p) for order 2p.
double randomized_moment_step2(const WaveVectorSystem& system, const PartitionPolynomialTable& table,
                               double tau, int order);

// The same moment from its defining series over a with |a| = order, using
// na_formula for N_a.
double moment_series_direct(const WaveVectorSystem& system, double tau, int order);

}  // namespace pscat
