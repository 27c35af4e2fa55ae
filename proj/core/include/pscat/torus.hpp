#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pscat/rational.hpp"

namespace pscat {

struct LatticeVector {
    long a = 0;
    long b = 0;
    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

struct LatticeLevel {
    double lambda = 0.0;
    Integer key;  // a^2 Q^2 + b^2 P^2 for alpha^2 = P/Q
    std::vector<LatticeVector> vectors;
    std::size_t multiplicity() const { return vectors.size(); }
};

// Dual lattice of the torus R^2 / (alpha Z x alpha^{-1} Z) up to a cutoff.
// xi = (a/alpha, alpha b), lambda = 4 pi^2 |xi|^2.  The cutoff is a bound on
// |xi|^2, i.e. lambda <= 4 pi^2 * radius_sq_max.  Level 0 is the zero vector.
struct TorusLattice {
    Rational alpha_sq;
    Rational radius_sq_max;
    std::vector<LatticeLevel> levels;

    std::size_t point_count() const;
    long max_abs_a() const;
    long max_abs_b() const;
};

TorusLattice build_lattice(const Rational& alpha_sq, const Rational& radius_sq_max);

// f_tau(x) = sum_{k>=1} phi_k(x) / (lambda_k - tau) at torus coordinates
// s in [0,1)^2 (x = (alpha s_1, s_2 / alpha)).  Returned complex so callers
// can check that the imaginary part vanishes.
std::complex<double> eval_f(const TorusLattice& lat, double tau, double s1, double s2);

// Sum over p-tuples of nonzero lattice points with zero sum of
// prod 1/(lambda(xi_j) - tau).  Meet in the middle with exact integer sums.
double deterministic_moment(const TorusLattice& lat, double tau, int p,
                            std::uint64_t budget = 2'000'000'000ull);

// Grid average of f_tau^p on an N x N grid, N > p * max frequency.
double grid_moment(const TorusLattice& lat, double tau, int p, int grid_n = 0);

// sum_k r_k / (lambda_k - tau)^2 over positive levels.
double variance_formula(const TorusLattice& lat, double tau);

struct NewEigenvalues {
    std::vector<int> k;
    std::vector<double> tau;
    // Magnitude of the first omitted term of the left and right series.
    double lhs_truncation_bias = 0.0;
    double rhs_truncation_bias = 0.0;
};

// Roots tau_k^phi of the truncated spectral equation for k in [k_lo, k_hi],
// using levels 0..k_hi+reg_terms.  Root k lies in (lambda_{k-1}, lambda_k),
// root 0 in (-inf, 0).
NewEigenvalues solve_new_eigenvalues(const TorusLattice& lat, double phi, int k_lo, int k_hi,
                                     int reg_terms);

}  // namespace pscat
