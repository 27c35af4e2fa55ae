#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pscat/polynomials.hpp"
#include "pscat/rng.hpp"
#include "pscat/spectrum.hpp"

namespace pscat {

struct PsiResult {
    std::complex<double> value;
    double error_estimate = 0.0;  // absolute, on psi
    int panels = 0;
};

// psi(x) = exp(-I(x) / (16 pi)),  I(x) = int_R (1 - exp(i sum_q x_q t^{-2q})) dt.
// Throws AccuracyError when the tail extrapolation does not settle.
PsiResult psi_eval(int p, const std::vector<double>& x, double quad_tol = 1e-9);
std::complex<double> psi(int p, const std::vector<double>& x, double quad_tol = 1e-9);
// Same integral along a path in the complex w = t^{-2} plane that leaves the
// axis where the phase moves fast.  psi_eval falls back to it when the
// real-axis quadrature would need too many panels.
PsiResult psi_eval_contour(int p, const std::vector<double>& x, double quad_tol = 1e-9);

struct StableMarginal {
    int q = 1;
    double c = 0.0;
    double alpha = 1.0;
    double skew = 1.0;
};

// c_q = ((1/8pi) cos(pi/4q) Gamma(1 - 1/2q))^{2q}
StableMarginal stable_params(int q);

// exp(-|c_q x|^{1/2q} (1 - i sign(x) tan(pi/4q))): psi restricted to axis q.
std::complex<double> stable_cf(int q, double x);

double levy_density(double t);
double levy_cdf(double t);

struct InversionResult {
    std::vector<double> values;
    double truncation_estimate = 0.0;
    std::size_t psi_evaluations = 0;
};

// Density of the law with characteristic function psi, by Fourier inversion.
// p = 1: points are scalars t (one-element vectors); accuracy is checked and
// AccuracyError thrown when the truncation estimate exceeds quad_tol.
// p = 2: best effort on a truncated tensor grid; the estimate is reported
// and never enforced.
InversionResult invert_density(int p, const std::vector<std::vector<double>>& points,
                               double quad_tol = 1e-6, std::size_t node_budget = 200000);

// Fitted C with log|psi(x e_q)| <= -C |x|^{1/(2p)} over the given |x| grid.
double fit_decay_constant(int p, int q, const std::vector<double>& xs);

// (S^1, ..., S^p) at tau = proxy_tau with m = 1: approximate draw from the
// limit law.  The window is [tau (1 - f), tau (1 + f)].
std::vector<double> sample_limit_vector(int p, double proxy_tau, double window_frac, RngStream& rng);

// n draws of (R_2(l), ..., R_p(l)); l <= 0 or infinite gives all ones.
// Draw i uses rng_stream(seed, i).
std::vector<std::vector<double>> sample_R(double l, int p, std::size_t n, std::uint64_t seed,
                                          double proxy_tau = 1e5, double window_frac = 0.5,
                                          unsigned threads = 0);

// Product Gaussian kernel density estimate with Silverman bandwidths.
class KernelDensity {
public:
    explicit KernelDensity(std::vector<std::vector<double>> samples);
    double operator()(const std::vector<double>& y) const;
    const std::vector<double>& bandwidths() const { return h_; }
    std::size_t dimension() const { return h_.size(); }

private:
    std::vector<std::vector<double>> xs_;
    std::vector<double> h_;
};

// Quotient samples (S^2/(S^1)^2, ..., S^p/(S^1)^p).
std::vector<std::vector<double>> quotient_samples(int p, std::size_t n, std::uint64_t seed,
                                                  double proxy_tau = 1e5, double window_frac = 0.5,
                                                  unsigned threads = 0);

// D_l(x) = (2l)^{p(p-1)/2} prod_q 1/(A_q q!) D(y), y_q = (2l)^{q-1}/A_q Q_q(1, x_2..x_q),
// with D the quotient density supplied as a KDE.
std::vector<double> density_Dl(double l, int p, const std::vector<std::vector<double>>& points,
                               const KernelDensity& quotient_density,
                               const PartitionPolynomialTable& table);

}  // namespace pscat
