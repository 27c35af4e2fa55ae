#include <cmath>
#include <limits>

#include "pscat/error.hpp"
#include "pscat/limit_laws.hpp"
#include "pscat/parallel.hpp"
#include "pscat/stats.hpp"

namespace pscat {

std::vector<double> sample_limit_vector(int p, double proxy_tau, double window_frac, RngStream& rng) {
    if (p < 1) throw ValidationError("sample_limit_vector: p must be >= 1");
    if (proxy_tau < 1e4) throw ValidationError("sample_limit_vector: proxy_tau must be >= 1e4");
    const auto one = MultiplicityFunction::constant(1.0);
    PoissonSpectrum spec = sample_spectrum(one, window_around(proxy_tau, window_frac), rng);
    return spectral_sums(spec, proxy_tau, p, window_frac * proxy_tau).values;
}

std::vector<std::vector<double>> quotient_samples(int p, std::size_t n, std::uint64_t seed, double proxy_tau,
                                                  double window_frac, unsigned threads) {
    if (p < 2) throw ValidationError("quotient_samples: p must be >= 2");
    std::vector<std::vector<double>> out(n);
    parallel_for(n, threads, [&](std::size_t i) {
        RngStream rng(seed, i);
        auto S = sample_limit_vector(p, proxy_tau, window_frac, rng);
        std::vector<double> y;
        for (int q = 2; q <= p; ++q) y.push_back(S[q - 1] / std::pow(S[0], q));
        out[i] = std::move(y);
    });
    return out;
}

std::vector<std::vector<double>> sample_R(double l, int p, std::size_t n, std::uint64_t seed, double proxy_tau,
                                          double window_frac, unsigned threads) {
    if (p < 2) throw ValidationError("sample_R: p must be >= 2");
    if (std::isinf(l) && l > 0.0) return std::vector<std::vector<double>>(n, std::vector<double>(p - 1, 1.0));
    if (!(l > 0.0)) throw ValidationError("sample_R: l must be positive or infinite");
    const auto table = build_table(p);
    auto ys = quotient_samples(p, n, seed, proxy_tau, window_frac, threads);
    std::vector<std::vector<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x(p), r;
        x[0] = 1.0;
        for (int q = 2; q <= p; ++q) {
            x[q - 1] = table.A(q).get_d() / std::pow(2.0 * l, q - 1) * ys[i][q - 2];
            r.push_back(eval_P(table, q, std::vector<double>(x.begin(), x.begin() + q)));
        }
        out[i] = std::move(r);
    }
    return out;
}

KernelDensity::KernelDensity(std::vector<std::vector<double>> samples) : xs_(std::move(samples)) {
    if (xs_.empty()) throw ValidationError("KernelDensity: no samples");
    const std::size_t d = xs_[0].size();
    const double n = static_cast<double>(xs_.size());
    for (const auto& s : xs_)
        if (s.size() != d) throw ValidationError("KernelDensity: ragged samples");
    // Silverman: h_j = sigma_j (4 / ((d + 2) n))^{1/(d+4)}
    const double factor = std::pow(4.0 / ((d + 2.0) * n), 1.0 / (d + 4.0));
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<double> col;
        for (const auto& s : xs_) col.push_back(s[j]);
        const double sd = std::sqrt(summarize(col).variance);
        h_.push_back(std::max(sd, 1e-12) * factor);
    }
}

double KernelDensity::operator()(const std::vector<double>& y) const {
    if (y.size() != h_.size()) throw ValidationError("KernelDensity: dimension mismatch");
    const double norm = 1.0 / std::sqrt(2.0 * M_PI);
    long double acc = 0.0L;
    for (const auto& s : xs_) {
        double k = 1.0;
        for (std::size_t j = 0; j < h_.size(); ++j) {
            const double z = (y[j] - s[j]) / h_[j];
            k *= norm * std::exp(-0.5 * z * z) / h_[j];
        }
        acc += k;
    }
    return static_cast<double>(acc / xs_.size());
}

std::vector<double> density_Dl(double l, int p, const std::vector<std::vector<double>>& points,
                               const KernelDensity& quotient_density, const PartitionPolynomialTable& table) {
    if (!(l > 0.0) || std::isinf(l)) throw ValidationError("density_Dl: l must be positive and finite");
    if (p < 2 || p > table.p_max()) throw ValidationError("density_Dl: p outside table");
    if (quotient_density.dimension() != static_cast<std::size_t>(p - 1))
        throw ValidationError("density_Dl: quotient density has the wrong dimension");
    double jac = std::pow(2.0 * l, p * (p - 1) / 2.0);
    for (int q = 2; q <= p; ++q) jac /= table.A(q).get_d() * factorial(q).get_d();
    std::vector<double> out;
    for (const auto& x : points) {
        if (static_cast<int>(x.size()) != p - 1) throw ValidationError("density_Dl: point dimension mismatch");
        std::vector<double> full(p), y;
        full[0] = 1.0;
        for (int q = 2; q <= p; ++q) full[q - 1] = x[q - 2];
        for (int q = 2; q <= p; ++q) {
            double Qq = eval_Q(table, q, std::vector<double>(full.begin(), full.begin() + q));
            y.push_back(std::pow(2.0 * l, q - 1) / table.A(q).get_d() * Qq);
        }
        out.push_back(jac * quotient_density(y));
    }
    return out;
}

}  // namespace pscat
