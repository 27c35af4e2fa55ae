#include "pscat/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "pscat/error.hpp"
#include "pscat/parallel.hpp"

namespace pscat {

Window window_around(double tau, double frac) {
    if (!(tau > 0.0) || !(frac > 0.0)) throw ValidationError("window needs tau > 0 and frac > 0");
    const double W = frac * tau;
    return {std::max(0.0, tau - W), tau + W};
}

PoissonSpectrum sample_spectrum(const MultiplicityFunction& m, Window window, RngStream& rng, int blocks) {
    if (!(window.lo >= 0.0) || !(window.hi >= window.lo) || !std::isfinite(window.hi))
        throw ValidationError("sample_spectrum: need 0 <= lo <= hi < inf");
    if (blocks < 1) throw ValidationError("sample_spectrum: blocks must be >= 1");
    PoissonSpectrum spec;
    spec.window = window;
    spec.master_seed = rng.seed();
    spec.replica_id = rng.stream_id();
    if (window.hi == window.lo) return spec;

    const double width = (window.hi - window.lo) / blocks;
    for (int i = 0; i < blocks; ++i) {
        const double a = window.lo + width * i;
        const double b = i + 1 == blocks ? window.hi : window.lo + width * (i + 1);
        const double ma = m(a);
        const double rate = 1.0 / (16.0 * M_PI * ma);
        double t = a;
        while (true) {
            t += rng.exponential(rate);
            if (t >= b) break;
            const double mt = m(t);
            if (mt != ma && rng.uniform() * mt >= ma) continue;
            if (!spec.points.empty() && t <= spec.points.back()) continue;
            spec.points.push_back(t);
            spec.mults.push_back(mt);
        }
    }
    return spec;
}

SpectralSums spectral_sums(const PoissonSpectrum& spec, double tau, int p_max, double margin) {
    if (p_max < 1) throw ValidationError("spectral_sums: p_max must be >= 1");
    if (!(margin > 0.0)) throw ValidationError("spectral_sums: margin must be positive");
    const double eps = 1e-9 * std::max(1.0, tau);
    if (tau + margin > spec.window.hi + eps || (spec.window.lo > 0.0 && tau - margin < spec.window.lo - eps))
        throw ValidationError("spectral_sums: tau is not inside the window with the requested margin");

    std::vector<long double> acc(p_max, 0.0L);
    for (std::size_t k = 0; k < spec.points.size(); ++k) {
        long double d = spec.points[k] - tau;
        if (std::abs(static_cast<double>(d)) < 1e-12 * std::max(1.0, tau))
            throw ValidationError("spectral_sums: tau collides with a spectral point");
        long double inv = 1.0L / (d * d), w = spec.mults[k];
        for (int q = 0; q < p_max; ++q) {
            w *= inv;
            acc[q] += w;
        }
    }
    SpectralSums s;
    s.tau = tau;
    for (int q = 1; q <= p_max; ++q) {
        s.values.push_back(static_cast<double>(acc[q - 1]));
        s.tail_bias.push_back(2.0 / (16.0 * M_PI) * std::pow(margin, 1.0 - 2.0 * q) / (2.0 * q - 1.0));
    }
    return s;
}

double randomized_even_moment(const SpectralSums& sums, const PartitionPolynomialTable& table, int p) {
    if (p < 1 || p > sums.p_max() || p > table.p_max())
        throw ValidationError("randomized_even_moment: p outside available range");
    // (2p)! sum_alpha (-1)^{p-|alpha|} 2^{|alpha|} / alpha! prod (A_q S^q)^{alpha_q}
    long double total = 0.0L;
    for (const auto& a : table.terms(p)) {
        long double term = std::ldexp(1.0L, a.length) / a.factorial().get_d();
        if ((p - a.length) % 2 == 1) term = -term;
        for (int q = 1; q <= p; ++q)
            for (int e = 0; e < a.alpha(q); ++e) term *= table.A(q).get_d() * sums.S(q);
        total += term;
    }
    return static_cast<double>(total * factorial(2 * p).get_d());
}

double randomized_even_moment_P(const SpectralSums& sums, const PartitionPolynomialTable& table, int p) {
    if (p < 1 || p > sums.p_max() || p > table.p_max())
        throw ValidationError("randomized_even_moment_P: p outside available range");
    std::vector<long double> x(p);
    for (int q = 1; q <= p; ++q) x[q - 1] = 2.0L * table.A(q).get_d() * sums.S(q);
    long double scale = factorial(2 * p).get_d() / factorial(p).get_d();
    return static_cast<double>(scale * eval_P(table, p, x));
}

std::vector<double> normalized_moments(const SpectralSums& sums, const PartitionPolynomialTable& table,
                                       int p_max) {
    if (!(sums.S(1) > 0.0)) throw ValidationError("normalized_moments: S^1 must be positive");
    std::vector<double> out;
    const double m2 = randomized_even_moment(sums, table, 1);
    for (int q = 2; q <= p_max; ++q) out.push_back(randomized_even_moment(sums, table, q) / std::pow(m2, q));
    return out;
}

std::vector<double> normalized_moments_scaled(const SpectralSums& sums,
                                              const PartitionPolynomialTable& table, int p_max) {
    if (!(sums.S(1) > 0.0)) throw ValidationError("normalized_moments: S^1 must be positive");
    const long double m = sums.m_tau;
    const long double s1 = m * sums.S(1);  // scaled S^1
    std::vector<double> out;
    for (int q = 2; q <= p_max; ++q) {
        std::vector<long double> x(q);
        x[0] = 1.0L;
        for (int j = 2; j <= q; ++j) {
            long double yj = std::pow(m, 2.0L * j - 1.0L) * sums.S(j) / std::pow(s1, static_cast<long double>(j));
            x[j - 1] = table.A(j).get_d() / std::pow(2.0L * m, static_cast<long double>(j - 1)) * yj;
        }
        out.push_back(static_cast<double>(gaussian_moment(2 * q).get_d() * eval_P(table, q, x)));
    }
    return out;
}

Rational gaussian_moment(int n) {
    if (n < 0) throw ValidationError("gaussian_moment: n must be >= 0");
    if (n % 2 == 1) return 0;
    const int p = n / 2;
    Integer den = factorial(p);
    den <<= p;
    Rational r(factorial(n), den);
    r.canonicalize();
    return r;
}

std::vector<MomentRow> simulate_moments(const MultiplicityFunction& m, double tau, int p_max,
                                        std::size_t replicas, double window_frac, std::uint64_t seed,
                                        unsigned threads) {
    if (p_max < 1) throw ValidationError("simulate_moments: p_max must be >= 1");
    const PartitionPolynomialTable table = build_table(p_max);
    const Window w = window_around(tau, window_frac);
    const double margin = window_frac * tau;
    std::vector<MomentRow> rows(replicas);
    parallel_for(replicas, threads, [&](std::size_t r) {
        RngStream rng(seed, r);
        PoissonSpectrum spec = sample_spectrum(m, w, rng);
        SpectralSums s = spectral_sums(spec, tau, p_max, margin);
        s.m_tau = m(tau);
        MomentRow row;
        row.replica = r;
        row.points = spec.points.size();
        row.S = s.values;
        row.tail_bias = s.tail_bias;
        for (int q = 1; q <= p_max; ++q) row.M.push_back(randomized_even_moment(s, table, q));
        if (s.S(1) > 0.0) row.norm = normalized_moments(s, table, p_max);
        else row.norm.assign(p_max - 1, NAN);
        rows[r] = std::move(row);
    });
    return rows;
}

}  // namespace pscat
