#include "pscat/wavevector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pscat/error.hpp"

namespace pscat {

Variant parse_variant(const std::string& s) {
    if (s == "rect" || s == "rectangular") return Variant::rectangular;
    if (s == "square" || s == "square_symmetric") return Variant::square_symmetric;
    throw ValidationError("unknown variant: " + s);
}

std::string to_string(Variant v) { return v == Variant::rectangular ? "rect" : "square"; }

std::vector<long> WaveVectorSystem::effective_multiplicities() const {
    std::vector<long> m;
    for (const auto& l : levels)
        m.push_back(static_cast<long>(l.thetas.size()) * (variant == Variant::rectangular ? 1 : 2));
    return m;
}

double WaveVectorSystem::max_lambda() const {
    double m = 0.0;
    for (const auto& l : levels) m = std::max(m, l.lambda);
    return m;
}

WaveVectorSystem sample_system(const std::vector<double>& lambdas,
                               const std::vector<long>& multiplicities, Variant variant,
                               RngStream& rng) {
    if (lambdas.size() != multiplicities.size())
        throw ValidationError("sample_system: lambdas and multiplicities differ in length");
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (!(lambdas[k] > 0.0)) throw ValidationError("sample_system: lambdas must be positive");
        if (k > 0 && !(lambdas[k] > lambdas[k - 1]))
            throw ValidationError("sample_system: lambdas must be strictly increasing");
        if (multiplicities[k] < 1) throw ValidationError("sample_system: multiplicity < 1");
    }
    const double width = variant == Variant::rectangular ? M_PI / 2.0 : M_PI / 4.0;
    WaveVectorSystem sys;
    sys.variant = variant;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        WaveLevel lvl;
        lvl.lambda = lambdas[k];
        const double rho = std::sqrt(lambdas[k]) / (2.0 * M_PI);
        for (long j = 0; j < multiplicities[k]; ++j) {
            double th = width * rng.uniform_open();
            lvl.thetas.push_back(th);
            const double c = rho * std::cos(th), s = rho * std::sin(th);
            std::vector<std::array<double, 2>> base{{c, s}, {-c, s}};
            if (variant == Variant::square_symmetric) {
                base.push_back({s, c});
                base.push_back({-s, c});
            }
            for (const auto& v : base) {
                lvl.vectors.push_back(v);
                lvl.vectors.push_back({-v[0], -v[1]});
            }
        }
        sys.levels.push_back(std::move(lvl));
    }
    return sys;
}

namespace {

using Vec2 = std::array<double, 2>;

std::vector<Vec2> all_sums(const std::vector<const std::vector<Vec2>*>& slots) {
    std::vector<Vec2> sums{{0.0, 0.0}};
    for (const auto* s : slots) {
        std::vector<Vec2> next;
        next.reserve(sums.size() * s->size());
        for (const auto& base : sums)
            for (const auto& v : *s) next.push_back({base[0] + v[0], base[1] + v[1]});
        sums = std::move(next);
    }
    return sums;
}

}  // namespace

std::uint64_t na_bruteforce(const WaveVectorSystem& system, const FiniteSupportSequence& a,
                            double zero_tol, std::uint64_t budget) {
    std::vector<const std::vector<Vec2>*> slots;
    double total = 1.0;
    for (const auto& [k, ak] : a.entries()) {
        if (k > static_cast<int>(system.levels.size()))
            throw ValidationError("na_bruteforce: sequence refers to a missing level");
        for (int l = 0; l < ak; ++l) {
            slots.push_back(&system.levels[k - 1].vectors);
            total *= static_cast<double>(system.levels[k - 1].vectors.size());
        }
    }
    if (total > static_cast<double>(budget)) throw BudgetError("na_bruteforce: enumeration budget exceeded");
    if (slots.empty()) return 1;

    const double scale = std::sqrt(system.max_lambda());
    if (zero_tol <= 0.0) zero_tol = 1e-9 * scale;
    const double tol_lo = 1e-12 * scale, tol_hi = std::max(1e-6 * scale, zero_tol);

    // Split so both halves have roughly sqrt(total) tuples.
    std::size_t cut = 0;
    double left_size = 1.0;
    while (cut < slots.size() && left_size * slots[cut]->size() <= std::sqrt(total) * 1.0000001) {
        left_size *= static_cast<double>(slots[cut]->size());
        ++cut;
    }
    if (cut == 0) cut = 1;
    std::vector<const std::vector<Vec2>*> ls(slots.begin(), slots.begin() + cut);
    std::vector<const std::vector<Vec2>*> rs(slots.begin() + cut, slots.end());
    std::vector<Vec2> L = all_sums(ls), R = all_sums(rs);
    std::sort(R.begin(), R.end());

    std::uint64_t n_lo = 0, n_mid = 0, n_hi = 0;
    for (const auto& l : L) {
        auto first = std::lower_bound(R.begin(), R.end(), Vec2{-l[0] - tol_hi, -INFINITY});
        for (auto it = first; it != R.end() && (*it)[0] <= -l[0] + tol_hi; ++it) {
            double d = std::hypot(l[0] + (*it)[0], l[1] + (*it)[1]);
            if (d <= tol_hi) ++n_hi;
            if (d <= zero_tol) ++n_mid;
            if (d <= tol_lo) ++n_lo;
        }
    }
    if (n_lo != n_mid || n_mid != n_hi)
        throw AccuracyError("na_bruteforce: count depends on the zero tolerance",
                            static_cast<double>(n_hi - n_lo));
    return n_mid;
}

namespace {

// C(2b, b) / (b!)^2 = sum_c (1 / (c! (b-c)!))^2
Rational inner_weight(int b) {
    Integer fb = factorial(b);
    Integer f2b = factorial(2 * b);
    Rational w(f2b, fb * fb * fb * fb);
    w.canonicalize();
    return w;
}

}  // namespace

Integer na_formula(const FiniteSupportSequence& a, const std::vector<long>& multiplicities) {
    Rational total = 1;
    for (const auto& [k, ak] : a.entries()) {
        if (k > static_cast<int>(multiplicities.size()))
            throw ValidationError("na_formula: no multiplicity for level " + std::to_string(k));
        if (ak % 2 == 1) return 0;
        const int half = ak / 2;
        const long m = multiplicities[k - 1];
        // coefficient of z^half in (sum_b w(b) z^b)^m
        std::vector<Rational> w(half + 1), poly(half + 1, 0);
        for (int b = 0; b <= half; ++b) w[b] = inner_weight(b);
        poly[0] = 1;
        for (long j = 0; j < m; ++j) {
            std::vector<Rational> next(half + 1, 0);
            for (int i = 0; i <= half; ++i) {
                if (poly[i] == 0) continue;
                for (int b = 0; i + b <= half; ++b) next[i + b] += poly[i] * w[b];
            }
            poly = std::move(next);
        }
        total *= poly[half] * Rational(factorial(ak));
    }
    total.canonicalize();
    if (total.get_den() != 1) throw std::logic_error("na_formula: non-integer result " + total.get_str());
    return total.get_num();
}

namespace {

void check_tau(const WaveVectorSystem& system, double tau) {
    for (const auto& l : system.levels)
        if (std::abs(l.lambda - tau) < 1e-9) throw ValidationError("tau collides with a level");
}

}  // namespace

double randomized_moment_step2(const WaveVectorSystem& system, const PartitionPolynomialTable& table,
                               double tau, int order) {
    if (order < 1) throw ValidationError("moment order must be >= 1");
    check_tau(system, tau);
    if (order % 2 == 1) return 0.0;
    const int p = order / 2;
    if (p > table.p_max()) throw ValidationError("moment order exceeds table");
    const auto m = system.effective_multiplicities();
    std::vector<double> x(p);
    for (int q = 1; q <= p; ++q) {
        long double s = 0.0L;
        for (std::size_t k = 0; k < system.levels.size(); ++k) {
            long double d = system.levels[k].lambda - tau;
            s += m[k] / std::pow(d * d, static_cast<long double>(q));
        }
        x[q - 1] = 2.0 * table.A(q).get_d() * static_cast<double>(s);
    }
    double scale = factorial(2 * p).get_d() / factorial(p).get_d();
    return scale * eval_P(table, p, x);
}

double moment_series_direct(const WaveVectorSystem& system, double tau, int order) {
    if (order < 1) throw ValidationError("moment order must be >= 1");
    check_tau(system, tau);
    const auto m = system.effective_multiplicities();
    const int K = static_cast<int>(system.levels.size());
    std::vector<int> a(K, 0);
    long double total = 0.0L;
    const long double ofact = factorial(order).get_d();
    std::function<void(int, int)> rec = [&](int k, int rem) {
        if (k == K - 1) {
            a[k] = rem;
            FiniteSupportSequence seq;
            for (int i = 0; i < K; ++i) seq.set(i + 1, a[i]);
            Integer n = na_formula(seq, m);
            if (n != 0) {
                long double term = ofact * n.get_d() / seq.factorial().get_d();
                for (int i = 0; i < K; ++i)
                    for (int e = 0; e < a[i]; ++e) term /= (system.levels[i].lambda - tau);
                total += term;
            }
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            a[k] = v;
            rec(k + 1, rem - v);
        }
    };
    if (K > 0) rec(0, order);
    return static_cast<double>(total);
}

}  // namespace pscat
