#include "pscat/torus.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pscat/error.hpp"

namespace pscat {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kCollision = 1e-9;

void check_tau(const TorusLattice& lat, double tau) {
    for (std::size_t k = 1; k < lat.levels.size(); ++k)
        if (std::abs(lat.levels[k].lambda - tau) < kCollision)
            throw ValidationError("tau collides with a lattice eigenvalue");
}

}  // namespace

std::size_t TorusLattice::point_count() const {
    std::size_t n = 0;
    for (const auto& l : levels) n += l.vectors.size();
    return n;
}

long TorusLattice::max_abs_a() const {
    long m = 0;
    for (const auto& l : levels)
        for (const auto& v : l.vectors) m = std::max(m, std::labs(v.a));
    return m;
}

long TorusLattice::max_abs_b() const {
    long m = 0;
    for (const auto& l : levels)
        for (const auto& v : l.vectors) m = std::max(m, std::labs(v.b));
    return m;
}

TorusLattice build_lattice(const Rational& alpha_sq, const Rational& radius_sq_max) {
    if (alpha_sq <= 0) throw ValidationError("alpha_sq must be positive");
    TorusLattice lat;
    lat.alpha_sq = alpha_sq;
    lat.radius_sq_max = radius_sq_max;

    const Integer P = alpha_sq.get_num(), Q = alpha_sq.get_den();
    const Integer PQ = P * Q;
    // key = a^2 Q^2 + b^2 P^2 = PQ |xi|^2, compared against R * PQ exactly.
    const Rational bound = radius_sq_max * Rational(PQ);

    std::map<Integer, std::vector<LatticeVector>> by_key;
    by_key[0].push_back({0, 0});
    if (radius_sq_max > 0) {
        const Integer Q2 = Q * Q, P2 = P * P;
        long amax = 0, bmax = 0;
        while (Rational(Q2 * (amax + 1) * (amax + 1)) <= bound) ++amax;
        while (Rational(P2 * (bmax + 1) * (bmax + 1)) <= bound) ++bmax;
        for (long a = -amax; a <= amax; ++a)
            for (long b = -bmax; b <= bmax; ++b) {
                if (a == 0 && b == 0) continue;
                Integer key = Q2 * a * a + P2 * b * b;
                if (Rational(key) <= bound) by_key[key].push_back({a, b});
            }
    }
    const double scale = 4.0 * M_PI * M_PI / PQ.get_d();
    for (auto& [key, vecs] : by_key) {
        LatticeLevel level;
        level.key = key;
        level.lambda = scale * key.get_d();
        level.vectors = std::move(vecs);
        lat.levels.push_back(std::move(level));
    }
    return lat;
}

std::complex<double> eval_f(const TorusLattice& lat, double tau, double s1, double s2) {
    check_tau(lat, tau);
    std::complex<double> f = 0.0;
    for (std::size_t k = 1; k < lat.levels.size(); ++k) {
        std::complex<double> phi = 0.0;
        for (const auto& v : lat.levels[k].vectors)
            phi += std::polar(1.0, kTwoPi * (static_cast<double>(v.a) * s1 + static_cast<double>(v.b) * s2));
        f += phi / (lat.levels[k].lambda - tau);
    }
    return f;
}

double deterministic_moment(const TorusLattice& lat, double tau, int p, std::uint64_t budget) {
    if (p < 1) throw ValidationError("deterministic_moment: p must be >= 1");
    check_tau(lat, tau);

    struct Term {
        long a, b;
        long double w;
    };
    std::vector<Term> pts;
    for (std::size_t k = 1; k < lat.levels.size(); ++k)
        for (const auto& v : lat.levels[k].vectors)
            pts.push_back({v.a, v.b, 1.0L / (lat.levels[k].lambda - tau)});
    if (pts.empty()) return 0.0;

    const long amax = lat.max_abs_a(), bmax = lat.max_abs_b();
    const int h1 = (p + 1) / 2, h2 = p / 2;

    // Dense table of partial sums over a box; partial sums of h vectors lie
    // in [-h amax, h amax] x [-h bmax, h bmax].
    struct Table {
        long ra = 0, rb = 0;
        std::vector<long double> w;
        long double& at(long a, long b) { return w[(a + ra) * (2 * rb + 1) + (b + rb)]; }
    };
    auto build = [&](int h) {
        Table t;
        t.w.assign(1, 1.0L);  // h = 0: the empty tuple sums to zero
        for (int step = 1; step <= h; ++step) {
            Table n;
            n.ra = step * amax;
            n.rb = step * bmax;
            const std::uint64_t cells = static_cast<std::uint64_t>(2 * n.ra + 1) * (2 * n.rb + 1);
            if (cells * pts.size() > budget)
                throw BudgetError("deterministic_moment: tuple enumeration budget exceeded");
            n.w.assign(cells, 0.0L);
            for (long a = -t.ra; a <= t.ra; ++a)
                for (long b = -t.rb; b <= t.rb; ++b) {
                    long double w = t.at(a, b);
                    if (w == 0.0L) continue;
                    for (const auto& q : pts) n.at(a + q.a, b + q.b) += w * q.w;
                }
            t = std::move(n);
        }
        return t;
    };
    Table left = build(h1);
    Table right = build(h2);
    long double total = 0.0L;
    for (long a = -right.ra; a <= right.ra; ++a)
        for (long b = -right.rb; b <= right.rb; ++b) {
            long double w = right.at(a, b);
            if (w == 0.0L || std::labs(a) > left.ra || std::labs(b) > left.rb) continue;
            total += w * left.at(-a, -b);
        }
    return static_cast<double>(total);
}

double grid_moment(const TorusLattice& lat, double tau, int p, int grid_n) {
    if (p < 1) throw ValidationError("grid_moment: p must be >= 1");
    check_tau(lat, tau);
    const long fmax = std::max(lat.max_abs_a(), lat.max_abs_b());
    const long need = static_cast<long>(p) * fmax + 1;
    if (grid_n == 0) grid_n = static_cast<int>(need);
    if (grid_n < need) throw ValidationError("grid_moment: grid too coarse for exact quadrature");
    if (fmax == 0) return 0.0;

    const long N = grid_n;
    std::vector<double> cosines(N);
    for (long j = 0; j < N; ++j) cosines[j] = std::cos(kTwoPi * static_cast<double>(j) / N);

    struct Term {
        long a, b;
        double w;
    };
    std::vector<Term> half;  // one of each +-xi pair, weight doubled
    for (std::size_t k = 1; k < lat.levels.size(); ++k) {
        double amp = 1.0 / (lat.levels[k].lambda - tau);
        for (const auto& v : lat.levels[k].vectors)
            if (v.a > 0 || (v.a == 0 && v.b > 0)) half.push_back({v.a, v.b, 2.0 * amp});
    }
    long double acc = 0.0L;
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j) {
            long double f = 0.0L;
            for (const auto& t : half) {
                long idx = ((t.a * i + t.b * j) % N + N) % N;
                f += t.w * cosines[idx];
            }
            long double fp = 1.0L;
            for (int e = 0; e < p; ++e) fp *= f;
            acc += fp;
        }
    return static_cast<double>(acc / (static_cast<long double>(N) * N));
}

double variance_formula(const TorusLattice& lat, double tau) {
    check_tau(lat, tau);
    long double s = 0.0L;
    for (std::size_t k = 1; k < lat.levels.size(); ++k) {
        long double d = lat.levels[k].lambda - tau;
        s += static_cast<long double>(lat.levels[k].multiplicity()) / (d * d);
    }
    return static_cast<double>(s);
}

}  // namespace pscat
