#include "pscat/polynomials.hpp"

#include <iostream>

#include "pscat/rng.hpp"

namespace pscat {

PartitionPolynomialTable build_table(int p_max) {
    if (p_max < 1) throw ValidationError("build_table: p_max must be >= 1");
    if (p_max > 12)
        std::cerr << "pscat: build_table(" << p_max << ") coefficients grow factorially\n";

    PartitionPolynomialTable t;
    t.p_max_ = p_max;
    t.partitions_.resize(p_max + 1);
    t.P_.resize(p_max + 1);
    t.Q_.resize(p_max + 1);
    t.A_.resize(p_max + 1);

    std::vector<Integer> fact(p_max + 1);
    for (int q = 0; q <= p_max; ++q) fact[q] = factorial(q);

    for (int p = 1; p <= p_max; ++p) {
        t.partitions_[p] = enumerate_partitions(p);
        Rational A = 0;
        for (const auto& a : t.partitions_[p]) {
            const int sign = ((p - a.length) % 2 == 0) ? 1 : -1;
            Integer afact = a.factorial();

            Rational cp(fact[p], afact);
            cp *= sign;
            cp.canonicalize();

            Integer denom = afact * a.length;
            for (int q = 1; q <= p; ++q)
                for (int e = 0; e < a.alpha(q); ++e) denom *= fact[q];
            Rational cq(factorial(a.length), denom);
            cq *= sign;
            cq.canonicalize();

            // A_p = Q_p(1, 1/2!, ..., 1/p!)
            Rational mono = cq;
            for (int q = 1; q <= p; ++q)
                for (int e = 0; e < a.alpha(q); ++e) mono /= fact[q];
            A += mono;

            t.P_[p].push_back(cp);
            t.Q_[p].push_back(cq);
        }
        t.A_[p] = A;
    }
    return t;
}

std::vector<Rational> bessel_log_series(int p_max) {
    if (p_max < 1) throw ValidationError("bessel_log_series: p_max must be >= 1");
    const std::size_t n = static_cast<std::size_t>(p_max) + 1;
    // Series in y = X^2.  u = sum_{j>=1} y^j / (j!)^2.
    std::vector<Rational> u(n, 0);
    for (int j = 1; j <= p_max; ++j) {
        Integer f = factorial(j);
        u[j] = Rational(1, f * f);
    }
    auto mul = [n](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> c(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
        }
        return c;
    };
    std::vector<Rational> out(n, 0), power = u;
    // u has no constant term, so u^k only contributes from degree k on.
    for (int k = 1; k <= p_max; ++k) {
        Rational w(k % 2 == 1 ? 1 : -1, k);
        for (std::size_t j = 0; j < n; ++j) out[j] += w * power[j];
        power = mul(power, u);
    }
    return out;
}

namespace {

std::vector<Rational> apply_all(const PartitionPolynomialTable& table, int p,
                                const std::vector<Rational>& x, bool useP) {
    if (static_cast<int>(x.size()) != p) throw ValidationError("dimension mismatch");
    std::vector<Rational> y(p);
    for (int q = 1; q <= p; ++q) {
        std::vector<Rational> head(x.begin(), x.begin() + q);
        y[q - 1] = useP ? eval_P(table, q, head) : eval_Q(table, q, head);
    }
    return y;
}

Rational random_rational(RngStream& rng) {
    long num = static_cast<long>(rng.next_u64() % 101) - 50;
    long den = static_cast<long>(rng.next_u64() % 20) + 1;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// d/dx_j of the polynomial given by (terms, coeffs) at x, exactly.
Rational partial(const std::vector<Partition>& terms, const std::vector<Rational>& coeffs,
                 const std::vector<Rational>& x, std::size_t j) {
    Rational total = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& a = terms[i].parts;
        if (j >= a.size() || a[j] == 0) continue;
        Rational mono = coeffs[i] * a[j];
        for (std::size_t q = 0; q < a.size(); ++q) {
            int e = a[q] - (q == j ? 1 : 0);
            for (int k = 0; k < e; ++k) mono *= x[q];
        }
        total += mono;
    }
    return total;
}

Rational abs_det(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) std::swap(m[piv], m[c]);
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return abs(det);
}

}  // namespace

std::vector<Rational> Phi(const PartitionPolynomialTable& table, int p, const std::vector<Rational>& x) {
    return apply_all(table, p, x, true);
}

std::vector<Rational> Psi(const PartitionPolynomialTable& table, int p, const std::vector<Rational>& x) {
    return apply_all(table, p, x, false);
}

bool compose_check(const PartitionPolynomialTable& table, int p, int n_points, std::uint64_t seed) {
    if (p < 1 || p > table.p_max()) throw ValidationError("compose_check: p outside table");
    // The composed identities have weighted degree <= p^2 in each variable;
    // 20p points is the documented floor, raised to p^2 + 1 when larger.
    if (n_points <= 0) n_points = std::max(20 * p, p * p + 1);
    RngStream rng(seed, static_cast<std::uint64_t>(p));
    for (int i = 0; i < n_points; ++i) {
        std::vector<Rational> x(p);
        for (auto& v : x) v = random_rational(rng);
        if (eval_Q(table, p, Phi(table, p, x)) != x[p - 1]) return false;
        if (eval_P(table, p, Psi(table, p, x)) != x[p - 1]) return false;
    }
    return true;
}

Rational jacobian_Phi(const PartitionPolynomialTable& table, int p, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != p) throw ValidationError("jacobian_Phi: dimension mismatch");
    std::vector<std::vector<Rational>> J(p, std::vector<Rational>(p, 0));
    for (int q = 1; q <= p; ++q) {
        std::vector<Rational> head(x.begin(), x.begin() + q);
        for (int j = 0; j < q; ++j) J[q - 1][j] = partial(table.terms(q), table.P(q), head, j);
    }
    return abs_det(std::move(J));
}

Rational jacobian_Phi_prime(const PartitionPolynomialTable& table, int p,
                            const std::vector<Rational>& y) {
    if (p < 2 || static_cast<int>(y.size()) != p - 1)
        throw ValidationError("jacobian_Phi_prime: expects p >= 2 and p-1 coordinates");
    std::vector<Rational> x(p);
    x[0] = 1;
    for (int i = 1; i < p; ++i) x[i] = y[i - 1];
    std::vector<std::vector<Rational>> J(p - 1, std::vector<Rational>(p - 1, 0));
    for (int q = 2; q <= p; ++q) {
        std::vector<Rational> head(x.begin(), x.begin() + q);
        for (int j = 1; j < q; ++j) J[q - 2][j - 1] = partial(table.terms(q), table.P(q), head, j);
    }
    return abs_det(std::move(J));
}

}  // namespace pscat
