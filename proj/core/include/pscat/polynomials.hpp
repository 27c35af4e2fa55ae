#pragma once

#include <cstdint>
#include <vector>

#include "pscat/error.hpp"
#include "pscat/partitions.hpp"
#include "pscat/rational.hpp"

namespace pscat {

// Exact coefficients of the partition polynomials P_p, Q_p and of A_p.
// terms(p)[i] pairs with P(p)[i] and Q(p)[i].
class PartitionPolynomialTable {
public:
    int p_max() const { return p_max_; }
    const std::vector<Partition>& terms(int p) const { return partitions_.at(check(p)); }
    const std::vector<Rational>& P(int p) const { return P_.at(check(p)); }
    const std::vector<Rational>& Q(int p) const { return Q_.at(check(p)); }
    const Rational& A(int p) const { return A_.at(check(p)); }

    friend PartitionPolynomialTable build_table(int p_max);

private:
    int check(int p) const {
        if (p < 1 || p > p_max_) throw ValidationError("polynomial index outside table");
        return p;
    }

    int p_max_ = 0;
    std::vector<std::vector<Partition>> partitions_;  // index 0 unused
    std::vector<std::vector<Rational>> P_, Q_;
    std::vector<Rational> A_;
};

PartitionPolynomialTable build_table(int p_max);

// Taylor coefficients of ln I_0(2X) in X^2: entry j is the coefficient of
// X^{2j}, j = 0..p_max.  Computed by composing ln(1+u) with the Bessel series.
std::vector<Rational> bessel_log_series(int p_max);

namespace detail {
inline double as(const Rational& r, double) { return r.get_d(); }
inline long double as(const Rational& r, long double) { return static_cast<long double>(r.get_d()); }
inline Rational as(const Rational& r, const Rational&) { return r; }
}  // namespace detail

template <class T>
T eval_partition_poly(const std::vector<Partition>& terms, const std::vector<Rational>& coeffs,
                      const std::vector<T>& x) {
    T total = T(0);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        T mono = detail::as(coeffs[i], T{});
        const auto& a = terms[i].parts;
        for (std::size_t q = 0; q < a.size(); ++q)
            for (int e = 0; e < a[q]; ++e) mono *= x[q];
        total += mono;
    }
    return total;
}

template <class T>
T eval_P(const PartitionPolynomialTable& table, int p, const std::vector<T>& x) {
    if (static_cast<int>(x.size()) != p) throw ValidationError("eval_P: dimension mismatch");
    return eval_partition_poly(table.terms(p), table.P(p), x);
}

template <class T>
T eval_Q(const PartitionPolynomialTable& table, int p, const std::vector<T>& x) {
    if (static_cast<int>(x.size()) != p) throw ValidationError("eval_Q: dimension mismatch");
    return eval_partition_poly(table.terms(p), table.Q(p), x);
}

// Phi_p(x) = (P_1(x_1), ..., P_p(x_1..x_p)); Psi_p likewise with Q.
std::vector<Rational> Phi(const PartitionPolynomialTable& table, int p, const std::vector<Rational>& x);
std::vector<Rational> Psi(const PartitionPolynomialTable& table, int p, const std::vector<Rational>& x);

// Checks Q_p(P_1(x),...,P_p(x)) = x_p and P_p(Q_1(x),...,Q_p(x)) = x_p at
// n_points random rational points, exactly.
bool compose_check(const PartitionPolynomialTable& table, int p, int n_points = 0,
                   std::uint64_t seed = 1);

// |det d_x Phi_p| computed by exact elimination on the full Jacobian matrix.
Rational jacobian_Phi(const PartitionPolynomialTable& table, int p, const std::vector<Rational>& x);
// |det d_y Phi'_p| with Phi'_p(y_2..y_p) = (P_2(1,y_2), ..., P_p(1,y_2..y_p)).
Rational jacobian_Phi_prime(const PartitionPolynomialTable& table, int p,
                            const std::vector<Rational>& y);

}  // namespace pscat
