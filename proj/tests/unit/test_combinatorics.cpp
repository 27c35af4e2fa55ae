#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pscat/error.hpp"
#include "pscat/partitions.hpp"
#include "pscat/polynomials.hpp"
#include "pscat/rng.hpp"

using namespace pscat;

namespace {

// Taylor coefficients of ln I_0(2x) from sympy, see tests/oracles/oracle.py.
const char* kA[] = {"1",          "1/4",          "1/9",          "11/192",
                    "19/600",     "473/25920",    "229/21168",    "101369/15482880",
                    "946523/235146240", "65467219/26127360000", "249045899/158070528000",
                    "9921896851/9932577177600"};

Rational rnd(RngStream& s) {
    Rational r(static_cast<long>(s.next_u64() % 61) - 30, static_cast<long>(s.next_u64() % 9) + 1);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("partition enumeration") {
    CHECK(enumerate_partitions(0).size() == 1);
    CHECK(enumerate_partitions(0)[0].length == 0);
    auto one = enumerate_partitions(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].parts == std::vector<int>{1});
    CHECK(enumerate_partitions(4).size() == 5);
    // p(n) for n = 1..12
    const int counts[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (int p = 1; p <= 12; ++p) CHECK(enumerate_partitions(p).size() == static_cast<std::size_t>(counts[p - 1]));
    CHECK_THROWS_AS(enumerate_partitions(-1), ValidationError);
}

TEST_CASE("partitions are valid and lexicographically ordered") {
    for (int p = 1; p <= 10; ++p) {
        auto parts = enumerate_partitions(p);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            int w = 0, len = 0;
            for (int q = 1; q <= p; ++q) {
                w += q * parts[i].alpha(q);
                len += parts[i].alpha(q);
            }
            CHECK(w == p);
            CHECK(parts[i].weight == p);
            CHECK(parts[i].length == len);
            if (i > 0) CHECK(parts[i - 1].parts < parts[i].parts);
        }
    }
}

TEST_CASE("finite support sequences") {
    FiniteSupportSequence a{{1, 2}, {4, 3}};
    CHECK(a.norm() == 5);
    CHECK(a.factorial() == 12);
    a.set(4, 0);
    CHECK(a.entries().size() == 1);
    CHECK_THROWS_AS(a.set(0, 1), ValidationError);
}

TEST_CASE("P_2 and Q_2 coefficients") {
    auto t = build_table(4);
    // partitions of 2 in order: (0,1) then (2,0)
    REQUIRE(t.terms(2).size() == 2);
    CHECK(t.terms(2)[0].parts == std::vector<int>{0, 1});
    CHECK(t.P(2)[0] == -2);
    CHECK(t.P(2)[1] == 1);
    CHECK(t.Q(2)[0] == Rational(-1, 2));
    CHECK(t.Q(2)[1] == Rational(1, 2));
    CHECK_THROWS_AS(build_table(0), ValidationError);
}

TEST_CASE("leading coefficients") {
    auto t = build_table(8);
    for (int p = 1; p <= 8; ++p) {
        const auto& parts = t.terms(p);
        // alpha = (p, 0, ...) is last in lexicographic order
        CHECK(parts.back().alpha(1) == p);
        CHECK(t.P(p).back() == 1);
        CHECK(t.Q(p).back() == Rational(1, p));
    }
}

TEST_CASE("A_p against the Bessel series oracle") {
    auto t = build_table(12);
    auto series = bessel_log_series(12);
    CHECK(series[0] == 0);
    CHECK(series[1] == 1);
    CHECK(series[2] == Rational(-1, 4));
    for (int p = 1; p <= 12; ++p) {
        CHECK(t.A(p) == parse_rational(kA[p - 1]));
        Rational sign = p % 2 == 1 ? 1 : -1;
        CHECK(t.A(p) == sign * series[p]);
        CHECK(t.A(p) > 0);
    }
    CHECK(to_fraction_string(t.A(2)) == "1/4");
}

TEST_CASE("polynomial evaluation") {
    auto t = build_table(6);
    CHECK(eval_P<double>(t, 2, {3.0, 0.0}) == 9.0);
    CHECK(eval_P<Rational>(t, 2, {Rational(1, 2), Rational(1, 3)}) == Rational(1, 4) - Rational(2, 3));
    CHECK(eval_Q<double>(t, 1, {7.5}) == 7.5);
    for (int p = 1; p <= 6; ++p) {
        std::vector<Rational> e(p, 0);
        e[0] = 1;
        CHECK(eval_P(t, p, e) == 1);
    }
    CHECK_THROWS_AS(eval_P<double>(t, 3, {1.0, 2.0}), ValidationError);
}

TEST_CASE("weighted homogeneity") {
    auto t = build_table(6);
    RngStream s(3, 0);
    for (int p = 1; p <= 6; ++p)
        for (int trial = 0; trial < 10; ++trial) {
            Rational tt = rnd(s);
            std::vector<Rational> x(p), xs(p);
            Rational pw = 1;
            for (int q = 0; q < p; ++q) {
                x[q] = rnd(s);
                pw *= tt;
                xs[q] = pw * x[q];
            }
            CHECK(eval_P(t, p, xs) == pw * eval_P(t, p, x));
            CHECK(eval_Q(t, p, xs) == pw * eval_Q(t, p, x));
        }
}

TEST_CASE("composition identities") {
    auto t = build_table(6);
    CHECK(compose_check(t, 1));
    CHECK(compose_check(t, 2));
    for (int p = 1; p <= 6; ++p) CHECK(compose_check(t, p, 200, 99));
    // Q_2(x1, x1^2 - 2 x2) = x2 by hand
    std::vector<Rational> x{Rational(3, 7), Rational(-5, 2)};
    CHECK(eval_Q(t, 2, Phi(t, 2, x)) == x[1]);
    CHECK(Psi(t, 4, Phi(t, 4, {1, 2, 3, 4})) == std::vector<Rational>{1, 2, 3, 4});
}

TEST_CASE("Jacobians are constant") {
    auto t = build_table(6);
    CHECK(jacobian_Phi(t, 1, {Rational(5)}) == 1);
    CHECK(jacobian_Phi(t, 3, {0, 0, 0}) == 12);
    CHECK(jacobian_Phi(t, 3, {1, 5, -2}) == 12);
    RngStream s(4, 0);
    for (int p = 2; p <= 6; ++p) {
        Rational prod = 1, prod2 = 1;
        for (int q = 1; q <= p; ++q) {
            prod *= Rational(factorial(q));
            if (q >= 2) prod2 *= Rational(factorial(q));
        }
        for (int i = 0; i < 10; ++i) {
            std::vector<Rational> x(p), y(p - 1);
            for (auto& v : x) v = rnd(s);
            for (auto& v : y) v = rnd(s);
            CHECK(jacobian_Phi(t, p, x) == prod);
            CHECK(jacobian_Phi_prime(t, p, y) == prod2);
        }
    }
}
