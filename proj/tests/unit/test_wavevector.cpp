#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pscat/error.hpp"
#include "pscat/wavevector.hpp"

using namespace pscat;

namespace {

WaveVectorSystem make(std::vector<double> lambdas, std::vector<long> m, Variant v, std::uint64_t seed) {
    RngStream rng(seed, 0);
    return sample_system(lambdas, m, v, rng);
}

}  // namespace

TEST_CASE("variant names") {
    CHECK(parse_variant("rect") == Variant::rectangular);
    CHECK(parse_variant("square") == Variant::square_symmetric);
    CHECK(to_string(Variant::square_symmetric) == "square");
    CHECK_THROWS_AS(parse_variant("hex"), ValidationError);
}

TEST_CASE("sampled vectors: norms, negation pairs, symmetry") {
    auto rect = make({10.0, 50.0}, {2, 3}, Variant::rectangular, 7);
    CHECK(rect.effective_multiplicities() == std::vector<long>{2, 3});
    CHECK(rect.levels[0].vectors.size() == 8);
    CHECK(rect.levels[1].vectors.size() == 12);
    for (const auto& l : rect.levels) {
        for (double th : l.thetas) {
            CHECK(th > 0.0);
            CHECK(th < M_PI / 2);
        }
        for (std::size_t i = 0; i < l.vectors.size(); i += 2) {
            CHECK(l.vectors[i + 1][0] == -l.vectors[i][0]);
            CHECK(l.vectors[i + 1][1] == -l.vectors[i][1]);
        }
        for (const auto& v : l.vectors)
            CHECK(4 * M_PI * M_PI * (v[0] * v[0] + v[1] * v[1]) == doctest::Approx(l.lambda).epsilon(1e-13));
    }
    auto sq = make({10.0}, {2}, Variant::square_symmetric, 7);
    CHECK(sq.effective_multiplicities() == std::vector<long>{4});
    CHECK(sq.levels[0].vectors.size() == 16);
    for (double th : sq.levels[0].thetas) CHECK(th < M_PI / 4);
    // invariant under swapping coordinates
    for (const auto& v : sq.levels[0].vectors) {
        bool found = false;
        for (const auto& w : sq.levels[0].vectors) found |= (w[0] == v[1] && w[1] == v[0]);
        CHECK(found);
    }
    CHECK(sq.max_lambda() == 10.0);
}

TEST_CASE("sample_system rejects bad input") {
    RngStream rng(1, 0);
    CHECK_THROWS_AS(sample_system({1.0, 2.0}, {1}, Variant::rectangular, rng), ValidationError);
    CHECK_THROWS_AS(sample_system({2.0, 1.0}, {1, 1}, Variant::rectangular, rng), ValidationError);
    CHECK_THROWS_AS(sample_system({-1.0}, {1}, Variant::rectangular, rng), ValidationError);
    CHECK_THROWS_AS(sample_system({1.0}, {0}, Variant::rectangular, rng), ValidationError);
}

TEST_CASE("N_a oracle values") {
    // counts from an independent exact enumeration
    CHECK(na_formula({{1, 4}}, {1}) == 36);
    CHECK(na_formula({{1, 2}}, {3}) == 12);
    CHECK(na_formula({{1, 2}, {2, 2}}, {1, 2}) == 32);
    CHECK(na_formula({}, {1}) == 1);
    CHECK(na_formula({{1, 3}}, {2}) == 0);
    CHECK(na_formula({{1, 2}, {2, 1}}, {2, 2}) == 0);
    CHECK_THROWS_AS(na_formula({{3, 2}}, {1, 1}), ValidationError);

    auto s1 = make({5.0}, {1}, Variant::rectangular, 3);
    CHECK(na_bruteforce(s1, {{1, 4}}) == 36);
    auto s3 = make({5.0}, {3}, Variant::rectangular, 3);
    CHECK(na_bruteforce(s3, {{1, 2}}) == 12);
    auto s12 = make({5.0, 9.0}, {1, 2}, Variant::rectangular, 3);
    CHECK(na_bruteforce(s12, {{1, 2}, {2, 2}}) == 32);
    CHECK(na_bruteforce(s12, {{1, 1}, {2, 2}}) == 0);
}

TEST_CASE("N_a brute force equals the formula on random systems") {
    RngStream rng(2024, 1);
    for (Variant v : {Variant::rectangular, Variant::square_symmetric}) {
        for (int trial = 0; trial < 60; ++trial) {
            int K = 1 + static_cast<int>(rng.uniform() * 3);
            std::vector<double> lam;
            std::vector<long> m;
            double l = 0.0;
            for (int k = 0; k < K; ++k) {
                l += 1.0 + 100.0 * rng.uniform();
                lam.push_back(l);
                m.push_back(1 + static_cast<long>(rng.uniform() * 2));
            }
            auto sys = sample_system(lam, m, v, rng);
            FiniteSupportSequence a;
            int total = 0;
            for (int k = 1; k <= K && total < 6; ++k) {
                int ak = static_cast<int>(rng.uniform() * 4);
                ak = std::min(ak, 6 - total);
                a.set(k, ak);
                total += ak;
            }
            auto eff = sys.effective_multiplicities();
            CHECK(Integer(na_bruteforce(sys, a)) == na_formula(a, eff));
        }
    }
}

TEST_CASE("N_a brute force budget") {
    auto sys = make({5.0}, {4}, Variant::rectangular, 1);
    CHECK_THROWS_AS(na_bruteforce(sys, {{1, 8}}, -1.0, 1000), BudgetError);
    CHECK_THROWS_AS(na_bruteforce(sys, {{2, 1}}), ValidationError);
}

TEST_CASE("step-two moment: closed form against the defining series") {
    auto table = build_table(4);
    for (Variant v : {Variant::rectangular, Variant::square_symmetric}) {
        auto sys = make({3.0, 11.0, 19.5, 40.0}, {1, 2, 1, 3}, v, 99);
        for (int order = 1; order <= 8; ++order) {
            double a = randomized_moment_step2(sys, table, 7.25, order);
            double b = moment_series_direct(sys, 7.25, order);
            if (order % 2) {
                CHECK(a == 0.0);
                CHECK(b == 0.0);
            } else {
                CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
            }
        }
        // second moment is sum r_k / (lambda_k - tau)^2
        double m2 = 0.0;
        for (const auto& l : sys.levels) m2 += l.vectors.size() / std::pow(l.lambda - 7.25, 2);
        CHECK(randomized_moment_step2(sys, table, 7.25, 2) == doctest::Approx(m2).epsilon(1e-14));
    }
    auto sys = make({3.0}, {1}, Variant::rectangular, 1);
    CHECK_THROWS_AS(randomized_moment_step2(sys, table, 3.0, 2), ValidationError);
    CHECK_THROWS_AS(randomized_moment_step2(sys, table, 1.0, 10), ValidationError);
    CHECK_THROWS_AS(randomized_moment_step2(sys, table, 1.0, 0), ValidationError);
}

TEST_CASE("fourth moment of a single level with m = 1") {
    // 36 zero-sum 4-tuples among 4 vectors of equal length
    auto table = build_table(2);
    auto sys = make({2.0}, {1}, Variant::rectangular, 5);
    CHECK(randomized_moment_step2(sys, table, 1.0, 4) == doctest::Approx(36.0).epsilon(1e-14));
}
