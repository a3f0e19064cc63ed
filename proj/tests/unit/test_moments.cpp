#include <cmath>
#include <random>

#include "doctest.h"

#include "kronmom/moments.hpp"
#include "oracles.hpp"

using namespace kronmom;
using kronmom::testing::relative_error;

namespace {

void check_close(const ExpectedFeatures& x, const ExpectedFeatures& y, double tol) {
    for (Feature f : kAllFeatures) {
        INFO(feature_name(f), ": ", x[f], " vs ", y[f]);
        CHECK(relative_error(x[f], y[f]) <= tol);
    }
}

void check_equal(const ExpectedFeatures& x, const ExpectedFeatures& y) {
    for (Feature f : kAllFeatures) CHECK(x[f] == y[f]);
}

}  // namespace

TEST_CASE("parameter validation and canonical form") {
    CHECK_THROWS_AS(KroneckerParams(1.1, 0.5, 0.5, 3), std::invalid_argument);
    CHECK_THROWS_AS(KroneckerParams(0.5, -0.1, 0.5, 3), std::invalid_argument);
    CHECK_THROWS_AS(KroneckerParams(0.5, 0.5, std::nan(""), 3), std::invalid_argument);
    CHECK_THROWS_AS(KroneckerParams(0.5, 0.5, 0.5, 61), std::invalid_argument);
    CHECK_NOTHROW(KroneckerParams(0.5, 0.5, 0.5, 60));

    const KroneckerParams p(0.2, 0.4, 0.7, 5);
    CHECK(p.a() == 0.7);
    CHECK(p.c() == 0.2);
    CHECK(p.swapped());
    CHECK_FALSE(KroneckerParams(0.7, 0.4, 0.2, 5).swapped());
    CHECK(p.num_vertices() == 32);
}

TEST_CASE("complete graph") {
    for (unsigned r = 1; r <= 6; ++r) {
        const double n = std::ldexp(1.0, static_cast<int>(r));
        const auto e = expected_features({1, 1, 1, r});
        CHECK(e.edges == doctest::Approx(n * (n - 1) / 2).epsilon(1e-12));
        CHECK(e.hairpins == doctest::Approx(n * (n - 1) * (n - 2) / 2).epsilon(1e-12));
        CHECK(e.tripins == doctest::Approx(n * (n - 1) * (n - 2) * (n - 3) / 6).epsilon(1e-12));
        CHECK(e.triangles == doctest::Approx(n * (n - 1) * (n - 2) / 6).epsilon(1e-12));
    }
    const auto e = expected_features({1, 1, 1, 2});
    CHECK(e.edges == 6);
    CHECK(e.hairpins == 12);
    CHECK(e.tripins == 4);
    CHECK(e.triangles == 4);
}

TEST_CASE("b = 0 gives an empty graph") {
    for (double a : {0.0, 0.3, 1.0})
        for (double c : {0.0, 0.6, 1.0}) {
            check_equal(expected_features({a, 0.0, c, 10}), ExpectedFeatures{});
            check_equal(brute_force_expected({a, 0.0, c, 3}), ExpectedFeatures{});
        }
}

TEST_CASE("a = c = 0 is a perfect matching") {
    CHECK(expected_features({0, 0.5, 0, 3}).edges == 0.5);
    for (unsigned r = 1; r <= 6; ++r) {
        const auto e = expected_features({0, 0.8, 0, r});
        CHECK(e.edges == doctest::Approx(std::pow(1.6, r) / 2).epsilon(1e-12));
        CHECK(e.hairpins == 0);
        CHECK(e.tripins == 0);
        CHECK(e.triangles == 0);
    }
}

TEST_CASE("closed form matches brute force") {
    check_close(expected_features({0.7, 0.4, 0.2, 4}), brute_force_expected({0.7, 0.4, 0.2, 4}), 1e-10);
    check_close(expected_features({0.99, 0.48, 0.25, 5}), brute_force_expected({0.99, 0.48, 0.25, 5}), 1e-10);
    check_close(brute_force_expected({1, 1, 1, 2}), ExpectedFeatures{6, 12, 4, 4}, 1e-14);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = u(rng), b = u(rng), c = u(rng);
        for (unsigned r = 0; r <= 6; ++r) {
            INFO("a=", a, " b=", b, " c=", c, " r=", r);
            check_close(expected_features({a, b, c, r}), brute_force_expected({a, b, c, r}), 1e-10);
        }
    }
}

TEST_CASE("small b does not lose precision") {
    for (double b : {1e-3, 1e-5}) {
        INFO("b=", b);
        check_close(expected_features({0.9, b, 0.6, 6}), brute_force_expected({0.9, b, 0.6, 6}), 1e-10);
    }
    // Far below that a value is either accurate or lost in the rounding
    // residue of the largest term, about 1e-30 here.
    const auto x = expected_features({0.9, 1e-8, 0.6, 6});
    const auto y = brute_force_expected({0.9, 1e-8, 0.6, 6});
    for (Feature f : kAllFeatures) {
        INFO(feature_name(f), ": ", x[f], " vs ", y[f]);
        CHECK((relative_error(x[f], y[f]) <= 1e-10 || std::abs(x[f] - y[f]) <= 1e-28));
    }
}

TEST_CASE("brute-force tripins agree with literal enumeration") {
    for (unsigned r = 1; r <= 4; ++r) {
        const KroneckerParams p(0.81, 0.37, 0.45, r);
        CHECK(relative_error(brute_force_expected(p).tripins, testing::literal_tripin_expectation(p)) <= 1e-12);
    }
}

TEST_CASE("brute force refuses large matrices") {
    CHECK_THROWS_AS(brute_force_expected({0.5, 0.5, 0.5, kBruteForceMaxPower + 1}), std::invalid_argument);
    CHECK_THROWS_AS(ProbabilityMatrix({0.5, 0.5, 0.5, ProbabilityMatrix::kMaxPower + 1}), std::invalid_argument);
}

TEST_CASE("swap symmetry is exact") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = u(rng), b = u(rng), c = u(rng);
        const unsigned r = 1 + trial % 30;
        check_equal(expected_features({a, b, c, r}), expected_features({c, b, a, r}));
    }
}

TEST_CASE("expected edges are monotone in every parameter") {
    const double step = 0.125;
    for (unsigned r : {3u, 9u})
        for (double a = 0; a <= 1; a += step)
            for (double b = 0; b <= 1; b += step)
                for (double c = 0; c <= 1; c += step) {
                    const double e = expected_features({a, b, c, r}).edges;
                    if (a + step <= 1) CHECK(expected_features({a + step, b, c, r}).edges >= e);
                    if (b + step <= 1) CHECK(expected_features({a, b + step, c, r}).edges >= e);
                    if (c + step <= 1) CHECK(expected_features({a, b, c + step, r}).edges >= e);
                }
}

TEST_CASE("expectations are never negative") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double b = trial % 2 ? u(rng) * 1e-4 : u(rng);
        const auto e = expected_features({u(rng), b, u(rng), static_cast<unsigned>(1 + trial % 60)});
        for (Feature f : kAllFeatures) CHECK(e[f] >= 0.0);
    }
}

TEST_CASE("full-range sums are r-th powers of their r = 1 values") {
    const double a = 0.83, b = 0.41, c = 0.29;
    const auto base = power_sum_bases(a, b, c);
    for (unsigned r = 2; r <= 5; ++r) {
        const ProbabilityMatrix P({a, b, c, r});
        const auto n = P.size();
        PowerSumBases s{};
        for (std::uint64_t i = 0; i < n; ++i) {
            const double d = P(i, i);
            s.diag1 += d;
            s.diag2 += d * d;
            s.diag3 += d * d * d;
            double row1 = 0, row2 = 0;
            for (std::uint64_t j = 0; j < n; ++j) {
                const double x = P(i, j);
                row1 += x;
                row2 += x * x;
                s.row3 += x * x * x;
                for (std::uint64_t k = 0; k < n; ++k) s.triangle += x * P(i, k) * P(j, k);
            }
            s.row1 += row1;
            s.row2 += row2;
            s.diag1_row1 += d * row1;
            s.diag1_row2 += d * row2;
            s.diag2_row1 += d * d * row1;
            s.wedge += row1 * row1;
            s.wedge_sq += row2 * row1;
            s.diag_wedge += d * row1 * row1;
            s.claw += row1 * row1 * row1;
        }
        const int ri = static_cast<int>(r);
        auto same = [&](double full, double one) { CHECK(relative_error(full, std::pow(one, ri)) <= 1e-12); };
        INFO("r=", r);
        same(s.diag1, base.diag1);
        same(s.diag2, base.diag2);
        same(s.diag3, base.diag3);
        same(s.row1, base.row1);
        same(s.row2, base.row2);
        same(s.row3, base.row3);
        same(s.diag1_row1, base.diag1_row1);
        same(s.diag1_row2, base.diag1_row2);
        same(s.diag2_row1, base.diag2_row1);
        same(s.wedge, base.wedge);
        same(s.wedge_sq, base.wedge_sq);
        same(s.triangle, base.triangle);
        same(s.diag_wedge, base.diag_wedge);
        same(s.claw, base.claw);
        CHECK(relative_error(s.diag2, std::pow(a * a + c * c, ri)) <= 1e-12);
    }
}

TEST_CASE("probability matrix entries are bitwise products") {
    const ProbabilityMatrix P({0.99, 0.48, 0.25, 3});
    CHECK(P(5, 3) == doctest::Approx(0.48 * 0.48 * 0.25).epsilon(1e-15));
    CHECK(P(0, 0) == doctest::Approx(std::pow(0.99, 3)));
    CHECK(P(0, 7) == doctest::Approx(std::pow(0.48, 3)));
    for (std::uint64_t i = 0; i < P.size(); ++i)
        for (std::uint64_t j = 0; j < P.size(); ++j) CHECK(P(i, j) == P(j, i));
}

TEST_CASE("dominance exponent") {
    const auto boundary = dominance_exponent({0.5, (std::sqrt(2.0) - 1) / 2, 0.5, 10});
    CHECK(boundary.alpha == doctest::Approx(0.5).epsilon(1e-12));

    const auto none = dominance_exponent({1, 0, 1, 4});
    CHECK(none.alpha == 0.0);
    CHECK(none.weak);

    CHECK(dominance_exponent({0.99, 0.48, 0.25, 14}).alpha == doctest::Approx(std::log2(2.2 / 1.24)));
    CHECK_FALSE(dominance_exponent({0.99, 0.48, 0.25, 14}).weak);

    const auto degenerate = dominance_exponent({0, 0.5, 0, 3});
    CHECK(std::isinf(degenerate.alpha));
    CHECK(degenerate.degenerate);
}
