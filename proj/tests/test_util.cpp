#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "katolab/minimize.hpp"
#include "katolab/numformat.hpp"
#include "katolab/quadrature.hpp"
#include "katolab/rng.hpp"

TEST_CASE("rng: identical seeds give identical sequences") {
    katolab::Rng a(12345), b(12345);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("rng: streams depend only on (seed, index), not on parent state") {
    katolab::Rng parent(7);
    for (int i = 0; i < 100; ++i) parent.next_u64();
    katolab::Rng s1 = katolab::Rng::stream(7, 3);
    katolab::Rng s2 = katolab::Rng::stream(7, 3);
    for (int i = 0; i < 100; ++i) CHECK(s1.next_u64() == s2.next_u64());
}

TEST_CASE("rng: distinct streams differ") {
    katolab::Rng s0 = katolab::Rng::stream(7, 0);
    katolab::Rng s1 = katolab::Rng::stream(7, 1);
    int same = 0;
    for (int i = 0; i < 64; ++i)
        if (s0.next_u64() == s1.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("rng: uniform01 stays in [0, 1) and is roughly centered") {
    katolab::Rng rng(99);
    double sum = 0.0;
    const int m = 20000;
    for (int i = 0; i < m; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / m - 0.5) < 0.01);
}

TEST_CASE("rng: normal has mean 0 and unit variance") {
    katolab::Rng rng(4242);
    double sum = 0.0, sumsq = 0.0;
    const int m = 40000;
    for (int i = 0; i < m; ++i) {
        const double x = rng.normal();
        sum += x;
        sumsq += x * x;
    }
    CHECK(std::abs(sum / m) < 0.02);
    CHECK(std::abs(sumsq / m - 1.0) < 0.04);
}

TEST_CASE("quadrature: polynomial and trigonometric references") {
    const auto q1 = katolab::integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(std::abs(q1.value - 1.0 / 3.0) < 1e-14);

    const auto q2 = katolab::integrate([](double x) { return std::sin(x); }, 0.0,
                                       3.1415926535897932384626433832795);
    CHECK(std::abs(q2.value - 2.0) < 1e-13);
    CHECK(q2.error < 1e-10);

    const auto q3 = katolab::integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 1e-13);
    CHECK(std::abs(q3.value - std::sqrt(3.1415926535897932384626433832795)) < 1e-12);
}

TEST_CASE("quadrature: error estimate brackets the true error") {
    const auto q = katolab::integrate([](double x) { return std::pow(x, 0.5); }, 0.0, 1.0, 1e-10);
    CHECK(std::abs(q.value - 2.0 / 3.0) <= std::max(q.error * 10.0, 1e-10));
}

TEST_CASE("quadrature: oriented and empty intervals") {
    const auto zero = katolab::integrate([](double x) { return x; }, 2.0, 2.0);
    CHECK(zero.value == 0.0);
    CHECK(zero.evaluations == 0);
}

TEST_CASE("quadrature: exhausting the budget throws rather than returning junk") {
    CHECK_THROWS_AS(katolab::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                                       1e-300, 3000),
                    std::runtime_error);
    CHECK_THROWS_AS(katolab::integrate([](double x) { return x; }, 0.0, 1.0, -1.0),
                    std::invalid_argument);
}

TEST_CASE("golden_min: quadratic bowl") {
    const auto [x, fx] = katolab::golden_min([](double t) { return (t - 0.3) * (t - 0.3); },
                                             0.0, 1.0, 1e-12);
    CHECK(std::abs(x - 0.3) < 1e-7);
    CHECK(fx < 1e-13);
}

TEST_CASE("golden_min: boundary minimum is still found") {
    const auto [x, fx] = katolab::golden_min([](double t) { return t; }, 0.0, 1.0, 1e-12);
    CHECK(x < 1e-7);
    CHECK(fx < 1e-7);
}

TEST_CASE("fmt17 round-trips doubles exactly") {
    const std::vector<double> samples = {0.1,
                                         1.0 / 3.0,
                                         3.1415926535897932384626433832795,
                                         -2.5e-17,
                                         1e300,
                                         -0.0,
                                         6.02214076e23,
                                         1.9877447946247280};
    for (double x : samples) {
        const std::string s = katolab::fmt17(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
}
