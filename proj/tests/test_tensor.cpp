#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "katolab/closed_forms.hpp"
#include "katolab/rng.hpp"
#include "katolab/tensor.hpp"

namespace {

katolab::GradientDirection random_direction(int n, int d, katolab::Rng& rng) {
    std::vector<double> e(static_cast<std::size_t>(n) * d);
    for (double& x : e) x = rng.normal();
    return katolab::GradientDirection(n, d, std::move(e));
}

katolab::HessianCandidate random_candidate(int n, int d, katolab::Rng& rng) {
    katolab::HessianCandidate w(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int a = 0; a < d; ++a) w.set(i, j, a, rng.normal());
    return w;
}

// Direct transcription of the residual definition, written without any
// shared code so it can disagree with the library.
std::vector<double> residual_naive(const katolab::GradientDirection& v,
                                   const katolab::HessianCandidate& w, double p) {
    const int n = v.n(), d = v.d();
    std::vector<double> res(d, 0.0);
    for (int a = 0; a < d; ++a) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += w.at(i, i, a);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int b = 0; b < d; ++b)
                    acc += (p - 2.0) * v.at(i, a) * v.at(j, b) * w.at(i, j, b);
        res[a] = acc;
    }
    return res;
}

double objective_naive(const katolab::GradientDirection& v, const katolab::HessianCandidate& w) {
    const int n = v.n(), d = v.d();
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < d; ++a) row += v.at(j, a) * w.at(i, j, a);
        total += row * row;
    }
    return total;
}

} // namespace

TEST_CASE("GradientDirection normalizes on construction") {
    katolab::GradientDirection v(2, 1, {3.0, 4.0});
    CHECK(v.at(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(v.at(1, 0) == doctest::Approx(0.8).epsilon(1e-15));
    double s = 0.0;
    for (double x : v.entries()) s += x * x;
    CHECK(std::abs(s - 1.0) < 1e-14);
}

TEST_CASE("GradientDirection rejects degenerate input") {
    CHECK_THROWS_AS(katolab::GradientDirection(2, 1, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(katolab::GradientDirection(2, 2, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(katolab::GradientDirection(0, 1, {}), std::invalid_argument);
}

TEST_CASE("HessianCandidate stores a symmetric tensor") {
    katolab::HessianCandidate w(3, 2);
    w.set(0, 2, 1, 5.0);
    CHECK(w.at(2, 0, 1) == 5.0);
    w.set(2, 1, 0, -4.0);
    CHECK(w.at(1, 2, 0) == -4.0);
    CHECK(w.triangle_size() == 12);
    CHECK_THROWS_AS(w.at(3, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(w.at(0, 0, 2), std::invalid_argument);
}

TEST_CASE("frobenius_norm counts off-diagonal entries twice") {
    katolab::HessianCandidate w(2, 1);
    w.set(0, 1, 0, 1.0);
    CHECK(w.frobenius_norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    w.set(0, 0, 0, 2.0);
    CHECK(w.frobenius_norm() == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
    CHECK(w.normalized().frobenius_norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w.scaled(3.0).frobenius_norm() == doctest::Approx(3.0 * std::sqrt(6.0)).epsilon(1e-15));
}

TEST_CASE("constraint_residual matches an independent transcription") {
    katolab::Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 4);
        const int d = 1 + static_cast<int>(rng.uniform01() * 4);
        const double p = rng.uniform(1.0, 4.0);
        const auto v = random_direction(n, d, rng);
        const auto w = random_candidate(n, d, rng);
        const auto lib = katolab::constraint_residual(v, w, p);
        const auto ref = residual_naive(v, w, p);
        REQUIRE(lib.size() == ref.size());
        for (std::size_t a = 0; a < lib.size(); ++a)
            CHECK(lib[a] == doctest::Approx(ref[a]).epsilon(1e-12));
    }
}

TEST_CASE("kato_objective matches an independent transcription") {
    katolab::Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 4);
        const int d = 1 + static_cast<int>(rng.uniform01() * 4);
        const auto v = random_direction(n, d, rng);
        const auto w = random_candidate(n, d, rng);
        CHECK(katolab::kato_objective(v, w) ==
              doctest::Approx(objective_naive(v, w)).epsilon(1e-12));
    }
}

TEST_CASE("kato_objective scales quadratically and respects rotations of the target index") {
    katolab::Rng rng(31);
    const auto v = random_direction(3, 2, rng);
    const auto w = random_candidate(3, 2, rng);
    const double base = katolab::kato_objective(v, w);
    CHECK(katolab::kato_objective(v, w.scaled(2.5)) == doctest::Approx(6.25 * base).epsilon(1e-12));

    // Rotate the a-index of both tensors by the same planar rotation; the
    // objective contracts v against w, so it cannot change.
    const double c = std::cos(0.7), s = std::sin(0.7);
    std::vector<double> ve(6);
    for (int j = 0; j < 3; ++j) {
        ve[2 * j] = c * v.at(j, 0) - s * v.at(j, 1);
        ve[2 * j + 1] = s * v.at(j, 0) + c * v.at(j, 1);
    }
    katolab::GradientDirection vr(3, 2, ve);
    katolab::HessianCandidate wr(3, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            wr.set(i, j, 0, c * w.at(i, j, 0) - s * w.at(i, j, 1));
            wr.set(i, j, 1, s * w.at(i, j, 0) + c * w.at(i, j, 1));
        }
    CHECK(katolab::kato_objective(vr, wr) == doctest::Approx(base).epsilon(1e-10));
}

TEST_CASE("make_witness normalizes and records the residual") {
    // Traceless diagonal candidate: feasible at p = 2 for any v.
    katolab::GradientDirection v(2, 1, {1.0, 0.0});
    katolab::HessianCandidate w(2, 1);
    w.set(0, 0, 0, 3.0);
    w.set(1, 1, 0, -3.0);
    const auto wit = katolab::make_witness(v, w, 2.0);
    CHECK(wit.w.frobenius_norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(wit.constraint_residual_norm <= 1e-12);
    CHECK(wit.ratio == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(wit.recomputed_ratio() == doctest::Approx(wit.ratio).epsilon(1e-14));
}

TEST_CASE("make_witness rejects infeasible candidates") {
    katolab::GradientDirection v(2, 1, {1.0, 0.0});
    katolab::HessianCandidate w(2, 1);
    w.set(0, 0, 0, 1.0);
    w.set(1, 1, 0, 1.0); // trace 2 after normalization stays sqrt(2)
    try {
        katolab::make_witness(v, w, 2.0);
        FAIL("expected feasibility_error");
    } catch (const katolab::feasibility_error& e) {
        CHECK(e.residual_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("explicit gap witness: ratio is exactly 14/(25 + 2 sqrt 2)") {
    const auto wit = katolab::closed_forms::gap_certificate_63();
    const double expected = 14.0 / (25.0 + 2.0 * std::sqrt(2.0));
    CHECK(wit.ratio == doctest::Approx(expected).epsilon(1e-14));
    CHECK(wit.constraint_residual_norm <= 1e-12);
    CHECK(1.0 / wit.ratio == doctest::Approx(1.9877447946247280).epsilon(1e-13));
    CHECK(wit.w.frobenius_norm() == doctest::Approx(1.0).epsilon(1e-14));

    // The witness direction is the normalized pair (e1; e2; 0).
    CHECK(wit.v.at(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(wit.v.at(1, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(wit.v.at(2, 0) == 0.0);
}
