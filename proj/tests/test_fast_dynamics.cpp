#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracms/fast_dynamics.hpp"
#include "fracms/problems.hpp"

using namespace fracms;

namespace {

constexpr double kPi = std::numbers::pi;

StepScheme explicit_scheme() { return {SchemeKind::explicit_euler, 1e-12, 50}; }
StepScheme implicit_scheme() { return {SchemeKind::implicit_euler, 1e-12, 50}; }

}  // namespace

TEST_CASE("euler_step: trivial fields") {
    const FastField field{[](double, double) { return 0.0; },
                          [](double) { return 4.0; }, 1.0};
    CHECK(euler_step(field, explicit_scheme(), 0.0, 0.1, 2.0, 0.1) ==
          doctest::Approx(2.4).epsilon(1e-15));
    CHECK_THROWS_AS(euler_step(field, explicit_scheme(), 0.0, 0.1, 2.0, 0.0),
                    InvalidArgument);
}

TEST_CASE("euler_step implicit: linear and quadratic roots") {
    // v + 0.5*2v = 2  =>  v = 1
    const FastField linear{[](double u, double v) { return (u + 1.0) * v; },
                           [](double) { return 0.0; }, 1.0};
    CHECK(euler_step(linear, implicit_scheme(), 1.0, 0.5, 2.0, 0.5) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // v + v^2 + v = 1, positive root (-2+sqrt(8))/2, frozen
    const FastField riccati{[](double u, double v) { return u * v * v + u * v; },
                            [](double) { return 0.0; }, 1.0};
    CHECK(euler_step(riccati, implicit_scheme(), 1.0, 1.0, 1.0, 1.0) ==
          doctest::Approx(0.41421356237309505).epsilon(1e-11));
}

TEST_CASE("implicit and explicit steps differ by O(dt^2)") {
    const FastField field{[](double u, double v) { return u * std::sin(v) + 2.0 * v + 1.0; },
                          [](double t) { return std::cos(t); }, 1.0};
    auto gap = [&](double dt) {
        const double ex = euler_step(field, explicit_scheme(), 0.5, 0.7 + dt, 0.3, dt);
        const double im = euler_step(field, implicit_scheme(), 0.5, 0.7 + dt, 0.3, dt);
        return std::abs(im - ex);
    };
    const double ratio = gap(1e-2) / gap(5e-3);
    CHECK(ratio > 3.4);
    CHECK(ratio < 4.6);
}

TEST_CASE("integrate_cycle holds a fixed point") {
    const FastField field{[](double, double v) { return v; }, [](double) { return 1.0; },
                          1.0};
    for (const auto& scheme : {explicit_scheme(), implicit_scheme()}) {
        const auto v = integrate_cycle(field, scheme, 0.7, 1.0, 0.0, 1.0 / 16.0);
        REQUIRE(v.size() == 17);
        for (double s : v) {
            CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("integrate_cycle rejects a step that does not divide the period") {
    const FastField field{[](double, double v) { return v; }, [](double) { return 0.0; },
                          1.0};
    CHECK_THROWS_AS(integrate_cycle(field, explicit_scheme(), 0.0, 0.0, 0.0, 0.3),
                    InvalidArgument);
}

TEST_CASE("integrate_cycle tracks the example1 cell") {
    const CoupledProblem p = example1();
    const FastField field{p.g, p.f, p.period};
    const auto v = integrate_cycle(field, explicit_scheme(), 0.5, 0.0, 0.0, 1.0 / 32.0);
    REQUIRE(v.size() == 193);
    // exact v(6) = 0; first-order Euler error, bound frozen from the
    // first verified run (observed 0.1731)
    CHECK(std::abs(v.back()) < 0.2);
}

TEST_CASE("periodic response of a linear field matches the closed form") {
    const FastField field{[](double, double v) { return 2.0 * v; },
                          [](double t) { return std::sin(2.0 * kPi * t); }, 1.0};
    const double dt = 1e-3;
    const CellSolution cell =
        shoot_periodic(field, implicit_scheme(), 0.0, 0.0, dt, 0.0, 1e-10, 1000);
    auto exact = [](double t) {
        return (2.0 * std::sin(2.0 * kPi * t) - 2.0 * kPi * std::cos(2.0 * kPi * t)) /
               (4.0 + 4.0 * kPi * kPi);
    };
    double worst = 0.0;
    for (std::size_t k = 0; k < cell.samples.size(); ++k) {
        worst = std::max(worst,
                         std::abs(cell.samples[k] - exact(static_cast<double>(k) * dt)));
    }
    CHECK(worst < 1e-3);  // observed 4.5e-4 at dt=1e-3
}

TEST_CASE("shoot_periodic finds constant steady states") {
    const FastField field{[](double u, double v) { return (u + 1.0) * v; },
                          [](double) { return 3.0; }, 1.0};
    const CellSolution cell =
        shoot_periodic(field, implicit_scheme(), 1.0, 0.0, 1.0 / 64.0, -5.0, 1e-8, 100);
    CHECK(cell.residual <= 1e-8);
    CHECK(std::abs(cell.samples.front() - cell.samples.back()) <= 1e-8);
    for (double s : cell.samples) {
        CHECK(s == doctest::Approx(1.5).epsilon(1e-6));
    }
}

TEST_CASE("shooting residuals contract at the dissipation rate") {
    // capture the residual history by forcing nonconvergence
    auto ratios_for = [](const FastField& field, double v_guess, long cycles) {
        std::vector<double> hist;
        try {
            shoot_periodic(field, implicit_scheme(), 0.0, 0.0, 1.0 / 128.0, v_guess,
                           1e-300, cycles);
        } catch (const NonconvergenceError& e) {
            hist = e.residual_history();
        }
        REQUIRE(hist.size() == static_cast<std::size_t>(cycles));
        std::vector<double> ratios;
        for (std::size_t k = 1; k < hist.size(); ++k) {
            ratios.push_back(hist[k] / hist[k - 1]);
        }
        return ratios;
    };

    for (double lambda : {0.5, 1.0, 2.0}) {
        const FastField field{[lambda](double, double v) { return lambda * v; },
                              [](double t) { return std::sin(2.0 * kPi * t); }, 1.0};
        for (double r : ratios_for(field, 10.0, 6)) {
            CHECK(r <= std::exp(-lambda) * 1.05);
        }
    }

    // dg/dv = 2 + cos v >= 1
    const FastField soft{[](double, double v) { return 2.0 * v + std::sin(v); },
                         [](double t) { return std::cos(2.0 * kPi * t); }, 1.0};
    const auto ratios = ratios_for(soft, 5.0, 6);
    for (double r : ratios) {
        CHECK(r <= std::exp(-1.0) + 0.05);
    }
}

TEST_CASE("shoot_periodic reports weak contraction instead of spinning") {
    const FastField weak{[](double, double v) { return 1e-3 * v; },
                         [](double t) { return std::sin(2.0 * kPi * t); }, 1.0};
    try {
        shoot_periodic(weak, implicit_scheme(), 0.0, 0.0, 1.0 / 32.0, 7.0, 1e-12, 5);
        FAIL("expected nonconvergence");
    } catch (const NonconvergenceError& e) {
        CHECK(e.iterations() == 5);
        CHECK(e.residual_history().size() == 5);
        CHECK(e.residual() > 1e-12);
    }
}

TEST_CASE("cell periodicity holds by construction on an example2 cell") {
    const CoupledProblem p = example2();
    const FastField field{p.g, p.f, p.period};
    const CellSolution cell =
        shoot_periodic(field, implicit_scheme(), 1.0, 100.0, 1.0 / 100.0, 2.0, 1e-5, 1000);
    CHECK(std::abs(cell.samples.front() - cell.samples.back()) <= 1e-5);
    CHECK(cell.residual <= 1e-5);
    CHECK(cell.frozen_u == 1.0);
}
