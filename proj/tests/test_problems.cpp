#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracms/fractional.hpp"
#include "fracms/problems.hpp"

using namespace fracms;

namespace {

constexpr double kPi = std::numbers::pi;

/// Residuals of both governing equations along the exact pair, using the
/// analytic v' (hard-coded per example) and caputo_analytic for the
/// fractional side. This is the transcription firewall for the long
/// forcing formulas.
double max_residuals(const CoupledProblem& p,
                     const std::function<double(double)>& exact_v_prime,
                     const std::function<double(double)>& exact_dalpha_u, double t_max,
                     int points) {
    double worst = 0.0;
    for (int i = 0; i <= points; ++i) {
        const double t = t_max * static_cast<double>(i) / points;
        const double u = p.exact_u(t);
        const double v = p.exact_v(t);
        const double fast = exact_v_prime(t) + p.g(u, v) - p.f(t);
        const double slow = exact_dalpha_u(t) - p.eps * p.R(t, u, v);
        worst = std::max({worst, std::abs(fast), std::abs(slow)});
    }
    return worst;
}

}  // namespace

TEST_CASE("example1: exact values and residual firewall") {
    const CoupledProblem p = example1();
    CHECK(p.exact_v(3.0) == 9.0);
    CHECK(p.exact_v(0.0) == 0.0);
    CHECK(p.exact_v(6.0) == 0.0);
    CHECK(p.exact_u(0.0) == p.u0);
    CHECK(p.period == 6.0);

    const double a = p.alpha.value();
    const double c2 = p.eps * std::tgamma(3.0 - a) / 2.0;
    const double c1 = p.eps * std::tgamma(2.0 - a);
    auto dalpha_u = [&](double t) {
        return c2 * caputo_analytic(2, p.alpha, t) + c1 * caputo_analytic(1, p.alpha, t);
    };
    auto v_prime = [](double t) { return -2.0 * t + 6.0; };
    CHECK(max_residuals(p, v_prime, dalpha_u, 6.0, 100) <= 1e-10);
}

TEST_CASE("example2: exact values and residual firewall") {
    const CoupledProblem p = example2();
    for (double t : {0.0, 1.0, 7.0, 100.0, 9999.0}) {
        // sin(2*pi*t) at large integer t carries argument-reduction roundoff
        CHECK(p.exact_v(t) == doctest::Approx(2.0).epsilon(1e-7));
    }
    CHECK(p.exact_u(0.0) == 1.0);

    const double a = p.alpha.value();
    const double c2 = p.eps * std::tgamma(3.0 - a) / 2.0;
    auto dalpha_u = [&](double t) { return c2 * caputo_analytic(2, p.alpha, t); };
    auto v_prime = [](double t) {
        return std::sin(2.0 * kPi * t) + 2.0 * kPi * t * std::cos(2.0 * kPi * t);
    };
    CHECK(max_residuals(p, v_prime, dalpha_u, 100.0, 400) <= 1e-9);
}

TEST_CASE("example3: exact values and residual firewall") {
    const CoupledProblem p = example3();
    for (double t : {0.0, 1.0, 13.0, 100.0}) {
        CHECK(p.exact_v(t) == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(p.exact_u(0.0) == 1.0);

    const double a = p.alpha.value();
    const double c1 = p.eps * std::tgamma(2.0 - a);
    auto dalpha_u = [&](double t) { return c1 * caputo_analytic(1, p.alpha, t); };
    auto v_prime = [](double t) {
        const double s = std::sin(kPi * t);
        return s * s + kPi * t * std::sin(2.0 * kPi * t);
    };
    CHECK(max_residuals(p, v_prime, dalpha_u, 100.0, 400) <= 1e-9);
}

TEST_CASE("example2 residual firewall survives parameter overrides") {
    ProblemOverrides ov;
    ov.alpha = 0.5;
    ov.eps = 1e-4;
    const CoupledProblem p = example2(ov);
    const double c2 = p.eps * std::tgamma(2.5) / 2.0;
    auto dalpha_u = [&](double t) { return c2 * caputo_analytic(2, p.alpha, t); };
    auto v_prime = [](double t) {
        return std::sin(2.0 * kPi * t) + 2.0 * kPi * t * std::cos(2.0 * kPi * t);
    };
    CHECK(max_residuals(p, v_prime, dalpha_u, 10.0, 200) <= 1e-9);
}

TEST_CASE("example4: forcing values and degenerate dissipation at v=0") {
    const CoupledProblem p = example4();
    CHECK(p.f(0.0) == 5.0);
    for (double t : {1.0, 64.0, 10000.0}) {
        CHECK(p.f(t) == doctest::Approx(5.0).epsilon(1e-10));
    }
    CHECK_FALSE(p.has_exact());

    ProbeBox box;
    box.t = {0.0, 1e4};
    box.u = {0.4, 1.5};
    box.v = {0.0, 3.0};
    const AssumptionReport rep = assumption_probe(p, box, ProbeGrid{5, 9, 13});
    // dg/dv = 2 u^2 v vanishes on the v=0 face
    CHECK(std::abs(rep.g_min) <= 1e-6);
    CHECK_FALSE(rep.within_theory());
    CHECK(rep.L4 == doctest::Approx(2.0 * 1.5 * 1.5 * 3.0).epsilon(1e-4));
}

TEST_CASE("assumption_probe recovers closed-form constants") {
    CoupledProblem p;
    p.g = [](double u, double v) { return (u + 1.0) * v; };
    p.R = [](double, double, double) { return 0.0; };
    p.f = [](double) { return 0.0; };
    ProbeBox box;
    box.t = {0.0, 1.0};
    box.u = {1.0, 2.0};
    box.v = {0.0, 3.0};
    const AssumptionReport rep = assumption_probe(p, box, ProbeGrid{3, 11, 11});
    CHECK(rep.g_min == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(rep.L4 == doctest::Approx(3.0).epsilon(1e-5));
    CHECK(rep.L3 == doctest::Approx(3.0).epsilon(1e-5));
    CHECK(rep.within_theory());

    CoupledProblem q;
    q.g = [](double, double v) { return 2.0 * v + std::sin(v); };
    q.R = [](double, double, double) { return 0.0; };
    q.f = [](double) { return 0.0; };
    box.v = {-6.0, 6.0};
    const AssumptionReport rq = assumption_probe(q, box, ProbeGrid{2, 2, 101});
    CHECK(rq.g_min >= 1.0 - 1e-6);
    CHECK(rq.L4 <= 3.0 + 1e-6);

    // example3's dissipation on a thin late-time box: max u(2v+1)
    const CoupledProblem e3 = example3();
    ProbeBox thin;
    thin.t = {0.0, 1.0};
    thin.u = {1.0, 1.01};
    thin.v = {1.0, 9001.0};
    const AssumptionReport r3 = assumption_probe(e3, thin, ProbeGrid{2, 5, 41});
    CHECK(r3.L4 == doctest::Approx(1.01 * (2.0 * 9001.0 + 1.0)).epsilon(1e-3));
}

TEST_CASE("assumption_probe flags non-finite samples with the point") {
    CoupledProblem p;
    p.g = [](double, double v) { return 1.0 / v; };
    p.R = [](double, double, double) { return 0.0; };
    p.f = [](double) { return 0.0; };
    ProbeBox box;
    box.v = {-1.0, 1.0};  // grid hits v = 0
    CHECK_THROWS_AS(assumption_probe(p, box, ProbeGrid{2, 2, 3}), ProbeError);
}

TEST_CASE("problem_by_name: lookup and validation") {
    CHECK(problem_by_name("example3").name == "example3");
    CHECK_THROWS_AS(problem_by_name("example9"), InvalidArgument);
    ProblemOverrides bad;
    bad.alpha = 1.5;
    CHECK_THROWS_AS(problem_by_name("example1", bad), InvalidArgument);
    ProblemOverrides neg;
    neg.eps = -1.0;
    CHECK_THROWS_AS(problem_by_name("example2", neg), InvalidArgument);
}
