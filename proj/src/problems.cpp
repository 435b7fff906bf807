#include "fracms/problems.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

namespace fracms {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const CoupledProblem& p) {
    if (!(p.eps > 0.0)) {
        throw InvalidArgument(p.name + ": eps must be positive");
    }
    if (p.eps > 1e-2) {
        std::cerr << "warning: " << p.name << ": eps=" << p.eps
                  << " is not small; the multiscale approximation degrades\n";
    }
    if (!(p.period > 0.0) || !(p.horizon >= p.period)) {
        throw InvalidArgument(p.name + ": need period > 0 and horizon >= period");
    }
    if (p.has_exact()) {
        if (std::abs(p.exact_u(0.0) - p.u0) > 1e-12 ||
            std::abs(p.exact_v(0.0) - p.v0) > 1e-12) {
            throw InvalidArgument(p.name + ": exact solutions disagree with initial data");
        }
    }
}

}  // namespace

CoupledProblem example1(const ProblemOverrides& ov) {
    const double alpha = ov.alpha.value_or(0.6);
    const double eps = ov.eps.value_or(5e-5);
    const double c2 = eps * std::tgamma(3.0 - alpha) / 2.0;
    const double c1 = eps * std::tgamma(2.0 - alpha);

    CoupledProblem p;
    p.name = "example1";
    p.alpha = FractionalOrder(alpha);
    p.eps = eps;
    p.u0 = 0.5;
    p.v0 = 0.0;
    p.horizon = ov.horizon.value_or(6.0);
    p.period = 6.0;
    p.exact_u = [c2, c1](double t) { return c2 * t * t + c1 * t + 0.5; };
    p.exact_v = [](double t) { return -t * t + 6.0 * t; };
    p.g = [](double u, double v) { return u * std::sin(v) + 2.0 * v + 1.0; };
    const auto ue = p.exact_u;
    p.f = [ue](double t) {
        return -2.0 * t * t + 10.0 * t + 7.0 + ue(t) * std::sin(-t * t + 6.0 * t);
    };
    p.R = [alpha, ue](double t, double u, double v) {
        return std::pow(t, 2.0 - alpha) + std::pow(t, 1.0 - alpha) + u * v -
               (-t * t + 6.0 * t) * ue(t);
    };
    validate(p);
    return p;
}

CoupledProblem example2(const ProblemOverrides& ov) {
    const double alpha = ov.alpha.value_or(0.4);
    const double eps = ov.eps.value_or(5e-5);
    // The printed forcing carries Gamma(2-alpha) in the (u+1) envelope;
    // consistency with the exact pair requires Gamma(3-alpha). The
    // residual checks in the test suite guard this transcription.
    const double c2 = eps * std::tgamma(3.0 - alpha) / 2.0;

    CoupledProblem p;
    p.name = "example2";
    p.alpha = FractionalOrder(alpha);
    p.eps = eps;
    p.u0 = 1.0;
    p.v0 = 2.0;
    p.horizon = ov.horizon.value_or(10001.0);
    p.period = 1.0;
    p.exact_u = [c2](double t) { return c2 * t * t + 1.0; };
    p.exact_v = [](double t) { return t * std::sin(2.0 * kPi * t) + 2.0; };
    p.g = [](double u, double v) { return (u + 1.0) * v; };
    p.f = [c2](double t) {
        const double s = std::sin(2.0 * kPi * t);
        return s + 2.0 * kPi * t * std::cos(2.0 * kPi * t) +
               (c2 * t * t + 2.0) * (t * s + 2.0);
    };
    p.R = [alpha, c2](double t, double u, double v) {
        const double num = (c2 * t * t + 1.0) * (t * std::sin(2.0 * kPi * t) + 2.0);
        return std::pow(t, 2.0 - alpha) + num / (u * v) - 1.0;
    };
    validate(p);
    return p;
}

CoupledProblem example3(const ProblemOverrides& ov) {
    const double alpha = ov.alpha.value_or(0.8);
    const double eps = ov.eps.value_or(5e-5);
    const double c1 = eps * std::tgamma(2.0 - alpha);

    CoupledProblem p;
    p.name = "example3";
    p.alpha = FractionalOrder(alpha);
    p.eps = eps;
    p.u0 = 1.0;
    p.v0 = 1.0;
    p.horizon = ov.horizon.value_or(8001.0);
    p.period = 1.0;
    p.exact_u = [c1](double t) { return c1 * t + 1.0; };
    p.exact_v = [](double t) {
        const double s = std::sin(kPi * t);
        return t * s * s + 1.0;
    };
    p.g = [](double u, double v) { return u * v * v + u * v; };
    const auto ue = p.exact_u;
    const auto ve = p.exact_v;
    p.f = [ue, ve](double t) {
        const double s = std::sin(kPi * t);
        return s * s + kPi * t * std::sin(2.0 * kPi * t) + ue(t) * ve(t) * ve(t) +
               ue(t) * ve(t);
    };
    p.R = [alpha, ue, ve](double t, double u, double v) {
        const double uet = ue(t);
        return -v * u * u + ve(t) * uet * uet + std::pow(t, 1.0 - alpha);
    };
    validate(p);
    return p;
}

CoupledProblem example4(const ProblemOverrides& ov) {
    const double alpha = ov.alpha.value_or(0.6);
    const double eps = ov.eps.value_or(5e-5);

    CoupledProblem p;
    p.name = "example4";
    p.alpha = FractionalOrder(alpha);
    p.eps = eps;
    p.u0 = 0.5;
    p.v0 = 1.0;
    p.horizon = ov.horizon.value_or(10000.0);
    p.period = 1.0;
    p.g = [](double u, double v) { return u * u * v * v; };
    p.f = [](double t) { return std::pow(t, 0.25) * std::sin(2.0 * kPi * t) + 5.0; };
    p.R = [](double, double u, double v) { return v * u * u; };
    validate(p);
    return p;
}

CoupledProblem problem_by_name(const std::string& name, const ProblemOverrides& ov) {
    if (name == "example1") return example1(ov);
    if (name == "example2") return example2(ov);
    if (name == "example3") return example3(ov);
    if (name == "example4") return example4(ov);
    throw InvalidArgument("unknown problem '" + name + "' (use example1..example4)");
}

AssumptionReport assumption_probe(const CoupledProblem& problem, const ProbeBox& box,
                                  const ProbeGrid& grid) {
    if (grid.nt < 2 || grid.nu < 2 || grid.nv < 2) {
        throw InvalidArgument("assumption_probe: need at least 2 grid points per axis");
    }
    if (!(box.t[1] > box.t[0]) || !(box.u[1] > box.u[0]) || !(box.v[1] > box.v[0])) {
        throw InvalidArgument("assumption_probe: empty box");
    }

    auto axis = [](const std::array<double, 2>& range, int n, int i) {
        return range[0] + (range[1] - range[0]) * static_cast<double>(i) /
                              static_cast<double>(n - 1);
    };
    // Central differences on the state axes. The time axis is clamped to
    // the box (catalog R have power-law terms undefined left of t=0), so
    // its edge derivatives are one-sided.
    auto fd = [](auto&& func, double x, double span) {
        const double h = 1e-6 * span;
        return (func(x + h) - func(x - h)) / (2.0 * h);
    };
    auto fd_clamped = [](auto&& func, double x, double lo, double hi) {
        const double h = 1e-6 * (hi - lo);
        const double xl = std::max(x - h, lo);
        const double xr = std::min(x + h, hi);
        return (func(xr) - func(xl)) / (xr - xl);
    };

    AssumptionReport rep;
    rep.g_min = std::numeric_limits<double>::infinity();
    double L4_max = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < grid.nt; ++it) {
        const double t = axis(box.t, grid.nt, it);
        for (int iu = 0; iu < grid.nu; ++iu) {
            const double u = axis(box.u, grid.nu, iu);
            for (int iv = 0; iv < grid.nv; ++iv) {
                const double v = axis(box.v, grid.nv, iv);
                const double Rv = problem.R(t, u, v);
                const double gv = problem.g(u, v);
                if (!std::isfinite(Rv) || !std::isfinite(gv)) {
                    throw ProbeError("assumption_probe: non-finite sample", t, u, v);
                }
                const double dRdt = fd_clamped([&](double x) { return problem.R(x, u, v); },
                                               t, box.t[0], box.t[1]);
                const double dRdu =
                    fd([&](double x) { return problem.R(t, x, v); }, u, box.u[1] - box.u[0]);
                const double dRdv =
                    fd([&](double x) { return problem.R(t, u, x); }, v, box.v[1] - box.v[0]);
                const double dgdu =
                    fd([&](double x) { return problem.g(x, v); }, u, box.u[1] - box.u[0]);
                const double dgdv =
                    fd([&](double x) { return problem.g(u, x); }, v, box.v[1] - box.v[0]);
                rep.C_R = std::max({rep.C_R, std::abs(Rv), std::abs(dRdt)});
                rep.L1_R = std::max(rep.L1_R, std::abs(dRdu));
                rep.L2_R = std::max(rep.L2_R, std::abs(dRdv));
                rep.C_g = std::max(rep.C_g, std::abs(gv));
                rep.L3 = std::max(rep.L3, std::abs(dgdu));
                rep.g_min = std::min(rep.g_min, dgdv);
                L4_max = std::max(L4_max, dgdv);
            }
        }
    }
    rep.L4 = L4_max;
    std::ostringstream desc;
    desc << "t in [" << box.t[0] << "," << box.t[1] << "] x u in [" << box.u[0] << ","
         << box.u[1] << "] x v in [" << box.v[0] << "," << box.v[1] << "], grid "
         << grid.nt << "x" << grid.nu << "x" << grid.nv;
    rep.sample_box = desc.str();
    return rep;
}

}  // namespace fracms
