#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "fracms/fractional.hpp"

namespace fracms {

/// Full description of one coupled fast/slow system:
///   v' + g(u,v) = f(t),   D^alpha u = eps * R(t,u,v),
/// with locally periodic forcing f and optional exact solutions.
struct CoupledProblem {
    std::string name;
    std::function<double(double, double)> g;          // (u, v)
    std::function<double(double, double, double)> R;  // (t, u, v)
    std::function<double(double)> f;                  // (t)
    double u0 = 0.0;
    double v0 = 0.0;
    FractionalOrder alpha{0.5};
    double eps = 0.0;
    double horizon = 0.0;
    double period = 1.0;
    std::function<double(double)> exact_u;  // empty when unavailable
    std::function<double(double)> exact_v;

    bool has_exact() const { return static_cast<bool>(exact_u); }
};

/// Optional parameter overrides for a catalog problem. f and R capture
/// alpha and eps, so overriding rebuilds the whole problem.
struct ProblemOverrides {
    std::optional<double> alpha;
    std::optional<double> eps;
    std::optional<double> horizon;
};

CoupledProblem example1(const ProblemOverrides& ov = {});
CoupledProblem example2(const ProblemOverrides& ov = {});
CoupledProblem example3(const ProblemOverrides& ov = {});
CoupledProblem example4(const ProblemOverrides& ov = {});

/// Lookup by catalog name "example1".."example4"; throws InvalidArgument
/// for unknown names.
CoupledProblem problem_by_name(const std::string& name, const ProblemOverrides& ov = {});

/// Numerically probed constants of Assumptions 2-3 over a sample box.
/// g_min <= 0 flags the problem as outside the contraction theory.
struct AssumptionReport {
    double C_R = 0.0;    // max(|R|, |dR/dt|)
    double L1_R = 0.0;   // max |dR/du|
    double L2_R = 0.0;   // max |dR/dv|
    double C_g = 0.0;    // max |g|
    double L3 = 0.0;     // max |dg/du|
    double L4 = 0.0;     // max dg/dv
    double g_min = 0.0;  // min dg/dv
    std::string sample_box;

    bool within_theory() const { return g_min > 0.0; }
};

struct ProbeBox {
    std::array<double, 2> t{0.0, 1.0};
    std::array<double, 2> u{0.0, 1.0};
    std::array<double, 2> v{0.0, 1.0};
};

struct ProbeGrid {
    int nt = 2;
    int nu = 2;
    int nv = 2;
};

/// Estimate the assumption constants by central differences and extrema
/// over the tensor grid. Purely diagnostic.
AssumptionReport assumption_probe(const CoupledProblem& problem, const ProbeBox& box,
                                  const ProbeGrid& grid);

}  // namespace fracms
