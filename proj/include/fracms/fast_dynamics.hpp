#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fracms/errors.hpp"

namespace fracms {

/// Right-hand side of the fast equation v' + g(u,v) = f(t) together with
/// the forcing period. g is expected to satisfy the dissipation bound
/// 0 < g_min <= dg/dv on the domain of use; this is probed, not enforced
/// (see assumption_probe in problems.hpp).
struct FastField {
    std::function<double(double, double)> g;  // (u, v)
    std::function<double(double)> f;          // (t)
    double period = 1.0;
};

enum class SchemeKind { explicit_euler, implicit_euler };

/// Single-step scheme for the fast variable plus root-find controls for
/// the implicit variant.
struct StepScheme {
    SchemeKind kind = SchemeKind::implicit_euler;
    double root_tol = 1e-12;
    int root_max_iter = 50;
};

/// One identified periodic fast solution over a single forcing period at
/// a frozen slow value.
struct CellSolution {
    double t_start = 0.0;
    double dt = 0.0;
    std::vector<double> samples;  // v_0..v_K, K*dt = period
    double frozen_u = 0.0;
    long shooting_iters = 0;
    double residual = 0.0;  // final |v(end) - v(start)|
};

/// Advance the fast variable one step of size dt toward t_next.
/// Explicit: v_prev + dt*(f(t_next) - g(u, v_prev)).
/// Implicit: the root v of v + dt*g(u,v) = v_prev + dt*f(t_next), by
/// damped Newton seeded at v_prev with a bisection fallback on a
/// geometrically expanded bracket.
double euler_step(const FastField& field, const StepScheme& scheme, double u,
                  double t_next, double v_prev, double dt);

/// Integrate one forcing period [t_start, t_start + period] from v_init.
/// Returns v at all K+1 grid points; f is evaluated at absolute times.
std::vector<double> integrate_cycle(const FastField& field, const StepScheme& scheme,
                                    double u, double v_init, double t_start, double dt);

/// Periodic solution identification: integrate cycles, re-seeding each
/// with the previous endpoint, until |v(end) - v(start)| <= tol. Returns
/// the last full cycle. Throws NonconvergenceError with the residual
/// history after max_cycles.
CellSolution shoot_periodic(const FastField& field, const StepScheme& scheme, double u,
                            double t_start, double dt, double v_guess, double tol,
                            long max_cycles);

}  // namespace fracms
