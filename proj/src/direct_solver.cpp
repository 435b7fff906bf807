#include "fracms/direct_solver.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace fracms {

DirectResult direct_solve(const CoupledProblem& problem, const DirectConfig& config) {
    const double dt = config.dt;
    const double horizon = config.horizon > 0.0 ? config.horizon : problem.horizon;
    if (!(dt > 0.0) || !(horizon > 0.0) || config.record_stride < 1) {
        throw InvalidArgument("direct_solve: need dt > 0, horizon > 0, record_stride >= 1");
    }
    const double ratio = horizon / dt;
    const double N_real = std::round(ratio);
    if (std::abs(ratio - N_real) > 1e-9 * ratio) {
        throw InvalidArgument("direct_solve: dt must divide the horizon");
    }
    const long N = static_cast<long>(N_real);

    const auto t_begin = std::chrono::steady_clock::now();
    CaputoHistory history(dt, problem.u0, l1_weights(problem.alpha, static_cast<std::size_t>(N)));
    const FastField field{problem.g, problem.f, problem.period};

    DirectResult out;
    out.u.label = "u";
    out.v.label = "v";
    const std::size_t recorded = static_cast<std::size_t>(N / config.record_stride) + 1;
    out.u.times.reserve(recorded);
    out.u.values.reserve(recorded);
    out.v.times.reserve(recorded);
    out.v.values.reserve(recorded);
    out.u.times.push_back(0.0);
    out.u.values.push_back(problem.u0);
    out.v.times.push_back(0.0);
    out.v.values.push_back(problem.v0);

    double u_prev = problem.u0;
    double v_prev = problem.v0;
    for (long i = 1; i <= N; ++i) {
        const double t_prev = static_cast<double>(i - 1) * dt;
        const double t_next = static_cast<double>(i) * dt;
        const double rhs = problem.eps * problem.R(t_prev, u_prev, v_prev);
        const double u_next = caputo_l1_advance(history, rhs);
        history.push(u_next);
        const double v_next = euler_step(field, config.scheme, u_next, t_next, v_prev, dt);
        if (!std::isfinite(u_next) || !std::isfinite(v_next)) {
            throw DivergenceError("direct_solve: non-finite state at step " +
                                      std::to_string(i) + " (t=" + std::to_string(t_next) + ")",
                                  i);
        }
        u_prev = u_next;
        v_prev = v_next;
        if (i % config.record_stride == 0 || i == N) {
            out.u.times.push_back(t_next);
            out.u.values.push_back(u_next);
            out.v.times.push_back(t_next);
            out.v.values.push_back(v_next);
        }
    }

    out.report.steps = N;
    out.report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    if (problem.has_exact()) {
        const auto [l1, linf] = error_norms(out.u, problem.exact_u);
        out.report.l1_error = l1;
        out.report.linf_error = linf;
    }
    return out;
}

}  // namespace fracms
