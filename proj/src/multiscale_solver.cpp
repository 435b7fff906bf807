#include "fracms/multiscale_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace fracms {

namespace {

double window_anchor(double t_macro, double period, CellWindow window) {
    if (window == CellWindow::leading) {
        return t_macro;
    }
    return std::max(t_macro - 0.5 * period, 0.0);
}

void check_config(const CoupledProblem& problem, const MacroConfig& config) {
    if (!(config.dT >= problem.period)) {
        throw InvalidArgument("multiscale_solve: dT must be at least the forcing period");
    }
    const double ratio = problem.period / config.dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-12 * ratio) {
        throw InvalidArgument("multiscale_solve: dt must divide the forcing period");
    }
    if (!(config.tol > 0.0) || config.max_cycles < 1) {
        throw InvalidArgument("multiscale_solve: tol must be positive, max_cycles >= 1");
    }
}

}  // namespace

double cell_average(const CoupledProblem& problem, const CellSolution& cell, double U,
                    CellAverage average) {
    const std::size_t K = cell.samples.size() - 1;
    double sum = 0.0;
    for (std::size_t k = 0; k <= K; ++k) {
        const double t_k = cell.t_start + static_cast<double>(k) * cell.dt;
        sum += problem.R(t_k, U, cell.samples[k]);
    }
    if (average == CellAverage::mean) {
        return sum / static_cast<double>(K + 1);
    }
    const double t_end = cell.t_start + static_cast<double>(K) * cell.dt;
    const double ends = 0.5 * (problem.R(cell.t_start, U, cell.samples.front()) +
                               problem.R(t_end, U, cell.samples.back()));
    return (sum - ends) / static_cast<double>(K);
}

MultiscaleResult multiscale_solve(const CoupledProblem& problem, const MacroConfig& config) {
    check_config(problem, config);
    const double horizon = config.horizon > 0.0 ? config.horizon : problem.horizon;
    const long M = static_cast<long>(std::floor(horizon / config.dT + 1e-9));
    if (M < 1) {
        throw InvalidArgument("multiscale_solve: horizon shorter than one macro step");
    }

    const auto t_begin = std::chrono::steady_clock::now();
    CaputoHistory history(config.dT, problem.u0,
                          l1_weights(problem.alpha, static_cast<std::size_t>(M)));
    const FastField field{problem.g, problem.f, problem.period};

    MultiscaleResult out;
    MacroState& state = out.state;
    state.window = config.window;
    state.times.reserve(M + 1);
    state.U.reserve(M + 1);
    state.cell_averages.reserve(M);
    state.times.push_back(0.0);
    state.U.push_back(problem.u0);

    double warm = problem.v0;
    long total_cycles = 0;
    double u_prev = problem.u0;
    for (long m = 1; m <= M; ++m) {
        const double t_macro = static_cast<double>(m - 1) * config.dT;
        const double anchor = window_anchor(t_macro, problem.period, config.window);
        CellSolution cell;
        try {
            cell = shoot_periodic(field, config.scheme, u_prev, anchor, config.dt, warm,
                                  config.tol, config.max_cycles);
        } catch (const NonconvergenceError& e) {
            throw NonconvergenceError("multiscale_solve: cell at macro step " +
                                          std::to_string(m) + " (T=" + std::to_string(t_macro) +
                                          "): " + e.what(),
                                      e.last_value(), e.residual(), e.iterations(),
                                      e.residual_history());
        }
        total_cycles += cell.shooting_iters;
        warm = cell.samples.back();

        const double rbar = cell_average(problem, cell, u_prev, config.average);
        const double u_next = caputo_l1_advance(history, problem.eps * rbar);
        if (!std::isfinite(u_next)) {
            throw DivergenceError("multiscale_solve: non-finite slow value at macro step " +
                                      std::to_string(m),
                                  m);
        }
        history.push(u_next);
        state.times.push_back(static_cast<double>(m) * config.dT);
        state.U.push_back(u_next);
        state.cell_averages.push_back(rbar);
        if (config.keep_cells) {
            state.cells.push_back(std::move(cell));
        }
        u_prev = u_next;
    }

    out.report.steps = M;
    out.report.shooting_iters = total_cycles;
    out.report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    if (problem.has_exact()) {
        Trajectory traj{state.times, state.U, "U"};
        const auto [l1, linf] = error_norms(traj, problem.exact_u);
        out.report.l1_error = l1;
        out.report.linf_error = linf;
    }
    return out;
}

double reconstruct_fast(const MacroState& state, const CoupledProblem& problem, double t,
                        const MacroConfig& config) {
    if (state.times.size() < 2) {
        throw InvalidArgument("reconstruct_fast: empty macro state");
    }
    if (t < 0.0 || t > state.times.back() + 1e-12) {
        throw InvalidArgument("reconstruct_fast: t outside the solved horizon");
    }
    // Interval m covers [T_{m-1}, T_m); the final time belongs to the last.
    const auto it = std::upper_bound(state.times.begin(), state.times.end(), t);
    std::size_t m = static_cast<std::size_t>(it - state.times.begin());
    m = std::clamp<std::size_t>(m, 1, state.times.size() - 1);

    CellSolution resolved;
    const CellSolution* cell = nullptr;
    if (!state.cells.empty()) {
        cell = &state.cells[m - 1];
    } else {
        const double anchor =
            window_anchor(state.times[m - 1], problem.period, state.window);
        const FastField field{problem.g, problem.f, problem.period};
        resolved = shoot_periodic(field, config.scheme, state.U[m - 1], anchor, config.dt,
                                  problem.v0, config.tol, config.max_cycles);
        cell = &resolved;
    }

    double phase = std::fmod(t - cell->t_start, problem.period);
    if (phase < 0.0) {
        phase += problem.period;
    }
    const std::size_t K = cell->samples.size() - 1;
    std::size_t k = static_cast<std::size_t>(std::llround(phase / cell->dt));
    k = std::min(k, K);
    return cell->samples[k];
}

}  // namespace fracms
