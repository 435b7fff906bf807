#include "fracms/fast_dynamics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fracms {

namespace {

/// Residual of the implicit-Euler equation F(v) = v + dt g(u,v) - rhs.
struct ImplicitResidual {
    const FastField& field;
    double u;
    double dt;
    double rhs;

    double operator()(double v) const { return v + dt * field.g(u, v) - rhs; }

    /// Central difference; exact for g quadratic in v.
    double derivative(double v) const {
        const double h = 6.0e-6 * (1.0 + std::abs(v));
        return ((*this)(v + h) - (*this)(v - h)) / (2.0 * h);
    }
};

double bisect(const ImplicitResidual& F, double v_prev, const StepScheme& scheme,
              double newton_last, double newton_res) {
    // Expand a bracket around the previous value until F changes sign.
    double half = 1.0 + std::abs(v_prev);
    double lo = v_prev - half, hi = v_prev + half;
    double flo = F(lo), fhi = F(hi);
    int expansions = 0;
    while (flo * fhi > 0.0 && expansions < 60) {
        half *= 2.0;
        lo = v_prev - half;
        hi = v_prev + half;
        flo = F(lo);
        fhi = F(hi);
        ++expansions;
    }
    if (flo * fhi > 0.0) {
        throw NonconvergenceError(
            "euler_step: implicit solve failed; Newton stalled and no bracket found",
            newton_last, newton_res, scheme.root_max_iter);
    }
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double fm = F(mid);
        if (std::abs(fm) == 0.0 || (hi - lo) <= scheme.root_tol * (1.0 + std::abs(mid))) {
            return mid;
        }
        if (flo * fm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return mid;
}

double implicit_step(const FastField& field, const StepScheme& scheme, double u,
                     double t_next, double v_prev, double dt) {
    const ImplicitResidual F{field, u, dt, v_prev + dt * field.f(t_next)};
    double v = v_prev;
    double fv = F(v);
    for (int it = 0; it < scheme.root_max_iter; ++it) {
        const double J = F.derivative(v);
        if (J == 0.0 || !std::isfinite(J)) {
            break;  // fall through to bisection
        }
        double step = -fv / J;
        double v_new = v + step;
        double f_new = F(v_new);
        // Damp by halving while the residual does not decrease.
        int halvings = 0;
        while (std::abs(f_new) > std::abs(fv) && halvings < 30) {
            step *= 0.5;
            v_new = v + step;
            f_new = F(v_new);
            ++halvings;
        }
        const bool converged = std::abs(step) <= scheme.root_tol * (1.0 + std::abs(v_new));
        v = v_new;
        fv = f_new;
        if (converged && std::isfinite(v)) {
            return v;
        }
    }
    return bisect(F, v_prev, scheme, v, std::abs(fv));
}

}  // namespace

double euler_step(const FastField& field, const StepScheme& scheme, double u,
                  double t_next, double v_prev, double dt) {
    if (!(dt > 0.0)) {
        throw InvalidArgument("euler_step: dt must be positive");
    }
    if (scheme.kind == SchemeKind::explicit_euler) {
        return v_prev + dt * (field.f(t_next) - field.g(u, v_prev));
    }
    return implicit_step(field, scheme, u, t_next, v_prev, dt);
}

std::vector<double> integrate_cycle(const FastField& field, const StepScheme& scheme,
                                    double u, double v_init, double t_start, double dt) {
    const double ratio = field.period / dt;
    const double K_real = std::round(ratio);
    if (!(K_real >= 1.0) || std::abs(ratio - K_real) > 1e-12 * ratio) {
        throw InvalidArgument("integrate_cycle: dt must divide the period");
    }
    const std::size_t K = static_cast<std::size_t>(K_real);
    std::vector<double> v(K + 1);
    v[0] = v_init;
    for (std::size_t k = 1; k <= K; ++k) {
        const double t_next = t_start + static_cast<double>(k) * dt;
        v[k] = euler_step(field, scheme, u, t_next, v[k - 1], dt);
    }
    return v;
}

CellSolution shoot_periodic(const FastField& field, const StepScheme& scheme, double u,
                            double t_start, double dt, double v_guess, double tol,
                            long max_cycles) {
    if (!(tol > 0.0) || max_cycles < 1) {
        throw InvalidArgument("shoot_periodic: tol must be positive, max_cycles >= 1");
    }
    std::vector<double> residuals;
    double seed = v_guess;
    for (long cycle = 1; cycle <= max_cycles; ++cycle) {
        std::vector<double> v = integrate_cycle(field, scheme, u, seed, t_start, dt);
        const double residual = std::abs(v.back() - v.front());
        residuals.push_back(residual);
        if (!std::isfinite(residual)) {
            throw NonconvergenceError("shoot_periodic: non-finite cycle at u=" +
                                          std::to_string(u),
                                      v.back(), residual, cycle, std::move(residuals));
        }
        if (residual <= tol) {
            CellSolution cell;
            cell.t_start = t_start;
            cell.dt = dt;
            cell.samples = std::move(v);
            cell.frozen_u = u;
            cell.shooting_iters = cycle;
            cell.residual = residual;
            return cell;
        }
        seed = v.back();
    }
    const double last_residual = residuals.back();
    throw NonconvergenceError(
        "shoot_periodic: residual " + std::to_string(last_residual) + " > tol after " +
            std::to_string(max_cycles) + " cycles (weak contraction? g_min near zero?)",
        seed, last_residual, max_cycles, std::move(residuals));
}

}  // namespace fracms
