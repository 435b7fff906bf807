#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracms/errors.hpp"

namespace fracms {

/// A time grid paired with solution samples.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> values;
    std::string label;
};

/// Errors, orders, and cost counters for one solver run.
struct RunReport {
    std::optional<double> l1_error;
    std::optional<double> linf_error;
    std::optional<std::pair<double, double>> orders;  // (l1, linf)
    double wall_seconds = 0.0;
    long steps = 0;
    std::optional<long> shooting_iters;
};

/// Norm convention for the L1 column. The reference tables normalize the
/// absolute-error sum by the number of steps (the initial grid point
/// carries zero error); the time-integral variant sits behind this flag
/// for sensitivity checks.
enum class L1Convention { mean, integral };

/// linf = max |numeric - reference| over the grid; l1 per the convention:
/// mean = sum|e| / (points - 1), integral = trapezoid of |e(t)|.
std::pair<double, double> error_norms(const Trajectory& numeric,
                                      const std::function<double(double)>& reference,
                                      L1Convention convention = L1Convention::mean);

struct OrderFit {
    std::vector<double> pairwise;  // log(e_{k-1}/e_k) / log(h_{k-1}/h_k)
    double least_squares = 0.0;    // slope of log e vs log h
};

/// Convergence order from (h, e) pairs with h strictly decreasing, e > 0.
OrderFit convergence_order(const std::vector<std::pair<double, double>>& errors);

}  // namespace fracms
