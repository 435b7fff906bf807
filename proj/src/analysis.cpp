#include "fracms/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace fracms {

std::pair<double, double> error_norms(const Trajectory& numeric,
                                      const std::function<double(double)>& reference,
                                      L1Convention convention) {
    const std::size_t n = numeric.times.size();
    if (n == 0 || numeric.values.size() != n) {
        throw InvalidArgument("error_norms: empty or ragged trajectory");
    }
    std::vector<double> abs_err(n);
    double linf = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        abs_err[i] = std::abs(numeric.values[i] - reference(numeric.times[i]));
        linf = std::max(linf, abs_err[i]);
    }
    double l1 = 0.0;
    if (convention == L1Convention::mean) {
        double sum = 0.0;
        for (double e : abs_err) sum += e;
        l1 = (n > 1) ? sum / static_cast<double>(n - 1) : sum;
    } else {
        for (std::size_t i = 1; i < n; ++i) {
            l1 += 0.5 * (abs_err[i] + abs_err[i - 1]) *
                  (numeric.times[i] - numeric.times[i - 1]);
        }
    }
    return {l1, linf};
}

OrderFit convergence_order(const std::vector<std::pair<double, double>>& errors) {
    if (errors.size() < 2) {
        throw InvalidArgument("convergence_order: need at least two (h, e) pairs");
    }
    for (std::size_t k = 0; k < errors.size(); ++k) {
        if (!(errors[k].second > 0.0)) {
            throw InvalidArgument("convergence_order: error values must be positive");
        }
        if (k > 0 && !(errors[k].first < errors[k - 1].first)) {
            throw InvalidArgument("convergence_order: h must be strictly decreasing");
        }
    }
    OrderFit fit;
    fit.pairwise.reserve(errors.size() - 1);
    for (std::size_t k = 1; k < errors.size(); ++k) {
        fit.pairwise.push_back(std::log(errors[k - 1].second / errors[k].second) /
                               std::log(errors[k - 1].first / errors[k].first));
    }
    // least-squares slope of log e against log h
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(errors.size());
    for (const auto& [h, e] : errors) {
        const double x = std::log(h), y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.least_squares = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

}  // namespace fracms
