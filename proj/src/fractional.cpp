#include "fracms/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracms {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument("FractionalOrder: alpha must lie in (0,1), got " +
                              std::to_string(alpha));
    }
}

L1Weights l1_weights(FractionalOrder alpha, std::size_t n) {
    const double e = 1.0 - alpha.value();
    std::vector<double> a(n + 1);
    a[0] = 1.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double dj = static_cast<double>(j);
        a[j] = std::pow(dj + 1.0, e) - std::pow(dj, e);
    }
    return L1Weights{alpha, std::move(a)};
}

CaputoHistory::CaputoHistory(double dt, double u0, L1Weights weights)
    : dt_(dt), u0_(u0), weights_(std::move(weights)) {
    if (!(dt > 0.0)) {
        throw InvalidArgument("CaputoHistory: dt must be positive");
    }
    diffs_.resize(weights_.size() > 0 ? weights_.size() - 1 : 0);
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
        diffs_[k] = weights_.a[k] - weights_.a[k + 1];
    }
    values_.reserve(weights_.size());
    buffer_.resize(std::max<std::size_t>(weights_.size(), 16));
    head_ = buffer_.size();
}

void CaputoHistory::push(double u) {
    values_.push_back(u);
    if (head_ == 0) {
        std::vector<double> bigger(2 * buffer_.size());
        std::copy(buffer_.begin(), buffer_.end(), bigger.begin() + buffer_.size());
        head_ = buffer_.size();
        buffer_ = std::move(bigger);
    }
    buffer_[--head_] = u;
}

double caputo_l1_advance(const CaputoHistory& history, double rhs) {
    const std::size_t i = history.steps() + 1;  // index of the value being computed
    const L1Weights& w = history.weights();
    if (w.size() < i) {
        throw InvalidArgument("caputo_l1_advance: weights cover " +
                              std::to_string(w.size() - 1) + " steps but step " +
                              std::to_string(i) + " was requested");
    }
    const double alpha = w.alpha.value();
    const double acc = std::tgamma(2.0 - alpha) * std::pow(history.dt(), alpha) * rhs +
                       w.a[i - 1] * history.u0();
    // sum_{j=1}^{i-1} (a_{i-j-1} - a_{i-j}) u_j with u reversed: the r-th
    // reversed element is u_{i-1-r}, so both ranges run forward. Four
    // accumulators keep the O(i) product out of the FMA latency chain.
    const double* rev = history.reversed_values();
    const double* d = history.weight_diffs().data();
    const std::size_t n = i - 1;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t r = 0;
    for (; r + 4 <= n; r += 4) {
        s0 += d[r] * rev[r];
        s1 += d[r + 1] * rev[r + 1];
        s2 += d[r + 2] * rev[r + 2];
        s3 += d[r + 3] * rev[r + 3];
    }
    for (; r < n; ++r) {
        s0 += d[r] * rev[r];
    }
    return acc + ((s0 + s1) + (s2 + s3));
}

double caputo_analytic(int p, FractionalOrder alpha, double t) {
    if (t < 0.0) {
        throw InvalidArgument("caputo_analytic: t must be nonnegative");
    }
    const double a = alpha.value();
    switch (p) {
        case 1:
            return std::pow(t, 1.0 - a) / std::tgamma(2.0 - a);
        case 2:
            return 2.0 / std::tgamma(3.0 - a) * std::pow(t, 2.0 - a);
        default:
            throw UnsupportedCase("caputo_analytic: monomial power " +
                                  std::to_string(p) + " not supported (use 1 or 2)");
    }
}

}  // namespace fracms
