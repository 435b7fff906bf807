#pragma once

#include <cstddef>
#include <vector>

#include "fracms/errors.hpp"

namespace fracms {

/// Order of a Caputo derivative, restricted to the open interval (0,1).
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);

    double value() const { return alpha_; }

private:
    double alpha_;
};

/// L1 quadrature weights a_0..a_n for the Caputo derivative:
///   a_0 = 1,  a_j = (j+1)^{1-alpha} - j^{1-alpha}.
/// Strictly decreasing and positive for alpha in (0,1).
struct L1Weights {
    FractionalOrder alpha;
    std::vector<double> a;

    std::size_t size() const { return a.size(); }
};

L1Weights l1_weights(FractionalOrder alpha, std::size_t n);

/// The growing record of accepted slow-variable values on a uniform grid,
/// together with the weight table needed to advance the L1 update.
/// Keeps a reversed mirror of the values, filled from the back of a
/// preallocated buffer, so the O(i) history product runs over two
/// forward-contiguous ranges.
class CaputoHistory {
public:
    CaputoHistory(double dt, double u0, L1Weights weights);

    void push(double u);

    double dt() const { return dt_; }
    double u0() const { return u0_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t steps() const { return values_.size(); }
    const L1Weights& weights() const { return weights_; }

    /// Pointer to u_i..u_1 (most recent first), contiguous.
    const double* reversed_values() const { return buffer_.data() + head_; }

    /// Precomputed a_k - a_{k+1}, the convolution kernel of the history sum.
    const std::vector<double>& weight_diffs() const { return diffs_; }

private:
    double dt_;
    double u0_;
    L1Weights weights_;
    std::vector<double> diffs_;
    std::vector<double> values_;  // u_1 .. u_i
    std::vector<double> buffer_;  // reversed mirror, grows toward the front
    std::size_t head_;
};

/// One L1 step of the Caputo equation D^alpha u = rhs on a uniform grid:
///   u_i = Gamma(2-alpha) dt^alpha rhs
///       + sum_{j=1}^{i-1} (a_{i-j-1} - a_{i-j}) u_j + a_{i-1} u_0,
/// where rhs is the already-scaled right-hand side at the step's data
/// point. Does not mutate the history; the caller pushes the result.
double caputo_l1_advance(const CaputoHistory& history, double rhs);

/// Caputo derivative of t^p for p in {1,2}:
///   Gamma(p+1)/Gamma(p+1-alpha) * t^{p-alpha}.
/// Test oracle for the exact slow solutions of the catalog problems.
double caputo_analytic(int p, FractionalOrder alpha, double t);

}  // namespace fracms
