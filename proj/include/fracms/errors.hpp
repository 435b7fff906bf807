#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracms {

/// Base class for all solver errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration, malformed input, or an internal structural
/// inconsistency (e.g. a history longer than its weight table).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An unsupported analytic case (e.g. a monomial power outside {1,2}).
class UnsupportedCase : public Error {
public:
    using Error::Error;
};

/// A root find or shooting loop failed to reach its tolerance.
/// Carries the last iterate and residual so callers can diagnose
/// weak contraction (g_min near zero) or genuinely divergent fields.
class NonconvergenceError : public Error {
public:
    NonconvergenceError(const std::string& what, double last_value, double residual,
                        long iterations, std::vector<double> residual_history = {})
        : Error(what),
          last_value_(last_value),
          residual_(residual),
          iterations_(iterations),
          residual_history_(std::move(residual_history)) {}

    double last_value() const { return last_value_; }
    double residual() const { return residual_; }
    long iterations() const { return iterations_; }
    const std::vector<double>& residual_history() const { return residual_history_; }

private:
    double last_value_;
    double residual_;
    long iterations_;
    std::vector<double> residual_history_;
};

/// Non-finite state detected during a solve; names the offending step.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, long step_index)
        : Error(what), step_index_(step_index) {}

    long step_index() const { return step_index_; }

private:
    long step_index_;
};

/// assumption_probe hit a non-finite sample; carries the point.
class ProbeError : public Error {
public:
    ProbeError(const std::string& what, double t, double u, double v)
        : Error(what), t_(t), u_(u), v_(v) {}

    double t() const { return t_; }
    double u() const { return u_; }
    double v() const { return v_; }

private:
    double t_, u_, v_;
};

}  // namespace fracms
