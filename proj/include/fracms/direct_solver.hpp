#pragma once

#include <tuple>

#include "fracms/analysis.hpp"
#include "fracms/fast_dynamics.hpp"
#include "fracms/problems.hpp"

namespace fracms {

/// Configuration of the fully resolved reference scheme: both variables
/// co-evolve on the micro grid over the whole horizon.
struct DirectConfig {
    double dt = 1.0 / 32.0;
    StepScheme scheme;
    double horizon = 0.0;  // 0 means the problem's horizon
    long record_stride = 32;
};

struct DirectResult {
    Trajectory u;
    Trajectory v;
    RunReport report;
};

/// Algorithm: for i = 1..N, first the L1 update of the slow variable with
/// right-hand side eps*R(t_{i-1}, u_{i-1}, v_{i-1}), then the fast step
/// at the fresh slow value. Cost is O(N^2) in the history sum.
DirectResult direct_solve(const CoupledProblem& problem, const DirectConfig& config);

}  // namespace fracms
