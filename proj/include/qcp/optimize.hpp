// Copyright 2026 The qcp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace qcp {

struct NelderMeadOptions {
    double initial_step = 0.5;
    int max_evals = 200;
    double xtol = 1e-6;
    double ftol = 1e-8;
    /// Estimated objective noise level. The ftol stop is only trusted
    /// when the simplex cost spread also clears this floor; a spread
    /// below it is indistinguishable from shot noise, so the search
    /// keeps going until max_evals instead of declaring convergence.
    double noise_floor = 0.0;
};

struct OptimizeResult {
    std::vector<double> best_params;
    double best_cost = 0.0;
    int n_evals = 0;
    /// Best simplex vertex after each accepted iteration.
    std::vector<std::pair<std::vector<double>, double>> trace;
    bool converged = false;
};

/// Nelder-Mead downhill simplex with the standard coefficients
/// (reflect 1, expand 2, contract 0.5, shrink 0.5). One-dimensional
/// problems run with a two-point simplex (x0, x0 + initial_step).
/// Every objective call is counted against max_evals.
OptimizeResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& x0, const NelderMeadOptions& options = {});

struct SweepResult {
    std::vector<double> grid;
    std::vector<double> costs;
    std::vector<double> stderrs;  // per-point binomial standard error
};

using SweepObjective = std::function<std::pair<double, double>(double)>;

/// Evaluates `objective` at `points` equally spaced values on [lo, hi],
/// endpoints included. Non-finite costs are recorded and the sweep
/// continues. With parallel=true points are evaluated concurrently; the
/// objective must be safe to call from multiple threads.
SweepResult grid_sweep(const SweepObjective& objective, double lo, double hi,
                       int points, bool parallel = false);

}  // namespace qcp
