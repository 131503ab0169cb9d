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

#include "qcp/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qcp/circuit.hpp"

namespace qcp {

namespace {
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
}  // namespace

OptimizeResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& x0, const NelderMeadOptions& options) {
    const std::size_t dim = x0.size();
    if (dim < 1) throw Error("nelder_mead needs at least one dimension");
    if (options.initial_step <= 0.0 || options.max_evals < 1 ||
        options.xtol <= 0.0 || options.ftol <= 0.0)
        throw Error("nelder_mead options must be positive");

    OptimizeResult result;
    auto eval = [&](const std::vector<double>& x) {
        double f = objective(x);
        if (!std::isfinite(f))
            throw Error("objective returned a non-finite value");
        ++result.n_evals;
        return f;
    };

    // Simplex of dim+1 vertices: x0 and x0 stepped along each axis. The
    // initial simplex is always evaluated in full, even when max_evals
    // is smaller than dim+1.
    std::vector<std::vector<double>> xs(dim + 1, x0);
    std::vector<double> fs(dim + 1);
    for (std::size_t i = 1; i <= dim; ++i) xs[i][i - 1] += options.initial_step;
    for (std::size_t i = 0; i <= dim; ++i) fs[i] = eval(xs[i]);

    auto order = [&]() {
        std::vector<std::size_t> idx(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        std::vector<std::vector<double>> xs2(dim + 1);
        std::vector<double> fs2(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) {
            xs2[i] = xs[idx[i]];
            fs2[i] = fs[idx[i]];
        }
        xs.swap(xs2);
        fs.swap(fs2);
    };

    order();
    result.trace.emplace_back(xs[0], fs[0]);

    while (result.n_evals < options.max_evals) {
        // Convergence: simplex collapsed in x AND in cost. The cost test
        // only counts when the spread still clears the noise floor;
        // below it the spread carries no signal.
        double x_spread = 0.0;
        for (std::size_t i = 1; i <= dim; ++i)
            for (std::size_t d = 0; d < dim; ++d)
                x_spread = std::max(x_spread, std::abs(xs[i][d] - xs[0][d]));
        const double f_spread = fs[dim] - fs[0];
        if (x_spread < options.xtol && f_spread < options.ftol &&
            f_spread >= options.noise_floor) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += xs[i][d] / dim;

        auto along = [&](double coeff) {
            std::vector<double> x(dim);
            for (std::size_t d = 0; d < dim; ++d)
                x[d] = centroid[d] + coeff * (centroid[d] - xs[dim][d]);
            return x;
        };

        std::vector<double> reflected = along(kReflect);
        double f_reflected = eval(reflected);

        if (f_reflected < fs[0]) {
            if (result.n_evals < options.max_evals) {
                std::vector<double> expanded = along(kExpand);
                double f_expanded = eval(expanded);
                if (f_expanded < f_reflected) {
                    xs[dim] = std::move(expanded);
                    fs[dim] = f_expanded;
                } else {
                    xs[dim] = std::move(reflected);
                    fs[dim] = f_reflected;
                }
            } else {
                xs[dim] = std::move(reflected);
                fs[dim] = f_reflected;
            }
        } else if (f_reflected < fs[dim - 1]) {
            xs[dim] = std::move(reflected);
            fs[dim] = f_reflected;
        } else if (result.n_evals < options.max_evals) {
            // Contract outside toward the reflection when it improved on
            // the worst vertex, otherwise inside toward the worst.
            const bool outside = f_reflected < fs[dim];
            std::vector<double> contracted = along(outside ? kContract : -kContract);
            double f_contracted = eval(contracted);
            if (f_contracted < (outside ? f_reflected : fs[dim])) {
                xs[dim] = std::move(contracted);
                fs[dim] = f_contracted;
            } else {
                // Shrink everything toward the best vertex.
                for (std::size_t i = 1; i <= dim && result.n_evals < options.max_evals;
                     ++i) {
                    for (std::size_t d = 0; d < dim; ++d)
                        xs[i][d] = xs[0][d] + kShrink * (xs[i][d] - xs[0][d]);
                    fs[i] = eval(xs[i]);
                }
            }
        }
        order();
        result.trace.emplace_back(xs[0], fs[0]);
    }

    result.best_params = xs[0];
    result.best_cost = fs[0];
    return result;
}

SweepResult grid_sweep(const SweepObjective& objective, double lo, double hi,
                       int points, bool parallel) {
    if (points < 2) throw Error("grid_sweep needs at least two points");
    if (!(lo < hi)) throw Error("grid_sweep needs lo < hi");

    SweepResult result;
    result.grid.resize(points);
    result.costs.assign(points, 0.0);
    result.stderrs.assign(points, 0.0);
    for (int i = 0; i < points; ++i)
        result.grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(points - 1);

    auto eval_range = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            auto [cost, err] = objective(result.grid[i]);
            result.costs[i] = cost;
            result.stderrs[i] = err;
        }
    };

    if (!parallel) {
        eval_range(0, points);
        return result;
    }
    const int workers = std::max(
        1, std::min<int>(points, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const int begin = points * w / workers;
        const int end = points * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                eval_range(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    return result;
}

}  // namespace qcp
