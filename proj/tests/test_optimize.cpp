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

#include <doctest.h>

#include <cmath>

#include "qcp/optimize.hpp"
#include "qcp/rng.hpp"

#include "test_helpers.hpp"

using namespace qcp;
using qcp::testing::kPi;

TEST_SUITE_BEGIN("optimize");

TEST_CASE("nelder_mead minimizes a 1-D quadratic") {
    auto f = [](const std::vector<double>& x) {
        return (x[0] - 2.0) * (x[0] - 2.0);
    };
    NelderMeadOptions options;
    options.max_evals = 200;
    options.xtol = 1e-6;
    options.ftol = 1e-12;
    OptimizeResult r = nelder_mead(f, {0.0}, options);
    CHECK(std::abs(r.best_params[0] - 2.0) < 1e-4);
    CHECK(r.converged);
    CHECK(r.n_evals <= 200);
}

TEST_CASE("nelder_mead minimizes an anisotropic 2-D quadratic") {
    int calls = 0;
    auto f = [&calls](const std::vector<double>& x) {
        ++calls;
        return x[0] * x[0] + 10.0 * x[1] * x[1];
    };
    NelderMeadOptions options;
    options.max_evals = 400;
    options.xtol = 1e-7;
    options.ftol = 1e-10;
    OptimizeResult r = nelder_mead(f, {3.0, 3.0}, options);
    CHECK(r.best_cost < 1e-6);
    CHECK(r.n_evals <= 400);
    CHECK(r.n_evals == calls);
}

TEST_CASE("nelder_mead on the analytic autoencoder landscape") {
    auto f = [](const std::vector<double>& x) {
        double c = std::cos(x[0] / 2.0);
        return -c * c;
    };
    NelderMeadOptions options;
    options.initial_step = 0.5;
    options.max_evals = 100;
    options.xtol = 1e-6;
    options.ftol = 1e-10;
    OptimizeResult r = nelder_mead(f, {kPi / 1.2}, options);
    CHECK(std::abs(r.best_params[0]) < 0.01);
    CHECK(r.best_cost == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("trace is the monotone best-so-far sequence") {
    Rng rng(3);
    auto noisy = [&rng](const std::vector<double>& x) {
        double c = std::cos(x[0] / 2.0);
        return -c * c + 0.002 * (rng.uniform01() - 0.5);
    };
    NelderMeadOptions options;
    options.max_evals = 60;
    options.noise_floor = 0.002;
    OptimizeResult r = nelder_mead(noisy, {2.0}, options);
    for (std::size_t i = 1; i < r.trace.size(); ++i)
        CHECK(r.trace[i].second <= r.trace[i - 1].second);
    double min_trace = r.trace.front().second;
    for (const auto& [params, cost] : r.trace)
        min_trace = std::min(min_trace, cost);
    CHECK(r.best_cost == min_trace);
}

TEST_CASE("noise floor suppresses false ftol convergence") {
    // A flat objective with tiny noise: without the floor this would
    // converge instantly by ftol; with the floor it must run out the
    // evaluation budget instead.
    Rng rng(17);
    auto flat = [&rng](const std::vector<double>&) {
        return 1.0 + 1e-9 * rng.uniform01();
    };
    NelderMeadOptions options;
    options.max_evals = 37;
    options.xtol = 10.0;  // wide open: only the cost test matters
    options.ftol = 1e-3;
    options.noise_floor = 1e-6;
    OptimizeResult r = nelder_mead(flat, {0.0}, options);
    CHECK_FALSE(r.converged);
    CHECK(r.n_evals == 37);

    options.noise_floor = 0.0;
    OptimizeResult eager = nelder_mead(flat, {0.0}, options);
    CHECK(eager.converged);
    CHECK(eager.n_evals < 37);
}

TEST_CASE("deterministic given a deterministic objective") {
    auto f = [](const std::vector<double>& x) {
        return std::sin(3 * x[0]) + x[0] * x[0];
    };
    OptimizeResult a = nelder_mead(f, {1.0});
    OptimizeResult b = nelder_mead(f, {1.0});
    CHECK(a.best_params == b.best_params);
    CHECK(a.best_cost == b.best_cost);
    CHECK(a.n_evals == b.n_evals);
}

TEST_CASE("non-finite objective value is an error") {
    auto bad = [](const std::vector<double>& x) {
        return x[0] > 0.1 ? std::nan("") : 0.0;
    };
    CHECK_THROWS_WITH_AS(nelder_mead(bad, {0.0}),
                         doctest::Contains("non-finite"), Error);
}

TEST_CASE("nelder_mead option validation") {
    auto f = [](const std::vector<double>& x) { return x[0] * x[0]; };
    NelderMeadOptions bad;
    bad.initial_step = 0.0;
    CHECK_THROWS_AS(nelder_mead(f, {1.0}, bad), Error);
    CHECK_THROWS_AS(nelder_mead(f, {}, {}), Error);
}

TEST_CASE("grid_sweep spacing and endpoints") {
    auto f = [](double x) { return std::pair<double, double>(x * x, 0.1); };
    SweepResult two = grid_sweep(f, -1.0, 3.0, 2);
    CHECK(two.grid == std::vector<double>{-1.0, 3.0});

    SweepResult fifty = grid_sweep(f, -kPi, kPi, 50);
    CHECK(fifty.grid.front() == -kPi);
    CHECK(fifty.grid.back() == kPi);
    CHECK(fifty.grid[1] - fifty.grid[0] ==
          doctest::Approx(2 * kPi / 49).epsilon(1e-15));
    CHECK(fifty.costs.size() == 50);
    CHECK(fifty.stderrs == std::vector<double>(50, 0.1));
    for (std::size_t i = 1; i < fifty.grid.size(); ++i)
        CHECK(fifty.grid[i] > fifty.grid[i - 1]);
}

TEST_CASE("grid_sweep on the analytic landscape") {
    auto f = [](double theta) {
        double c = std::cos(theta / 2.0);
        return std::pair<double, double>(-c * c, 0.0);
    };
    SweepResult sweep = grid_sweep(f, -kPi, kPi, 50);
    double min_cost = 1.0, max_cost = -1.0;
    std::size_t argmin = 0;
    for (std::size_t i = 0; i < sweep.costs.size(); ++i) {
        if (sweep.costs[i] < min_cost) {
            min_cost = sweep.costs[i];
            argmin = i;
        }
        max_cost = std::max(max_cost, sweep.costs[i]);
    }
    // Endpoints reach 0; the minimum sits at the grid point nearest 0.
    CHECK(max_cost == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(sweep.grid[argmin]) <= kPi / 49 + 1e-12);
    CHECK(min_cost == doctest::Approx(-std::cos(sweep.grid[argmin] / 2) *
                                      std::cos(sweep.grid[argmin] / 2)));
}

TEST_CASE("grid_sweep records non-finite costs and continues") {
    auto f = [](double x) {
        return std::pair<double, double>(
            x == 0.0 ? std::numeric_limits<double>::infinity() : 1.0, 0.0);
    };
    SweepResult sweep = grid_sweep(f, -1.0, 1.0, 3);
    CHECK(std::isinf(sweep.costs[1]));
    CHECK(sweep.costs[0] == 1.0);
    CHECK(sweep.costs[2] == 1.0);
}

TEST_CASE("parallel sweep equals serial sweep") {
    auto f = [](double x) {
        return std::pair<double, double>(std::sin(x) * x, std::abs(x));
    };
    SweepResult serial = grid_sweep(f, -2.0, 2.0, 33, false);
    SweepResult parallel = grid_sweep(f, -2.0, 2.0, 33, true);
    CHECK(serial.grid == parallel.grid);
    CHECK(serial.costs == parallel.costs);
    CHECK(serial.stderrs == parallel.stderrs);
}

TEST_CASE("grid_sweep argument validation") {
    auto f = [](double) { return std::pair<double, double>(0.0, 0.0); };
    CHECK_THROWS_AS(grid_sweep(f, 0.0, 1.0, 1), Error);
    CHECK_THROWS_AS(grid_sweep(f, 1.0, 1.0, 5), Error);
}

TEST_SUITE_END();
