// SPDX-License-Identifier: Apache-2.0
//
// gma-array: group movable antenna position and sparsity optimization
// Copyright (C) 2026 The gma-array authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <cmath>
#include <random>

#include "gma/baselines.hpp"
#include "gma/kernels.hpp"
#include "gma/scenario.hpp"

using namespace gma;

namespace
{
    Evaluator scenario_evaluator(int users, int paths, std::uint64_t seed)
    {
        ScenarioParams p;
        p.users = users;
        p.paths_per_user = paths;
        p.elements = 32;
        p.region_ratio = 2.0;
        p.seed = seed;
        return sample_scenario(p).evaluator();
    }
}

TEST_CASE("make_grid")
{
    const UniformGrid g = make_grid(0.0, 1.0, 0.25);
    CHECK(g.count == 5);
    CHECK(g.at(4) == 1.0);
    const UniformGrid h = make_grid(0.0, 1.0, 0.3);
    CHECK(h.count == 4);
    CHECK(h.at(3) <= 1.0);
    CHECK(make_grid(2.0, 2.0, 0.1).count == 1);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 0.0, 0.1), std::invalid_argument);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 1000; ++t)
    {
        const double lo = u(rng), hi = lo + 3 * u(rng), step = 1e-3 + u(rng) / 10;
        const UniformGrid grid = make_grid(lo, hi, step);
        CHECK(grid.count >= 1);
        CHECK(grid.at(grid.count - 1) <= hi);
        CHECK(grid.at(grid.count - 1) + step > hi - 1e-12);
    }
}

TEST_CASE("argmax_first")
{
    const std::vector<double> v{1.0, 3.0, 2.0, 3.0};
    CHECK(argmax_first(v) == 1);
    const std::vector<double> w{1.0, 3.0 * (1 - 1e-14), 3.0};
    CHECK(argmax_first(w) == 2);
    CHECK(argmax_first(w, 1e-12) == 1);
    CHECK_THROWS_AS(argmax_first(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("serial and parallel kernels agree bit for bit")
{
    for (int users : {1, 3})
    {
        const Evaluator ev = scenario_evaluator(users, 4, 41 + std::uint64_t(users));
        const ArrayConfig &a = ev.config();
        const UniformGrid grid = make_grid(a.y_min, a.y_max, a.lambda / 37.0);
        for (int eta : {1, 4, ev.eta_max()})
            CHECK(kernels::serial::sweep(ev, eta, grid) == kernels::parallel::sweep(ev, eta, grid));

        const auto ys = linspace(a.y_min, a.y_max, 301);
        CHECK(kernels::serial::evaluate(ev, 3, ys) == kernels::parallel::evaluate(ev, 3, ys));
        const std::vector<int> etas{1, 2, 7};
        CHECK(kernels::serial::landscape(ev, ys, etas) == kernels::parallel::landscape(ev, ys, etas));

        const MaLayout layout = layout_from_gma(a.y_min, 2, a);
        const auto moves = linspace(a.y_min + 10 * a.d, a.y_max, 257);
        CHECK(kernels::serial::element_moves(ev, layout.anchor, layout.offsets, 3, moves) ==
              kernels::parallel::element_moves(ev, layout.anchor, layout.offsets, 3, moves));
    }
}

TEST_CASE("kernels match direct evaluation")
{
    for (int users : {1, 2})
        for (int paths : {2, 5, 7})
        {
            const Evaluator ev = scenario_evaluator(users, paths, 50 + std::uint64_t(paths));
            const ArrayConfig &a = ev.config();
            const UniformGrid grid = make_grid(a.y_min, a.y_max, a.lambda / 11.0);
            const auto sweep = kernels::parallel::sweep(ev, 5, grid);
            for (std::size_t i = 0; i < grid.count; ++i)
            {
                const double direct = ev.objective(grid.at(i), 5);
                CHECK(std::abs(sweep[i] - direct) <= 1e-10 * std::abs(direct) + 1e-300);
            }

            const auto ys = linspace(a.y_min, a.y_max, 53);
            const auto vals = kernels::parallel::evaluate(ev, 2, ys);
            const std::vector<int> etas{2};
            const auto land = kernels::parallel::landscape(ev, ys, etas);
            for (std::size_t i = 0; i < ys.size(); ++i)
            {
                CHECK(vals[i] == ev.objective(ys[i], 2));
                CHECK(land[i] == ev.metric(ys[i], 2));
            }

            const MaLayout layout = layout_from_gma(a.y_min, 1, a);
            const std::vector<double> moves{a.y_min + 5 * a.d, a.y_min + 9.3 * a.d};
            const auto em = kernels::serial::element_moves(ev, layout.anchor, layout.offsets, 3, moves);
            for (std::size_t i = 0; i < moves.size(); ++i)
            {
                auto off = layout.offsets;
                off[3] = moves[i] - layout.anchor;
                CHECK(em[i] == ev.objective_at_offsets(layout.anchor, off));
            }
        }
}

TEST_CASE("kernels reject infeasible input before evaluating")
{
    const Evaluator ev = scenario_evaluator(2, 3, 60);
    const ArrayConfig &a = ev.config();
    const std::vector<double> bad{a.y_min, a.y_max + 1.0};
    CHECK_THROWS_AS(kernels::parallel::evaluate(ev, 1, bad), std::invalid_argument);
    const std::vector<int> etas{ev.eta_max() + 1};
    const std::vector<double> ok{a.y_min};
    CHECK_THROWS_AS(kernels::parallel::landscape(ev, ok, etas), std::invalid_argument);
    CHECK_THROWS_AS(kernels::parallel::sweep(ev, 0, make_grid(a.y_min, a.y_max, a.lambda)), std::invalid_argument);
    CHECK_THROWS_AS(kernels::parallel::sweep(ev, 1, make_grid(a.y_min, a.y_max + 1.0, a.lambda)),
                    std::invalid_argument);
    CHECK_THROWS_AS(kernels::parallel::element_moves(ev, 0.0, std::vector<double>{0.0}, 3, ok), std::invalid_argument);
}
