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

#include <algorithm>
#include <cmath>
#include <random>

#include "gma/baselines.hpp"
#include "gma/kernels.hpp"
#include "gma/sca_optimizer.hpp"
#include "gma/scenario.hpp"
#include "test_support.hpp"

using namespace gma;

namespace
{
    // Sorted random layout with the minimum spacing, inside the span.
    MaLayout random_layout(std::mt19937_64 &rng, const ArrayConfig &cfg)
    {
        const auto [lo, hi] = ma_span(cfg);
        const double gap = ma_min_gap(cfg);
        const double slack = (hi - lo) - double(cfg.N - 1) * gap;
        std::uniform_real_distribution<double> u(0.0, slack);
        std::vector<double> cuts(std::size_t(cfg.N));
        for (auto &c : cuts)
            c = u(rng);
        std::sort(cuts.begin(), cuts.end());
        MaLayout layout{lo, {}};
        for (int n = 0; n < cfg.N; ++n)
            layout.offsets.push_back(cuts[std::size_t(n)] + double(n) * gap);
        return layout;
    }

    double layout_gain(const MaLayout &layout, const PathSet &paths, const ArrayConfig &cfg)
    {
        double gain = 0.0;
        for (double pos : layout.positions())
        {
            cd sum = 0.0;
            for (const auto &p : paths)
                sum += p.gain * std::exp(cd(0.0, 2.0 * pi / cfg.lambda * pos * std::sin(p.aoa)));
            gain += std::norm(sum);
        }
        return gain;
    }
}

TEST_CASE("fpa_metric")
{
    const ArrayConfig cfg = testing::small_array(4, 32);
    const Evaluator one({PathSet{{std::polar(1.0, 0.4), 0.8}}}, LinkPowers{{6.0}}, cfg);
    CHECK(fpa_metric(one) == doctest::Approx(24.0).epsilon(1e-12));

    ScenarioParams p;
    p.seed = 5150;
    const Scenario sc = sample_scenario(p);
    const Evaluator ev = sc.evaluator();
    CHECK(fpa_metric(ev) == ev.metric(fpa_position(sc.array), 1));
    CHECK(fpa_metric(ev) == doctest::Approx(sum_rate(sc.array.y_min, 1, sc.users, sc.powers, sc.array)).epsilon(1e-14));

    ScenarioParams q = p;
    q.fpa_position = 0.5 * sc.array.region_length();
    const Scenario moved = sample_scenario(q);
    CHECK(fpa_metric(moved.evaluator()) == moved.evaluator().metric(*q.fpa_position, 1));
}

TEST_CASE("layouts")
{
    const ArrayConfig cfg = testing::small_array(4, 32);
    const MaLayout l = layout_from_gma(0.01, 3, cfg);
    const auto pos = l.positions();
    REQUIRE(pos.size() == 4);
    for (int n = 0; n < 4; ++n)
        CHECK(pos[std::size_t(n)] == doctest::Approx(0.01 + 3 * n * cfg.d));
    CHECK(ma_span(cfg).first == cfg.y_min);
    CHECK(ma_span(cfg).second == doctest::Approx(cfg.y_max + 31 * cfg.d));
    CHECK(ma_min_gap(cfg) == cfg.lambda / 2);

    // Every group configuration is a feasible independent layout.
    std::mt19937_64 rng(90);
    for (int t = 0; t < 500; ++t)
    {
        const int eta = 1 + int(rng() % std::uint64_t(max_sparsity(cfg)));
        const double y = std::uniform_real_distribution<double>(cfg.y_min, cfg.y_max)(rng);
        CHECK(layout_feasible(layout_from_gma(y, eta, cfg), cfg));
    }
    MaLayout tight = l;
    tight.offsets[2] = tight.offsets[1] + 0.4 * cfg.lambda;
    CHECK_FALSE(layout_feasible(tight, cfg));
    MaLayout outside = l;
    outside.anchor = -1.0;
    CHECK_FALSE(layout_feasible(outside, cfg));
}

TEST_CASE("ma_optimize")
{
    const OptimizerSettings settings;

    SUBCASE("single path is flat")
    {
        const ArrayConfig cfg = testing::small_array(4, 32);
        const Evaluator ev({PathSet{{std::polar(0.6, 0.4), 0.8}}}, LinkPowers{{2.0}}, cfg);
        const MaResult r = ma_optimize(ev, GridSpec::defaults(cfg), settings);
        CHECK(r.metric == doctest::Approx(2.0 * 0.36 * 4).epsilon(1e-12));
        CHECK(layout_feasible(r.layout, cfg));
    }

    SUBCASE("ascent from a group solution")
    {
        for (std::uint64_t i = 0; i < 4; ++i)
        {
            ScenarioParams p;
            p.users = i % 2 ? 3 : 1;
            p.elements = 32;
            p.region_ratio = 2.0;
            p.seed = 60 + i;
            const Scenario sc = sample_scenario(p);
            const Evaluator ev = sc.evaluator();
            const GridSpec grid = GridSpec::defaults(sc.array);
            const GmaSolution g = ev.single_user() ? optimize_single_user(ev, settings)
                                                   : optimize_multiuser(ev, grid, settings);
            const MaLayout init = layout_from_gma(g.y_star, g.eta_star, sc.array);
            CHECK(ev.metric_from_objective(ev.objective_at_offsets(init.anchor, init.offsets)) == g.objective);
            const MaResult r = ma_optimize(ev, grid, settings, init);
            CHECK(r.metric >= g.objective);
            CHECK(layout_feasible(r.layout, sc.array));
            CHECK(std::is_sorted(r.trace.begin(), r.trace.end()));
            CHECK(r.trace.front() == g.objective);
            CHECK(r.metric == ev.metric_from_objective(ev.objective_at_offsets(r.layout.anchor, r.layout.offsets)));
            if (ev.single_user())
                CHECK(r.objective == doctest::Approx(layout_gain(r.layout, sc.users[0], sc.array)).epsilon(1e-9));
        }
    }

    SUBCASE("two-path instance against random restarts")
    {
        const ArrayConfig cfg = testing::small_array(4, 16);
        std::mt19937_64 rng(91);
        const Evaluator ev({testing::two_paths(rng)}, LinkPowers{{1.0}}, cfg);
        const GridSpec grid = GridSpec::defaults(cfg);
        const MaResult r = ma_optimize(ev, grid, settings);
        double restarts = 0.0;
        for (int t = 0; t < 20; ++t)
            restarts = std::max(restarts, ma_optimize(ev, grid, settings, random_layout(rng, cfg)).metric);
        CHECK(r.metric >= 0.99 * restarts);
    }

    SUBCASE("errors")
    {
        ArrayConfig cfg = testing::small_array(4, 4);
        cfg.d = cfg.lambda / 8;
        cfg.y_max = cfg.y_min;
        const Evaluator ev({PathSet{{cd(1, 0), 0.1}}}, LinkPowers{{1.0}}, cfg);
        CHECK_THROWS_AS(ma_optimize(ev, GridSpec::defaults(cfg), settings), std::invalid_argument);

        const ArrayConfig ok = testing::small_array(4, 32);
        const Evaluator ev2({PathSet{{cd(1, 0), 0.1}}}, LinkPowers{{1.0}}, ok);
        MaLayout bad = layout_from_gma(0.0, 1, ok);
        bad.offsets[1] = bad.offsets[0];
        CHECK_THROWS_AS(ma_optimize(ev2, GridSpec::defaults(ok), settings, bad), std::invalid_argument);
    }
}

TEST_CASE("exhaustive_oracle")
{
    SUBCASE("singleton domain")
    {
        ArrayConfig cfg = testing::small_array(4, 4);
        cfg.y_max = cfg.y_min;
        std::mt19937_64 rng(92);
        const Evaluator ev({testing::two_paths(rng)}, LinkPowers{{1.0}}, cfg);
        const OracleResult o = exhaustive_oracle(ev, cfg.lambda / 1000);
        CHECK(o.evals == 1);
        CHECK(o.y == cfg.y_min);
        CHECK(o.eta == 1);
        CHECK(o.metric == ev.metric(cfg.y_min, 1));
    }

    SUBCASE("dominance over sampled points")
    {
        const ArrayConfig cfg = testing::small_array(4, 16);
        std::mt19937_64 rng(93);
        const Evaluator ev({testing::two_paths(rng)}, LinkPowers{{1.0}}, cfg);
        const double step = cfg.lambda / 1000;
        const OracleResult o = exhaustive_oracle(ev, step);
        CHECK(o.metric == ev.metric(o.y, o.eta));
        const UniformGrid grid = make_grid(cfg.y_min, cfg.y_max, step);
        for (int t = 0; t < 1000; ++t)
        {
            const int eta = 1 + int(rng() % std::uint64_t(ev.eta_max()));
            const double on_grid = grid.at(rng() % grid.count);
            CHECK(o.metric >= ev.metric(on_grid, eta) * (1 - 1e-12));
            const double anywhere = std::uniform_real_distribution<double>(cfg.y_min, cfg.y_max)(rng);
            CHECK(o.metric >= ev.metric(anywhere, eta) * (1 - 1e-4));
        }
    }

    SUBCASE("respects the aperture flag")
    {
        ArrayConfig cfg = testing::small_array(4, 16);
        cfg.constrain_aperture = true;
        std::mt19937_64 rng(94);
        const Evaluator ev({testing::random_paths(rng, 3)}, LinkPowers{{1.0}}, cfg);
        const OracleResult o = exhaustive_oracle(ev, cfg.lambda / 100);
        CHECK(is_feasible(cfg, o.y, o.eta));
    }

    CHECK_THROWS_AS(exhaustive_oracle(Evaluator({PathSet{{cd(1, 0), 0.0}}}, LinkPowers{{1.0}},
                                                testing::small_array(4, 8)),
                                      0.0),
                    std::invalid_argument);
}
