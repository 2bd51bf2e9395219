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
#include <set>

#include "gma/kernels.hpp"
#include "gma/scenario.hpp"
#include "test_support.hpp"

using namespace gma;

TEST_CASE("defaults")
{
    const ScenarioParams p;
    CHECK(p.carrier_hz == 28e9);
    CHECK(p.users == 5);
    CHECK(p.center == std::array<double, 2>{100.0, 0.0});
    CHECK(p.radius == 50.0);
    CHECK(p.paths_per_user == 5);
    CHECK(p.scatterer_range == std::array<double, 2>{0.0, 75.0});
    CHECK(p.aoa_range[0] == -pi / 2);
    CHECK(p.aoa_range[1] == pi / 2);
    CHECK(p.p_tx_dbm == 10.0);
    CHECK(p.n0_dbm_hz == -174.0);
    CHECK(p.bandwidth_hz == 1e6);
    CHECK(p.rf_chains == 4);
    CHECK(p.elements == 128);

    const ArrayConfig a = p.array();
    CHECK(a.y_min == 0.0);
    CHECK(a.y_max == doctest::Approx(8.0 * 127 * a.d));
    CHECK(max_sparsity(a) == 42);
    CHECK(p.p_bar() == doctest::Approx(std::pow(10.0, 12.4)));

    ScenarioParams q;
    q.elements = 64;
    q.region_ratio = 4.0;
    q.region_reference_elements = 32;
    CHECK(q.array().y_max == doctest::Approx(4.0 * 31 * q.array().d));
}

TEST_CASE("validation")
{
    auto rejects = [](auto edit) {
        ScenarioParams p;
        edit(p);
        CHECK_THROWS_AS(sample_scenario(p), std::invalid_argument);
    };
    rejects([](ScenarioParams &p) { p.users = 0; });
    rejects([](ScenarioParams &p) { p.paths_per_user = 0; });
    rejects([](ScenarioParams &p) { p.radius = -1.0; });
    rejects([](ScenarioParams &p) { p.radius = 150.0; });
    rejects([](ScenarioParams &p) { p.scatterer_range = {10.0, 5.0}; });
    rejects([](ScenarioParams &p) { p.aoa_range = {0.5, 0.1}; });
    rejects([](ScenarioParams &p) { p.aoa_range = {-2.0, 0.1}; });
    rejects([](ScenarioParams &p) { p.bandwidth_hz = 0.0; });
    rejects([](ScenarioParams &p) { p.carrier_hz = -1.0; });
    rejects([](ScenarioParams &p) { p.elements = 3; });
    rejects([](ScenarioParams &p) { p.region_ratio = -1.0; });
    rejects([](ScenarioParams &p) { p.fpa_position = -1.0; });
}

TEST_CASE("sampling is deterministic per seed")
{
    ScenarioParams p;
    p.seed = 17;
    const Scenario a = sample_scenario(p), b = sample_scenario(p);
    REQUIRE(a.users.size() == b.users.size());
    for (std::size_t k = 0; k < a.users.size(); ++k)
        for (std::size_t l = 0; l < a.users[k].size(); ++l)
        {
            CHECK(a.users[k][l].gain == b.users[k][l].gain);
            CHECK(a.users[k][l].aoa == b.users[k][l].aoa);
        }
    CHECK(a.params_hash == b.params_hash);
    p.seed = 18;
    const Scenario c = sample_scenario(p);
    CHECK(c.users[0][0].aoa != a.users[0][0].aoa);
    CHECK(c.params_hash == a.params_hash);
    p.users = 4;
    CHECK(params_hash(p) != a.params_hash);
}

TEST_CASE("trial seeds")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i)
        seen.insert(trial_seed(1, i));
    CHECK(seen.size() == 10000);
    CHECK(trial_seed(1, 5) == trial_seed(1, 5));
    CHECK(trial_seed(1, 5) != trial_seed(2, 5));
}

TEST_CASE("degenerate disk puts every user at the center")
{
    ScenarioParams p;
    p.radius = 0.0;
    const Scenario sc = sample_scenario(p);
    for (const auto &g : sc.geometry)
        CHECK(g.position == p.center);
}

TEST_CASE("path gains follow the free-space model")
{
    ScenarioParams p;
    p.seed = 3;
    const Scenario sc = sample_scenario(p);
    for (std::size_t k = 0; k < sc.users.size(); ++k)
    {
        const double dist = std::hypot(sc.geometry[k].position[0], sc.geometry[k].position[1]);
        const double beta = std::pow(sc.array.lambda / (4 * pi * dist), 2);
        for (const auto &path : sc.users[k])
        {
            CHECK(std::norm(path.gain) == doctest::Approx(beta / p.paths_per_user).epsilon(1e-12));
            CHECK(path.aoa >= -pi / 2);
            CHECK(path.aoa <= pi / 2);
        }
        for (const auto &s : sc.geometry[k].scatterers)
        {
            const double r = std::hypot(s[0], s[1]);
            CHECK(r >= 0.0);
            CHECK(r <= 75.0 + 1e-9);
        }
    }
}

TEST_CASE("angle of arrival is uniform (Kolmogorov-Smirnov)")
{
    std::vector<double> aoas;
    for (std::uint64_t s = 0; aoas.size() < 10000; ++s)
    {
        ScenarioParams p;
        p.seed = trial_seed(77, s);
        for (const auto &u : sample_scenario(p).users)
            for (const auto &path : u)
                aoas.push_back(path.aoa);
    }
    std::sort(aoas.begin(), aoas.end());
    double dmax = 0.0;
    const double n = double(aoas.size());
    for (std::size_t i = 0; i < aoas.size(); ++i)
    {
        const double cdf = (aoas[i] + pi / 2) / pi;
        dmax = std::max({dmax, std::abs(cdf - double(i) / n), std::abs(double(i + 1) / n - cdf)});
    }
    // Critical value at the 0.1% level is 1.95 / sqrt(n).
    CHECK(dmax < 1.95 / std::sqrt(n));
}

TEST_CASE("disk sampling is area-uniform")
{
    double sum_r2 = 0.0;
    std::size_t count = 0;
    for (std::uint64_t s = 0; s < 4000; ++s)
    {
        ScenarioParams p;
        p.seed = trial_seed(78, s);
        for (const auto &g : sample_scenario(p).geometry)
        {
            const double dx = g.position[0] - p.center[0], dy = g.position[1] - p.center[1];
            sum_r2 += dx * dx + dy * dy;
            ++count;
        }
    }
    // Var(r^2) = R^4 / 12, so the standard error is about R^2 / sqrt(12 n).
    const double mean = sum_r2 / double(count);
    CHECK(std::abs(mean - 1250.0) < 5.0 * 2500.0 / std::sqrt(12.0 * double(count)));
}

TEST_CASE("linspace")
{
    const auto v = linspace(1.0, 2.0, 5);
    CHECK(v == std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0});
    CHECK(linspace(3.0, 4.0, 1) == std::vector<double>{3.0});
    CHECK(linspace(3.0, 4.0, 0).empty());
}

TEST_CASE("landscape")
{
    SUBCASE("single path is flat")
    {
        ScenarioParams p;
        p.users = 1;
        p.paths_per_user = 1;
        p.elements = 32;
        const Evaluator ev = sample_scenario(p).evaluator();
        const auto ys = linspace(ev.config().y_min, ev.config().y_max, 200);
        const std::vector<int> etas{1, 5, 10};
        const Landscape ls = landscape(ev, ys, etas);
        CHECK(ls.gap_in_db);
        CHECK(ls.gap < 1e-10);
    }

    SUBCASE("two paths: gap from an independent scan")
    {
        const ArrayConfig cfg = testing::small_array(4, 32);
        std::mt19937_64 rng(5);
        const PathSet paths = testing::two_paths(rng);
        const Evaluator ev({paths}, LinkPowers{{2.0}}, cfg);
        const auto ys = linspace(cfg.y_min, cfg.y_max, 300);
        std::vector<int> etas;
        for (int e = 1; e <= 10; ++e)
            etas.push_back(e);
        const Landscape ls = landscape(ev, ys, etas);
        double mx = 0.0, mn = 1e300;
        for (int eta : etas)
            for (double y : ys)
            {
                const double v = 2.0 * channel_vector(y, eta, paths, cfg).entries.squaredNorm();
                mx = std::max(mx, v);
                mn = std::min(mn, v);
            }
        CHECK(ls.gap == doctest::Approx(10 * std::log10(mx / mn)).epsilon(1e-9));
        CHECK(ls.at(3, 17) == ev.metric(ys[17], 4));
        CHECK(landscape(ev, ys, etas, false).values == ls.values);
    }

    SUBCASE("multi-user gap is in bits/s/Hz")
    {
        ScenarioParams p;
        p.elements = 32;
        const Evaluator ev = sample_scenario(p).evaluator();
        const auto ys = linspace(ev.config().y_min, ev.config().y_max, 50);
        const std::vector<int> etas{1, 10};
        const Landscape ls = landscape(ev, ys, etas);
        CHECK_FALSE(ls.gap_in_db);
        CHECK(ls.gap == ls.max - ls.min);
        CHECK(ls.max == *std::max_element(ls.values.begin(), ls.values.end()));
    }

    const ArrayConfig cfg = testing::small_array(4, 32);
    const Evaluator ev({PathSet{{cd(1, 0), 0.0}}}, LinkPowers{{1.0}}, cfg);
    CHECK_THROWS_AS(landscape(ev, std::vector<double>{}, std::vector<int>{1}), std::invalid_argument);
}
