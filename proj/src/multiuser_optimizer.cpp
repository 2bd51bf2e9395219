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

#include "gma/multiuser_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gma/kernels.hpp"
#include "interval_search.hpp"

namespace gma
{
    GridSpec GridSpec::defaults(const ArrayConfig &cfg)
    {
        return {cfg.lambda / 16.0, 2, 8, 8};
    }

    void GridSpec::validate() const
    {
        if (!(step > 0.0) || !std::isfinite(step))
            throw std::invalid_argument("GridSpec: step must be positive");
        if (refine_levels < 0)
            throw std::invalid_argument("GridSpec: refine_levels must be non-negative");
        if (refine_factor < 2)
            throw std::invalid_argument("GridSpec: refine_factor must be at least 2");
        if (refine_candidates < 1)
            throw std::invalid_argument("GridSpec: refine_candidates must be at least 1");
    }

    PositionSearchResult grid_position_search(const Evaluator &ev, int eta, const GridSpec &grid,
                                              std::optional<double> incumbent)
    {
        grid.validate();
        const auto [lo, hi] = position_bounds(ev.config(), eta);
        if (lo > hi)
            throw std::invalid_argument("grid_position_search: no feasible position for this sparsity level");
        return detail::maximize_on_interval(
            lo, hi, grid, [&](const UniformGrid &g) { return kernels::parallel::sweep(ev, eta, g); },
            [&](std::span<const double> ys) { return kernels::parallel::evaluate(ev, eta, ys); }, incumbent);
    }

    SparsitySearchResult sparsity_search(const Evaluator &ev, double y)
    {
        std::vector<double> values;
        std::vector<int> etas;
        for (int eta = 1; eta <= ev.eta_max(); ++eta)
            if (is_feasible(ev.config(), y, eta))
            {
                etas.push_back(eta);
                values.push_back(ev.objective(y, eta));
            }
        if (etas.empty())
            throw std::invalid_argument("sparsity_search: no feasible sparsity level at this position");
        const std::size_t best = argmax_first(values, tie_tolerance);
        return {etas[best], values[best], std::int64_t(values.size())};
    }

    GmaSolution optimize_multiuser(const Evaluator &ev, const GridSpec &grid, const OptimizerSettings &settings,
                                   std::span<const Candidate> injected)
    {
        grid.validate();
        settings.validate();
        const auto &cfg = ev.config();
        GmaSolution sol;

        // With every power zero the sum rate is identically zero.
        const bool silent = !ev.single_user() && std::all_of(ev.powers().p_bar.begin(), ev.powers().p_bar.end(),
                                                             [](double p) { return p == 0.0; });

        // Best-so-far over the compact configuration and injected candidates.
        Candidate best{fpa_position(cfg), 1};
        double best_value = ev.objective(best.y, best.eta);
        ++sol.evals;
        for (const auto &c : injected)
        {
            const double v = ev.objective(c.y, c.eta);
            ++sol.evals;
            if (v > best_value)
            {
                best = c;
                best_value = v;
            }
        }

        // The alternating iterate starts at eta^(0): fixed, the largest feasible level, or the best
        // level after one position search at each.
        int eta = settings.eta_init > 0 ? std::min(settings.eta_init, largest_feasible_eta(cfg))
                                        : largest_feasible_eta(cfg);
        double y = position_bounds(cfg, eta).first;
        double current = 0.0;
        if (settings.eta_init == 0 && settings.scan_eta_init && !silent)
        {
            bool found = false;
            for (int e = 1; e <= largest_feasible_eta(cfg); ++e)
            {
                const PositionSearchResult pos = grid_position_search(ev, e, grid);
                sol.evals += pos.evals;
                if (!found || pos.objective > current + tie_tolerance * std::abs(current))
                {
                    found = true;
                    eta = e;
                    y = pos.y;
                    current = pos.objective;
                }
            }
        }
        else
        {
            current = ev.objective(y, eta);
            ++sol.evals;
        }
        if (current > best_value)
        {
            best = {y, eta};
            best_value = current;
        }
        sol.trace.push_back(ev.metric_from_objective(best_value));

        for (int r = 0; r < settings.max_alt_iters && !silent; ++r)
        {
            const double previous = current;

            const PositionSearchResult pos = grid_position_search(ev, eta, grid, y);
            sol.evals += pos.evals;
            if (pos.objective > current)
            {
                y = pos.y;
                current = pos.objective;
            }

            const SparsitySearchResult sp = sparsity_search(ev, y);
            sol.evals += sp.evals;
            if (sp.objective > current)
            {
                eta = sp.eta;
                current = sp.objective;
            }

            if (current > best_value)
            {
                best = {y, eta};
                best_value = current;
            }
            sol.trace.push_back(ev.metric_from_objective(best_value));
            sol.rounds = r + 1;
            if (fractional_increase(previous, current) < settings.epsilon)
                break;
        }

        sol.y_star = best.y;
        sol.eta_star = best.eta;
        sol.objective = ev.metric_from_objective(best_value);
        return sol;
    }
}
