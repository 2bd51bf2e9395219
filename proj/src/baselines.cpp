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

#include "gma/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "gma/kernels.hpp"
#include "interval_search.hpp"

namespace gma
{
    double fpa_metric(const Evaluator &ev)
    {
        return ev.metric(fpa_position(ev.config()), 1);
    }

    std::vector<double> MaLayout::positions() const
    {
        std::vector<double> p(offsets.size());
        for (std::size_t n = 0; n < offsets.size(); ++n)
            p[n] = anchor + offsets[n];
        return p;
    }

    MaLayout layout_from_gma(double y, int eta, const ArrayConfig &cfg)
    {
        MaLayout layout{y, std::vector<double>(std::size_t(cfg.N))};
        for (int n = 0; n < cfg.N; ++n)
            layout.offsets[std::size_t(n)] = element_offset(n, eta, cfg.d);
        return layout;
    }

    std::pair<double, double> ma_span(const ArrayConfig &cfg)
    {
        return {cfg.y_min, cfg.y_max + cfg.physical_length()};
    }

    double ma_min_gap(const ArrayConfig &cfg)
    {
        return cfg.lambda / 2.0;
    }

    bool layout_feasible(const MaLayout &layout, const ArrayConfig &cfg, double tol)
    {
        if (layout.offsets.size() != std::size_t(cfg.N))
            return false;
        const auto p = layout.positions();
        const auto [lo, hi] = ma_span(cfg);
        const double gap = ma_min_gap(cfg);
        for (std::size_t n = 0; n < p.size(); ++n)
        {
            if (p[n] < lo - tol || p[n] > hi + tol)
                return false;
            if (n > 0 && p[n] - p[n - 1] < gap - tol)
                return false;
        }
        return true;
    }

    MaResult ma_optimize(const Evaluator &ev, const GridSpec &grid, const OptimizerSettings &settings,
                         std::optional<MaLayout> init)
    {
        grid.validate();
        settings.validate();
        const auto &cfg = ev.config();
        const auto [span_lo, span_hi] = ma_span(cfg);
        const double gap = ma_min_gap(cfg);
        if (span_hi - span_lo < double(cfg.N - 1) * gap)
            throw std::invalid_argument("ma_optimize: span too short for N elements at half-wavelength spacing");

        MaResult res;
        res.layout = init ? *init : layout_from_gma(fpa_position(cfg), 1, cfg);
        if (!layout_feasible(res.layout, cfg))
            throw std::invalid_argument("ma_optimize: initial layout violates the spacing or span constraints");

        const double anchor = res.layout.anchor;
        auto &offsets = res.layout.offsets;
        res.objective = ev.objective_at_offsets(anchor, offsets);
        ++res.evals;
        res.trace.push_back(ev.metric_from_objective(res.objective));

        const std::size_t N = offsets.size();
        for (int sweep = 0; sweep < settings.max_alt_iters; ++sweep)
        {
            const double previous = res.objective;
            for (std::size_t n = 0; n < N; ++n)
            {
                const double current = anchor + offsets[n];
                double lo = n == 0 ? span_lo : anchor + offsets[n - 1] + gap;
                double hi = n + 1 == N ? span_hi : anchor + offsets[n + 1] - gap;
                lo = std::min(lo, current);
                hi = std::max(hi, current);

                auto exact = [&](std::span<const double> ys) {
                    return kernels::parallel::element_moves(ev, anchor, offsets, n, ys);
                };
                const PositionSearchResult best = detail::maximize_on_interval(
                    lo, hi, grid, [&](const UniformGrid &g) {
                        std::vector<double> ys(g.count);
                        for (std::size_t i = 0; i < g.count; ++i)
                            ys[i] = g.at(i);
                        return exact(ys);
                    },
                    exact, current);
                res.evals += best.evals;
                if (best.objective > res.objective)
                {
                    offsets[n] = best.y - anchor;
                    res.objective = best.objective;
                }
            }
            res.trace.push_back(ev.metric_from_objective(res.objective));
            res.sweeps = sweep + 1;
            if (fractional_increase(previous, res.objective) < settings.epsilon)
                break;
        }
        res.metric = ev.metric_from_objective(res.objective);
        return res;
    }

    OracleResult exhaustive_oracle(const Evaluator &ev, double fine_step)
    {
        if (!(fine_step > 0.0))
            throw std::invalid_argument("exhaustive_oracle: fine_step must be positive");
        const auto &cfg = ev.config();
        OracleResult best;
        bool found = false;
        double best_scan = 0.0;
        for (int eta = 1; eta <= ev.eta_max(); ++eta)
        {
            const auto [lo, hi] = position_bounds(cfg, eta);
            if (lo > hi)
                continue;
            const UniformGrid grid = make_grid(lo, hi, fine_step);
            std::vector<double> scan = kernels::parallel::sweep(ev, eta, grid);
            best.evals += std::int64_t(grid.count);
            std::size_t i = argmax_first(scan, tie_tolerance);
            double y = grid.at(i), v = scan[i];
            if (grid.at(grid.count - 1) < hi)
            {
                const double v_hi = ev.objective(hi, eta);
                ++best.evals;
                if (v_hi > v + tie_tolerance * std::abs(v))
                {
                    y = hi;
                    v = v_hi;
                }
            }
            if (!found || v > best_scan + tie_tolerance * std::abs(best_scan))
            {
                found = true;
                best_scan = v;
                best.y = y;
                best.eta = eta;
            }
        }
        best.objective = ev.objective(best.y, best.eta);
        best.metric = ev.metric_from_objective(best.objective);
        return best;
    }
}
