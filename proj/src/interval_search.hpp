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

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "gma/kernels.hpp"
#include "gma/multiuser_optimizer.hpp"

namespace gma::detail
{
    // Indices of local maxima of a scan, best first. Values within tie_tolerance of the top
    // count as equal and keep index order.
    inline std::vector<std::size_t> local_maxima(std::span<const double> v, std::size_t limit)
    {
        const double top = *std::max_element(v.begin(), v.end());
        const double floor = top - tie_tolerance * std::abs(top);
        auto key = [&](std::size_t i) { return v[i] >= floor ? top : v[i]; };
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            const bool left = i == 0 || v[i] >= v[i - 1];
            const bool right = i + 1 == v.size() || v[i] >= v[i + 1];
            if (left && right)
                idx.push_back(i);
        }
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key(a) > key(b); });
        if (idx.size() > limit)
            idx.resize(limit);
        return idx;
    }

    /*!
    Coarse scan of [lo, hi] followed by local refinement of the best local maxima.

    - `scan(UniformGrid)` returns approximate objective values on a uniform grid.
    - `exact(std::span<const double>)` returns exact objective values at arbitrary points.
    - The incumbent, when present, is evaluated first and wins ties.
    */
    template <class Scan, class Exact>
    PositionSearchResult maximize_on_interval(double lo, double hi, const GridSpec &grid, Scan &&scan, Exact &&exact,
                                              std::optional<double> incumbent)
    {
        PositionSearchResult res;
        const UniformGrid coarse = make_grid(lo, hi, grid.step);
        const std::vector<double> values = scan(coarse);
        res.evals += std::int64_t(coarse.count);

        std::vector<double> finals_y, finals_v;
        auto exact_one = [&](double y) {
            ++res.evals;
            return exact(std::span<const double>(&y, 1))[0];
        };
        if (incumbent)
        {
            finals_y.push_back(*incumbent);
            finals_v.push_back(exact_one(*incumbent));
        }

        for (std::size_t c : local_maxima(values, std::size_t(grid.refine_candidates)))
        {
            double center = coarse.at(c);
            double value = exact_one(center);
            double step = grid.step;
            for (int level = 0; level < grid.refine_levels; ++level)
            {
                const double fine = step / double(grid.refine_factor);
                std::vector<double> ys;
                for (int j = -grid.refine_factor; j <= grid.refine_factor; ++j)
                {
                    const double yy = center + fine * double(j);
                    if (j != 0 && yy >= lo && yy <= hi)
                        ys.push_back(yy);
                }
                const std::vector<double> vals = exact(std::span<const double>(ys));
                res.evals += std::int64_t(ys.size());
                for (std::size_t i = 0; i < ys.size(); ++i)
                    if (vals[i] > value + tie_tolerance * std::abs(value))
                    {
                        value = vals[i];
                        center = ys[i];
                    }
                step = fine;
            }
            finals_y.push_back(center);
            finals_v.push_back(value);
        }

        // The upper end is always evaluated, even off the coarse grid.
        if (coarse.at(coarse.count - 1) < hi)
        {
            finals_y.push_back(hi);
            finals_v.push_back(exact_one(hi));
        }

        const std::size_t best = argmax_first(finals_v, tie_tolerance);
        res.y = finals_y[best];
        res.objective = finals_v[best];
        return res;
    }
}
