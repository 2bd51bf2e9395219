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

#include <cstdint>
#include <optional>
#include <span>

#include "gma/evaluator.hpp"
#include "gma/solution.hpp"

namespace gma
{
    /*!
    One-dimensional position search resolution.

    The region is scanned on a uniform grid of `step`. The best `refine_candidates` local maxima
    of that scan are then refined `refine_levels` times, each round shrinking the step by
    `refine_factor` and scanning +/- one previous step around the current best point.
    */
    struct GridSpec
    {
        double step = 0.0;
        int refine_levels = 2;
        int refine_factor = 8;
        int refine_candidates = 8;

        // lambda/16 with two refinement rounds of factor 8.
        static GridSpec defaults(const ArrayConfig &cfg);
        void validate() const;
    };

    struct PositionSearchResult
    {
        double y = 0.0;
        double objective = 0.0;
        std::int64_t evals = 0;
    };

    // Maximizes the evaluator objective over y for a fixed sparsity level. An incumbent position,
    // when given, is part of the evaluated set and wins ties.
    PositionSearchResult grid_position_search(const Evaluator &ev, int eta, const GridSpec &grid,
                                              std::optional<double> incumbent = {});

    struct SparsitySearchResult
    {
        int eta = 1;
        double objective = 0.0;
        std::int64_t evals = 0;
    };

    // Exact maximum over the feasible sparsity levels at y; ties toward smaller eta.
    SparsitySearchResult sparsity_search(const Evaluator &ev, double y);

    // Alternating position / sparsity search. The compact configuration (fpa_position, 1) is always
    // part of the evaluated set, as is every injected candidate.
    GmaSolution optimize_multiuser(const Evaluator &ev, const GridSpec &grid, const OptimizerSettings &settings,
                                   std::span<const Candidate> injected = {});
}
