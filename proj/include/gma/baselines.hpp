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
#include <utility>
#include <vector>

#include "gma/evaluator.hpp"
#include "gma/multiuser_optimizer.hpp"
#include "gma/solution.hpp"

namespace gma
{
    /// Metric of the fixed compact array (eta = 1) at the FPA reference position.
    double fpa_metric(const Evaluator &ev);

    /*!
    Element layout of the independently movable antenna baseline.

    Positions are stored as a reference `anchor` plus per-element `offsets`, so a layout derived
    from a group configuration reproduces that configuration's channel bit for bit.
    */
    struct MaLayout
    {
        double anchor = 0.0;
        std::vector<double> offsets;

        std::vector<double> positions() const;
    };

    // Elements at y + n * eta * d.
    MaLayout layout_from_gma(double y, int eta, const ArrayConfig &cfg);

    // Range reachable by any element: [y_min, y_max + (M - 1) d].
    std::pair<double, double> ma_span(const ArrayConfig &cfg);

    // Minimum element spacing, lambda / 2.
    double ma_min_gap(const ArrayConfig &cfg);

    // Sorted, gaps >= lambda/2 and inside the span, all up to `tol` meters.
    bool layout_feasible(const MaLayout &layout, const ArrayConfig &cfg, double tol = 1e-9);

    struct MaResult
    {
        MaLayout layout;
        double objective = 0.0;
        double metric = 0.0;
        std::vector<double> trace; // metric after initialization and after each sweep
        int sweeps = 0;
        std::int64_t evals = 0;
    };

    // Cyclic coordinate ascent, one element at a time, each over a refined 1-D grid limited by
    // its neighbours. Starts from `init` or from the compact array at the FPA position.
    MaResult ma_optimize(const Evaluator &ev, const GridSpec &grid, const OptimizerSettings &settings,
                         std::optional<MaLayout> init = {});

    struct OracleResult
    {
        double y = 0.0;
        int eta = 1;
        double objective = 0.0;
        double metric = 0.0;
        std::int64_t evals = 0;
    };

    // Best point of the (uniform y grid of fine_step) x (feasible eta) product.
    OracleResult exhaustive_oracle(const Evaluator &ev, double fine_step);
}
