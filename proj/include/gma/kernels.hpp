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

#include <cstddef>
#include <span>
#include <vector>

#include "gma/evaluator.hpp"

// Data-parallel evaluation kernels. Every kernel exists twice: a plain serial loop kept as the
// reference, and an OpenMP version. Work is partitioned identically in both, so the two return
// bit-identical results for any thread count.

namespace gma
{
    struct UniformGrid
    {
        double start = 0.0;
        double step = 1.0;
        std::size_t count = 0;

        double at(std::size_t i) const { return start + step * double(i); }
    };

    // lo, lo + step, ... up to hi (hi itself only when it lands on the grid). Requires step > 0.
    UniformGrid make_grid(double lo, double hi, double step);

    // First index whose value is within rel_tol of the maximum. Requires non-empty input.
    std::size_t argmax_first(std::span<const double> values, double rel_tol = 0.0);

    namespace kernels
    {
        // Phases along a uniform grid are advanced by a fixed rotation inside blocks of this many
        // points and recomputed exactly at each block start.
        inline constexpr std::size_t sweep_block = 64;

        namespace serial
        {
            std::vector<double> sweep(const Evaluator &ev, int eta, const UniformGrid &grid);
            // Objective with element n of an (anchor, offsets) layout moved to each position in ys.
            std::vector<double> element_moves(const Evaluator &ev, double anchor, std::span<const double> offsets,
                                              std::size_t n, std::span<const double> ys);
            std::vector<double> evaluate(const Evaluator &ev, int eta, std::span<const double> ys);
            std::vector<double> landscape(const Evaluator &ev, std::span<const double> ys, std::span<const int> etas);
        }

        namespace parallel
        {
            std::vector<double> sweep(const Evaluator &ev, int eta, const UniformGrid &grid);
            // Objective with element n of an (anchor, offsets) layout moved to each position in ys.
            std::vector<double> element_moves(const Evaluator &ev, double anchor, std::span<const double> offsets,
                                              std::size_t n, std::span<const double> ys);
            std::vector<double> evaluate(const Evaluator &ev, int eta, std::span<const double> ys);
            std::vector<double> landscape(const Evaluator &ev, std::span<const double> ys, std::span<const int> etas);
        }
    }
}
