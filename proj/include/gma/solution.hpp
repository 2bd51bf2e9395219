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
#include <limits>
#include <optional>
#include <vector>

namespace gma
{
    // Values within this relative distance of the maximum are treated as ties.
    inline constexpr double tie_tolerance = 1e-12;

    struct OptimizerSettings
    {
        double epsilon = 1e-4;                       // fractional-increase stopping threshold
        int max_sca_iters = 200;                     // cap on SCA iterations per position subproblem
        int max_alt_iters = 50;                      // cap on alternating rounds
        std::optional<double> multistart_grid_step;  // meters; default lambda / 4
        int eta_init = 0;                            // fixed eta^(0); 0 selects it by `scan_eta_init`
        bool scan_eta_init = true;                   // solve the first position subproblem at every eta and
                                                     // start from the best pair; otherwise start at the
                                                     // largest feasible eta
        bool warm_start = true;                      // include the incumbent position among SCA starts

        void validate() const;
    };

    // A feasible (y, eta) point injected into a search; the result never falls below it.
    struct Candidate
    {
        double y = 0.0;
        int eta = 1;
    };

    struct GmaSolution
    {
        double y_star = 0.0;
        int eta_star = 1;
        double objective = 0.0;      // SNR (linear) for one user, sum rate otherwise
        std::vector<double> trace;   // best objective after initialization and after each round
        std::int64_t evals = 0;      // objective evaluations
        int rounds = 0;              // alternating rounds executed
        std::vector<int> sca_iterations; // per round, single-user solver only
    };

    inline double fractional_increase(double previous, double current)
    {
        if (previous == 0.0)
            return current > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        return (current - previous) / previous;
    }
}
