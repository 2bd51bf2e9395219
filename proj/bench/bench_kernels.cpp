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

// Serial versus OpenMP timing of the evaluation kernels on the default scenario.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include <omp.h>

#include "gma/baselines.hpp"
#include "gma/kernels.hpp"
#include "gma/scenario.hpp"

namespace
{
    double best_ms(const std::function<void()> &fn, int reps)
    {
        double best = 1e300;
        for (int r = 0; r < reps; ++r)
        {
            const auto t0 = std::chrono::steady_clock::now();
            fn();
            best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
        }
        return best;
    }

    void report(const char *name, const std::function<void()> &serial, const std::function<void()> &parallel)
    {
        const double s = best_ms(serial, 3);
        const double p = best_ms(parallel, 3);
        std::printf("%-16s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", name, s, p, s / p);
    }
}

int main()
{
    using namespace gma;
    ScenarioParams params;
    const Scenario sc = sample_scenario(params);
    const Evaluator ev = sc.evaluator();
    const ArrayConfig &a = sc.array;
    std::printf("threads: %d, K=%zu, M=%d, N=%d, eta_max=%d\n", omp_get_max_threads(), ev.num_users(), a.M, a.N,
                ev.eta_max());

    const UniformGrid grid = make_grid(a.y_min, a.y_max, a.lambda / 64.0);
    report("sweep", [&] { kernels::serial::sweep(ev, ev.eta_max(), grid); },
           [&] { kernels::parallel::sweep(ev, ev.eta_max(), grid); });

    const auto ys = linspace(a.y_min, a.y_max, 1000);
    std::vector<int> etas;
    for (int e = 1; e <= ev.eta_max(); e += 4)
        etas.push_back(e);
    report("landscape", [&] { kernels::serial::landscape(ev, ys, etas); },
           [&] { kernels::parallel::landscape(ev, ys, etas); });

    const MaLayout layout = layout_from_gma(a.y_min, 1, a);
    const auto moves = linspace(layout.offsets.back() + a.lambda, a.y_max, 4000);
    report("element_moves",
           [&] { kernels::serial::element_moves(ev, layout.anchor, layout.offsets, a.N - 1, moves); },
           [&] { kernels::parallel::element_moves(ev, layout.anchor, layout.offsets, a.N - 1, moves); });
    return 0;
}
