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

#include <span>
#include <vector>

#include "gma/array_channel.hpp"
#include "gma/evaluator.hpp"
#include "gma/solution.hpp"

// Single-user position and sparsity optimization.
//
// For a fixed sparsity level the channel gain is ||A f(y)||^2, with A the N x L matrix of
// gain-weighted sparse steering columns and f(y) the per-path phase vector. Linearizing around
// the current iterate y_j gives the global minorant 2 g(y) - ||A f(y_j)||^2 with
//
//     g(y) = Re{ b^H f(y) } = sum_i |b_i| cos(k y sin(theta_i) - arg b_i),   b = A^H A f(y_j),
//
// and since g'' <= xi = k^2 sum_i |b_i|, g is in turn bounded below by a concave quadratic whose
// maximizer over the region is the clamped step y_j + g'(y_j) / xi.

namespace gma
{
    struct PathMatrix
    {
        CMatrix a_mat;               // N x L, column l = alpha_l * abar(eta; theta_l)
        std::vector<double> sin_aoa; // sin(theta_l)
        double wavenumber = 0.0;     // 2 pi / lambda
    };

    PathMatrix path_matrix(int eta, std::span<const Path> paths, const ArrayConfig &cfg);

    // f(y)_l = exp(j k y sin(theta_l))
    CVector phase_vector(double y, std::span<const Path> paths, const ArrayConfig &cfg);
    CVector phase_vector(double y, const PathMatrix &A);

    // ||A f(y)||^2
    double position_objective(const PathMatrix &A, double y);

    struct ScaState
    {
        double y_j = 0.0;
        CVector b;
        double g_prime = 0.0;
        double xi = 0.0;
        double objective = 0.0;
        int iteration = 0;
    };

    ScaState expand_at(const PathMatrix &A, double y_j, int iteration = 0);

    // g and its derivatives for the expansion held in `state`, evaluated at any y.
    double surrogate_g(const ScaState &state, const PathMatrix &A, double y);
    double surrogate_g_prime(const ScaState &state, const PathMatrix &A, double y);
    double surrogate_g_second(const ScaState &state, const PathMatrix &A, double y);

    // g(y_j) + g'(y_j) (y - y_j) - xi/2 (y - y_j)^2
    double quadratic_minorant(const ScaState &state, const PathMatrix &A, double y);

    struct StepResult
    {
        double y = 0.0;
        bool degenerate = false; // b = 0: objective locally flat, y_j returned unchanged
    };

    StepResult surrogate_step(const ScaState &state, double y_min, double y_max);

    struct PositionResult
    {
        double y = 0.0;
        double objective = 0.0;      // ||A f(y)||^2
        std::vector<double> trace;   // objective per accepted iterate, starting at y0
        int iterations = 0;
    };

    PositionResult optimize_position_sca(const PathMatrix &A, double y0, double y_min, double y_max,
                                         const OptimizerSettings &settings);

    struct SparsityResult
    {
        int eta = 1;
        double objective = 0.0;
        int evals = 0;
    };

    // Exhaustive search of ||h(y, eta)||^2 over the feasible sparsity levels; ties toward smaller eta.
    SparsityResult optimize_sparsity(double y, std::span<const Path> paths, const ArrayConfig &cfg);

    // Alternating SCA / discrete search for one user. The evaluator must hold exactly one user.
    GmaSolution optimize_single_user(const Evaluator &ev, const OptimizerSettings &settings,
                                     std::span<const Candidate> injected = {});

    GmaSolution optimize_single_user(const PathSet &paths, double p_bar, const ArrayConfig &cfg,
                                     const OptimizerSettings &settings);
}
