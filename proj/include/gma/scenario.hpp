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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gma/array_channel.hpp"
#include "gma/combining_rate.hpp"
#include "gma/evaluator.hpp"

namespace gma
{
    /*!
    Seeded multi-user geometry.

    Users are drawn area-uniformly in a disk. Each user sees `paths_per_user` scatterers with
    distance uniform in `scatterer_range` and angle of arrival uniform in `aoa_range`. Path gains
    follow alpha = sqrt(beta_k / L) exp(j phi), phi ~ U[0, 2 pi), with the free-space power
    beta_k = (lambda / (4 pi r_k))^2 at the user's distance r_k from the array origin.

    The movable region is [y_min, y_min + region_ratio * (M_ref - 1) d], where M_ref is
    `region_reference_elements` (0 selects M itself).
    */
    struct ScenarioParams
    {
        double carrier_hz = 28e9;
        int users = 5;
        std::array<double, 2> center{100.0, 0.0};
        double radius = 50.0;
        int paths_per_user = 5;
        std::array<double, 2> scatterer_range{0.0, 75.0};
        std::array<double, 2> aoa_range{-pi / 2.0, pi / 2.0};
        double p_tx_dbm = 10.0;
        double n0_dbm_hz = -174.0;
        double bandwidth_hz = 1e6;
        int rf_chains = 4;
        int elements = 128;
        double y_min = 0.0;
        double region_ratio = 8.0;
        int region_reference_elements = 0;
        bool constrain_aperture = false;
        std::optional<double> fpa_position{};
        std::uint64_t seed = 1;

        void validate() const;
        ArrayConfig array() const;
        double p_bar() const;
        double reference_length() const;
    };

    struct UserGeometry
    {
        std::array<double, 2> position{};
        std::vector<std::array<double, 2>> scatterers;
    };

    struct Scenario
    {
        std::vector<PathSet> users;
        LinkPowers powers;
        ArrayConfig array;
        std::vector<UserGeometry> geometry;
        std::uint64_t seed = 0;
        std::uint64_t params_hash = 0;

        Evaluator evaluator() const { return Evaluator(users, powers, array); }
    };

    Scenario sample_scenario(const ScenarioParams &params);

    // Per-trial seed: splitmix64 of (master + (index + 1) * golden gamma). Independent of run order.
    std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

    // FNV-1a over every parameter except the seed.
    std::uint64_t params_hash(const ScenarioParams &params);

    struct Landscape
    {
        std::vector<double> ys;
        std::vector<int> etas;
        std::vector<double> values; // eta-major: values[e * ys.size() + i]
        double max = 0.0;
        double min = 0.0;
        double gap = 0.0;           // dB of SNR for one user, bits/s/Hz otherwise
        bool gap_in_db = false;

        double at(std::size_t e, std::size_t i) const { return values[e * ys.size() + i]; }
    };

    Landscape landscape(const Evaluator &ev, std::span<const double> ys, std::span<const int> etas,
                        bool parallel = true);

    std::vector<double> linspace(double lo, double hi, std::size_t count);
}
