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
#include "gma/combining_rate.hpp"

namespace gma
{
    /*!
    Objective evaluation for one scenario (users, powers, array).

    Two quantities are exposed:
    - `objective(y, eta)`: what the searches maximize. For a single user this is the channel
      gain ||h||^2, so that every search is independent of the transmit power; otherwise the
      sum rate.
    - `metric(y, eta)`: what is reported. SNR (linear) for one user, sum rate otherwise.

    Sparse steering columns are cached per sparsity level. Channels synthesized here are
    bit-identical to `channel_vector`. All methods are const and safe to call concurrently.
    */
    class Evaluator
    {
    public:
        Evaluator(std::vector<PathSet> users, LinkPowers powers, ArrayConfig cfg);

        const ArrayConfig &config() const { return cfg_; }
        const std::vector<PathSet> &users() const { return users_; }
        const LinkPowers &powers() const { return powers_; }
        std::size_t num_users() const { return users_.size(); }
        int eta_max() const { return eta_max_; }
        bool single_user() const { return users_.size() == 1; }

        double objective(double y, int eta) const;
        double metric(double y, int eta) const;
        double metric_from_objective(double objective) const;

        std::vector<CVector> channels(double y, int eta) const;
        double objective_from_channels(std::span<const CVector> channels) const;

        // Arbitrary element layout (movable-antenna baseline); no region check.
        double objective_at_offsets(double anchor, std::span<const double> offsets) const;

        // N x L block of unscaled sparse steering columns for user k.
        const CMatrix &steering_block(int eta, std::size_t k) const;
        const std::vector<double> &sines(std::size_t k) const { return sines_[k]; }

    private:
        void check(double y, int eta) const;

        std::vector<PathSet> users_;
        LinkPowers powers_;
        ArrayConfig cfg_;
        int eta_max_;
        std::vector<std::vector<double>> sines_;
        std::vector<CMatrix> blocks_; // index (eta - 1) * K + k
    };
}
