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

namespace gma
{
    /// Per-user transmit power normalized by the noise power, P_i / sigma^2 (linear).
    struct LinkPowers
    {
        std::vector<double> p_bar;

        static LinkPowers uniform(std::size_t users, double p_bar);
        void validate() const;
    };

    /// Noise power in dBm for a noise spectral density (dBm/Hz) and a bandwidth (Hz).
    double noise_power_dbm(double n0_dbm_hz, double bandwidth_hz);

    /// P / sigma^2 in linear scale.
    double normalized_power(double p_tx_dbm, double n0_dbm_hz, double bandwidth_hz);

    struct Combiner
    {
        CVector weights;
    };

    double mrc_snr(const CVector &h, double p_bar);

    // C_k = I + sum_{i != k} p_i h_i h_i^H
    CMatrix interference_covariance(std::size_t k, std::span<const CVector> channels, const LinkPowers &powers);

    // v = C^{-1} h / ||C^{-1} h||. Throws std::domain_error for h = 0.
    Combiner mmse_combiner(const CVector &h, const CMatrix &C);

    // p_k |v^H h_k|^2 / (v^H C_k v) for an arbitrary combiner.
    double rayleigh_quotient(const CVector &v, const CVector &h, const CMatrix &C, double p_bar);

    // p_k h_k^H C_k^{-1} h_k for realized channels.
    double sinr_from_channels(std::size_t k, std::span<const CVector> channels, const LinkPowers &powers);
    double sum_rate_from_channels(std::span<const CVector> channels, const LinkPowers &powers);

    std::vector<CVector> realize_channels(double y, int eta, std::span<const PathSet> users, const ArrayConfig &cfg);

    double sinr(std::size_t k, double y, int eta, std::span<const PathSet> users, const LinkPowers &powers,
                const ArrayConfig &cfg);

    // sum_k log2(1 + gamma_k), bits/s/Hz
    double sum_rate(double y, int eta, std::span<const PathSet> users, const LinkPowers &powers,
                    const ArrayConfig &cfg);
}
