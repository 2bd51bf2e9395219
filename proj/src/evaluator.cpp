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

#include "gma/evaluator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gma
{
    Evaluator::Evaluator(std::vector<PathSet> users, LinkPowers powers, ArrayConfig cfg)
        : users_(std::move(users)), powers_(std::move(powers)), cfg_(cfg)
    {
        cfg_.validate();
        if (users_.empty())
            throw std::invalid_argument("Evaluator: at least one user is required");
        if (powers_.p_bar.size() != users_.size())
            throw std::invalid_argument("Evaluator: one normalized power per user is required");
        powers_.validate();
        for (const auto &u : users_)
            validate_paths(u);

        eta_max_ = max_sparsity(cfg_);
        const double k = cfg_.wavenumber();
        sines_.resize(users_.size());
        for (std::size_t u = 0; u < users_.size(); ++u)
            for (const auto &p : users_[u])
                sines_[u].push_back(std::sin(p.aoa));

        blocks_.reserve(std::size_t(eta_max_) * users_.size());
        for (int eta = 1; eta <= eta_max_; ++eta)
            for (std::size_t u = 0; u < users_.size(); ++u)
            {
                CMatrix block(cfg_.N, Eigen::Index(users_[u].size()));
                for (Eigen::Index l = 0; l < block.cols(); ++l)
                    for (int n = 0; n < cfg_.N; ++n)
                        block(n, l) = unit_phasor(k, element_offset(n, eta, cfg_.d), sines_[u][l]);
                blocks_.push_back(std::move(block));
            }
    }

    const CMatrix &Evaluator::steering_block(int eta, std::size_t k) const
    {
        return blocks_[std::size_t(eta - 1) * users_.size() + k];
    }

    void Evaluator::check(double y, int eta) const
    {
        if (eta < 1 || eta > eta_max_)
            throw std::invalid_argument("sparsity level " + std::to_string(eta) + " outside {1, ..., " +
                                        std::to_string(eta_max_) + "}");
        if (!is_feasible(cfg_, y, eta))
            throw std::invalid_argument("position " + std::to_string(y) + " outside the movable region");
    }

    std::vector<CVector> Evaluator::channels(double y, int eta) const
    {
        check(y, eta);
        const double k = cfg_.wavenumber();
        std::vector<CVector> hs;
        hs.reserve(users_.size());
        for (std::size_t u = 0; u < users_.size(); ++u)
        {
            const CMatrix &block = steering_block(eta, u);
            CVector h = CVector::Zero(cfg_.N);
            for (std::size_t l = 0; l < users_[u].size(); ++l)
            {
                const cd coef = users_[u][l].gain * unit_phasor(k, y, sines_[u][l]);
                for (int n = 0; n < cfg_.N; ++n)
                    h[n] += coef * block(n, Eigen::Index(l));
            }
            hs.push_back(std::move(h));
        }
        return hs;
    }

    double Evaluator::objective_from_channels(std::span<const CVector> channels) const
    {
        if (single_user())
            return channels[0].squaredNorm();
        return sum_rate_from_channels(channels, powers_);
    }

    double Evaluator::objective(double y, int eta) const
    {
        const auto hs = channels(y, eta);
        return objective_from_channels(hs);
    }

    double Evaluator::metric_from_objective(double objective) const
    {
        return single_user() ? powers_.p_bar[0] * objective : objective;
    }

    double Evaluator::metric(double y, int eta) const
    {
        return metric_from_objective(objective(y, eta));
    }

    double Evaluator::objective_at_offsets(double anchor, std::span<const double> offsets) const
    {
        std::vector<CVector> hs;
        hs.reserve(users_.size());
        for (const auto &u : users_)
            hs.push_back(channel_at_offsets(anchor, offsets, u, cfg_));
        return objective_from_channels(hs);
    }
}
