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

#include "gma/combining_rate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>

namespace gma
{
    LinkPowers LinkPowers::uniform(std::size_t users, double p_bar)
    {
        LinkPowers p{std::vector<double>(users, p_bar)};
        p.validate();
        return p;
    }

    void LinkPowers::validate() const
    {
        for (double p : p_bar)
            if (!(p >= 0.0) || !std::isfinite(p))
                throw std::invalid_argument("normalized powers must be finite and non-negative");
    }

    double noise_power_dbm(double n0_dbm_hz, double bandwidth_hz)
    {
        if (!(bandwidth_hz > 0.0))
            throw std::invalid_argument("bandwidth must be positive");
        return n0_dbm_hz + 10.0 * std::log10(bandwidth_hz);
    }

    double normalized_power(double p_tx_dbm, double n0_dbm_hz, double bandwidth_hz)
    {
        return std::pow(10.0, (p_tx_dbm - noise_power_dbm(n0_dbm_hz, bandwidth_hz)) / 10.0);
    }

    double mrc_snr(const CVector &h, double p_bar)
    {
        if (!(p_bar >= 0.0))
            throw std::invalid_argument("mrc_snr: power must be non-negative");
        return p_bar * h.squaredNorm();
    }

    CMatrix interference_covariance(std::size_t k, std::span<const CVector> channels, const LinkPowers &powers)
    {
        if (channels.empty() || k >= channels.size())
            throw std::invalid_argument("interference_covariance: user index out of range");
        if (powers.p_bar.size() != channels.size())
            throw std::invalid_argument("interference_covariance: power vector length mismatch");
        const Eigen::Index n = channels[k].size();
        CMatrix C = CMatrix::Identity(n, n);
        for (std::size_t i = 0; i < channels.size(); ++i)
        {
            if (channels[i].size() != n)
                throw std::invalid_argument("interference_covariance: channel length mismatch");
            if (i == k)
                continue;
            C.noalias() += powers.p_bar[i] * channels[i] * channels[i].adjoint();
        }
        return C;
    }

    Combiner mmse_combiner(const CVector &h, const CMatrix &C)
    {
        if (h.squaredNorm() == 0.0)
            throw std::domain_error("mmse_combiner: combiner undefined for a zero channel");
        Eigen::LLT<CMatrix> llt(C);
        if (llt.info() != Eigen::Success)
            throw std::domain_error("mmse_combiner: covariance is not positive definite");
        CVector v = llt.solve(h);
        v /= v.norm();
        return {v};
    }

    double rayleigh_quotient(const CVector &v, const CVector &h, const CMatrix &C, double p_bar)
    {
        const double num = std::norm(v.dot(h));
        const double den = v.dot(C * v).real();
        return p_bar * num / den;
    }

    namespace
    {
        constexpr std::size_t stack_dim = 8;
        constexpr std::size_t stack_users = 16;

        std::size_t packed_size(std::size_t n)
        {
            return n * (n + 1) / 2;
        }

        void check_channels(std::span<const CVector> channels, const LinkPowers &powers)
        {
            if (channels.empty())
                throw std::invalid_argument("sinr: no channels");
            if (powers.p_bar.size() != channels.size())
                throw std::invalid_argument("sinr: power vector length mismatch");
            for (const auto &h : channels)
                if (h.size() != channels[0].size() || h.size() == 0)
                    throw std::invalid_argument("sinr: channel length mismatch");
        }

        // Packed lower triangles (column major) of p_u h_u h_u^H for every user.
        void weighted_outer(std::span<const CVector> channels, const LinkPowers &powers, cd *outer)
        {
            const std::size_t n = std::size_t(channels[0].size());
            for (std::size_t u = 0; u < channels.size(); ++u)
            {
                const cd *h = channels[u].data();
                cd *o = outer + u * packed_size(n);
                for (std::size_t j = 0; j < n; ++j)
                {
                    const cd hj = powers.p_bar[u] * std::conj(h[j]);
                    for (std::size_t i = j; i < n; ++i)
                        *o++ = h[i] * hj;
                }
            }
        }

        // p_k h_k^H C_k^{-1} h_k through an in-place Cholesky factor of C_k.
        double sinr_packed(std::size_t k, std::span<const CVector> channels, const LinkPowers &powers,
                           const cd *outer, cd *chol, cd *z)
        {
            const std::size_t n = std::size_t(channels[0].size());
            const std::size_t m = packed_size(n);
            for (std::size_t j = 0, t = 0; j < n; ++j)
                for (std::size_t i = j; i < n; ++i, ++t)
                    chol[t] = i == j ? cd(1.0, 0.0) : cd(0.0, 0.0);
            for (std::size_t u = 0; u < channels.size(); ++u)
            {
                if (u == k || powers.p_bar[u] == 0.0)
                    continue;
                const cd *o = outer + u * m;
                for (std::size_t t = 0; t < m; ++t)
                    chol[t] += o[t];
            }

            // Column j of the packed triangle starts at col(j).
            auto col = [n](std::size_t j) { return j * n - j * (j - 1) / 2; };
            for (std::size_t j = 0; j < n; ++j)
            {
                const std::size_t cj = col(j);
                double d = chol[cj].real();
                for (std::size_t q = 0; q < j; ++q)
                    d -= std::norm(chol[col(q) + (j - q)]);
                if (!(d > 0.0))
                    throw std::runtime_error("sinr: covariance factorization failed");
                d = std::sqrt(d);
                chol[cj] = d;
                for (std::size_t i = j + 1; i < n; ++i)
                {
                    cd s = chol[cj + (i - j)];
                    for (std::size_t q = 0; q < j; ++q)
                        s -= chol[col(q) + (i - q)] * std::conj(chol[col(q) + (j - q)]);
                    chol[cj + (i - j)] = s / d;
                }
            }

            const cd *h = channels[k].data();
            double quad = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                cd s = h[i];
                for (std::size_t q = 0; q < i; ++q)
                    s -= chol[col(q) + (i - q)] * z[q];
                z[i] = s / chol[col(i)].real();
                quad += std::norm(z[i]);
            }
            const double gamma = powers.p_bar[k] * quad;
            if (!std::isfinite(gamma))
                throw std::runtime_error("sinr: non-finite result");
            return gamma;
        }

        template <class F>
        auto with_workspace(std::span<const CVector> channels, const LinkPowers &powers, F &&f)
        {
            check_channels(channels, powers);
            const std::size_t n = std::size_t(channels[0].size());
            const std::size_t m = packed_size(n);
            if (n <= stack_dim && channels.size() <= stack_users)
            {
                cd outer[stack_users * packed_size(stack_dim)], chol[packed_size(stack_dim)], z[stack_dim];
                weighted_outer(channels, powers, outer);
                return f(outer, chol, z);
            }
            std::vector<cd> outer(channels.size() * m), chol(m), z(n);
            weighted_outer(channels, powers, outer.data());
            return f(outer.data(), chol.data(), z.data());
        }
    }

    double sinr_from_channels(std::size_t k, std::span<const CVector> channels, const LinkPowers &powers)
    {
        if (k >= channels.size())
            throw std::invalid_argument("sinr: user index out of range");
        return with_workspace(channels, powers, [&](const cd *outer, cd *chol, cd *z) {
            return sinr_packed(k, channels, powers, outer, chol, z);
        });
    }

    double sum_rate_from_channels(std::span<const CVector> channels, const LinkPowers &powers)
    {
        return with_workspace(channels, powers, [&](const cd *outer, cd *chol, cd *z) {
            double rate = 0.0;
            for (std::size_t k = 0; k < channels.size(); ++k)
                rate += std::log2(1.0 + sinr_packed(k, channels, powers, outer, chol, z));
            return rate;
        });
    }

    std::vector<CVector> realize_channels(double y, int eta, std::span<const PathSet> users, const ArrayConfig &cfg)
    {
        std::vector<CVector> channels;
        channels.reserve(users.size());
        for (const auto &paths : users)
            channels.push_back(channel_vector(y, eta, paths, cfg).entries);
        return channels;
    }

    double sinr(std::size_t k, double y, int eta, std::span<const PathSet> users, const LinkPowers &powers,
                const ArrayConfig &cfg)
    {
        powers.validate();
        const auto channels = realize_channels(y, eta, users, cfg);
        return sinr_from_channels(k, channels, powers);
    }

    double sum_rate(double y, int eta, std::span<const PathSet> users, const LinkPowers &powers,
                    const ArrayConfig &cfg)
    {
        powers.validate();
        const auto channels = realize_channels(y, eta, users, cfg);
        return sum_rate_from_channels(channels, powers);
    }
}
