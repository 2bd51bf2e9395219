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

#include "gma/array_channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gma
{
    ArrayConfig ArrayConfig::from_carrier(double f_carrier, int M, int N, double y_min, double y_max)
    {
        if (!(f_carrier > 0.0))
            throw std::invalid_argument("carrier frequency must be positive");
        ArrayConfig cfg;
        cfg.M = M;
        cfg.N = N;
        cfg.lambda = speed_of_light / f_carrier;
        cfg.d = cfg.lambda / 2.0;
        cfg.y_min = y_min;
        cfg.y_max = y_max;
        cfg.validate();
        return cfg;
    }

    void ArrayConfig::validate() const
    {
        if (N < 2)
            throw std::invalid_argument("ArrayConfig: N must be at least 2");
        if (M < N)
            throw std::invalid_argument("ArrayConfig: M must be at least N");
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw std::invalid_argument("ArrayConfig: wavelength must be positive");
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::invalid_argument("ArrayConfig: element spacing must be positive");
        if (!std::isfinite(y_min) || !std::isfinite(y_max) || y_min > y_max)
            throw std::invalid_argument("ArrayConfig: movable region must satisfy y_min <= y_max");
        if (fpa_y && !is_feasible(*this, *fpa_y, 1))
            throw std::invalid_argument("ArrayConfig: FPA position outside the movable region");
        if (constrain_aperture && position_bounds(*this, 1).first > position_bounds(*this, 1).second)
            throw std::invalid_argument("ArrayConfig: region too small for the compact array");
    }

    void validate_paths(std::span<const Path> paths)
    {
        if (paths.empty())
            throw std::invalid_argument("path set is empty");
        for (const auto &p : paths)
        {
            if (!std::isfinite(p.gain.real()) || !std::isfinite(p.gain.imag()))
                throw std::invalid_argument("path gain is not finite");
            if (!(p.aoa >= -pi / 2.0 && p.aoa <= pi / 2.0))
                throw std::invalid_argument("angle of arrival outside [-pi/2, pi/2]");
        }
    }

    int max_sparsity(int M, int N)
    {
        if (N < 2 || M < N)
            throw std::invalid_argument("max_sparsity: requires M >= N >= 2, got M=" + std::to_string(M) +
                                        ", N=" + std::to_string(N));
        return (M - 1) / (N - 1);
    }

    int max_sparsity(const ArrayConfig &cfg)
    {
        return max_sparsity(cfg.M, cfg.N);
    }

    double element_offset(int n, int eta, double d)
    {
        return double(n * eta) * d;
    }

    std::pair<double, double> position_bounds(const ArrayConfig &cfg, int eta)
    {
        double hi = cfg.y_max;
        if (cfg.constrain_aperture)
            hi -= element_offset(cfg.N - 1, eta, cfg.d);
        return {cfg.y_min, hi};
    }

    bool is_feasible(const ArrayConfig &cfg, double y, int eta)
    {
        auto [lo, hi] = position_bounds(cfg, eta);
        return y >= lo && y <= hi;
    }

    int largest_feasible_eta(const ArrayConfig &cfg)
    {
        int eta = max_sparsity(cfg);
        while (eta > 1 && position_bounds(cfg, eta).first > position_bounds(cfg, eta).second)
            --eta;
        return eta;
    }

    double fpa_position(const ArrayConfig &cfg)
    {
        return cfg.fpa_y.value_or(cfg.y_min);
    }

    static void check_eta(int eta, const ArrayConfig &cfg)
    {
        const int eta_max = max_sparsity(cfg);
        if (eta < 1 || eta > eta_max)
            throw std::invalid_argument("sparsity level " + std::to_string(eta) + " outside {1, ..., " +
                                        std::to_string(eta_max) + "}");
    }

    CVector sparse_steering(int eta, double theta, const ArrayConfig &cfg)
    {
        check_eta(eta, cfg);
        const double k = cfg.wavenumber();
        const double s = std::sin(theta);
        CVector a(cfg.N);
        for (int n = 0; n < cfg.N; ++n)
            a[n] = unit_phasor(k, element_offset(n, eta, cfg.d), s);
        return a;
    }

    CVector steering(double y, int eta, double theta, const ArrayConfig &cfg)
    {
        if (!is_feasible(cfg, y, eta))
            throw std::invalid_argument("position " + std::to_string(y) + " outside the movable region");
        const cd global = unit_phasor(cfg.wavenumber(), y, std::sin(theta));
        return global * sparse_steering(eta, theta, cfg);
    }

    ChannelVector channel_vector(double y, int eta, std::span<const Path> paths, const ArrayConfig &cfg)
    {
        validate_paths(paths);
        if (!is_feasible(cfg, y, eta))
            throw std::invalid_argument("position " + std::to_string(y) + " outside the movable region");
        check_eta(eta, cfg);
        std::vector<double> offsets(cfg.N);
        for (int n = 0; n < cfg.N; ++n)
            offsets[n] = element_offset(n, eta, cfg.d);
        return {channel_at_offsets(y, offsets, paths, cfg), y, eta};
    }

    CVector channel_at_offsets(double anchor, std::span<const double> offsets,
                               std::span<const Path> paths, const ArrayConfig &cfg)
    {
        const double k = cfg.wavenumber();
        const Eigen::Index n_el = Eigen::Index(offsets.size());
        CVector h = CVector::Zero(n_el);
        for (const auto &p : paths)
        {
            const double s = std::sin(p.aoa);
            const cd coef = p.gain * unit_phasor(k, anchor, s);
            for (Eigen::Index n = 0; n < n_el; ++n)
                h[n] += coef * unit_phasor(k, offsets[n], s);
        }
        return h;
    }
}
