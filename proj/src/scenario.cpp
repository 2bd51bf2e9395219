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

#include "gma/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gma/kernels.hpp"

namespace gma
{
    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ull;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
            return x ^ (x >> 31);
        }

        // Uniform on [0, 1) from the top 53 bits; identical across standard libraries.
        double unit(std::mt19937_64 &rng)
        {
            return double(rng() >> 11) * 0x1.0p-53;
        }

        double uniform(std::mt19937_64 &rng, double lo, double hi)
        {
            return lo + (hi - lo) * unit(rng);
        }
    }

    void ScenarioParams::validate() const
    {
        if (!(carrier_hz > 0.0))
            throw std::invalid_argument("scenario: carrier frequency must be positive");
        if (users < 1)
            throw std::invalid_argument("scenario: at least one user is required");
        if (paths_per_user < 1)
            throw std::invalid_argument("scenario: at least one path per user is required");
        if (!(radius >= 0.0))
            throw std::invalid_argument("scenario: radius must be non-negative");
        if (!(scatterer_range[0] >= 0.0 && scatterer_range[0] <= scatterer_range[1]))
            throw std::invalid_argument("scenario: scatterer range must be ordered and non-negative");
        if (!(aoa_range[0] <= aoa_range[1] && aoa_range[0] >= -pi / 2.0 && aoa_range[1] <= pi / 2.0))
            throw std::invalid_argument("scenario: AoA range must be ordered and inside [-pi/2, pi/2]");
        if (!(bandwidth_hz > 0.0))
            throw std::invalid_argument("scenario: bandwidth must be positive");
        if (!(region_ratio >= 0.0))
            throw std::invalid_argument("scenario: region ratio must be non-negative");
        if (region_reference_elements < 0 || region_reference_elements == 1)
            throw std::invalid_argument("scenario: region reference element count must be 0 or at least 2");
        if (std::hypot(center[0], center[1]) <= radius)
            throw std::invalid_argument("scenario: user disk must not contain the array origin");
        (void)array();
    }

    double ScenarioParams::reference_length() const
    {
        const int m_ref = region_reference_elements > 0 ? region_reference_elements : elements;
        return double(m_ref - 1) * (speed_of_light / carrier_hz) / 2.0;
    }

    ArrayConfig ScenarioParams::array() const
    {
        ArrayConfig cfg;
        cfg.M = elements;
        cfg.N = rf_chains;
        cfg.lambda = speed_of_light / carrier_hz;
        cfg.d = cfg.lambda / 2.0;
        cfg.y_min = y_min;
        cfg.y_max = y_min + region_ratio * reference_length();
        cfg.constrain_aperture = constrain_aperture;
        cfg.fpa_y = fpa_position;
        cfg.validate();
        return cfg;
    }

    double ScenarioParams::p_bar() const
    {
        return normalized_power(p_tx_dbm, n0_dbm_hz, bandwidth_hz);
    }

    std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index)
    {
        return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ull);
    }

    std::uint64_t params_hash(const ScenarioParams &p)
    {
        std::ostringstream os;
        os.precision(17);
        os << p.carrier_hz << ' ' << p.users << ' ' << p.center[0] << ' ' << p.center[1] << ' ' << p.radius << ' '
           << p.paths_per_user << ' ' << p.scatterer_range[0] << ' ' << p.scatterer_range[1] << ' ' << p.aoa_range[0]
           << ' ' << p.aoa_range[1] << ' ' << p.p_tx_dbm << ' ' << p.n0_dbm_hz << ' ' << p.bandwidth_hz << ' '
           << p.rf_chains << ' ' << p.elements << ' ' << p.y_min << ' ' << p.region_ratio << ' '
           << p.region_reference_elements << ' ' << p.constrain_aperture << ' '
           << (p.fpa_position ? *p.fpa_position : std::numeric_limits<double>::quiet_NaN());
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : os.str())
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    Scenario sample_scenario(const ScenarioParams &params)
    {
        params.validate();
        Scenario sc;
        sc.array = params.array();
        sc.seed = params.seed;
        sc.params_hash = params_hash(params);
        sc.powers = LinkPowers::uniform(std::size_t(params.users), params.p_bar());

        const double lambda = sc.array.lambda;
        const double L = double(params.paths_per_user);
        std::mt19937_64 rng(params.seed);
        for (int k = 0; k < params.users; ++k)
        {
            UserGeometry geo;
            const double rho = params.radius * std::sqrt(unit(rng));
            const double phi = 2.0 * pi * unit(rng);
            geo.position = {params.center[0] + rho * std::cos(phi), params.center[1] + rho * std::sin(phi)};
            const double dist = std::hypot(geo.position[0], geo.position[1]);
            const double beta = std::pow(lambda / (4.0 * pi * dist), 2);
            const double amplitude = std::sqrt(beta / L);

            PathSet paths;
            for (int l = 0; l < params.paths_per_user; ++l)
            {
                const double r = uniform(rng, params.scatterer_range[0], params.scatterer_range[1]);
                const double theta = uniform(rng, params.aoa_range[0], params.aoa_range[1]);
                const double phase = 2.0 * pi * unit(rng);
                geo.scatterers.push_back({r * std::cos(theta), r * std::sin(theta)});
                paths.push_back({std::polar(amplitude, phase), theta});
            }
            sc.users.push_back(std::move(paths));
            sc.geometry.push_back(std::move(geo));
        }
        return sc;
    }

    std::vector<double> linspace(double lo, double hi, std::size_t count)
    {
        std::vector<double> v(count);
        if (count == 1)
            v[0] = lo;
        for (std::size_t i = 0; count > 1 && i < count; ++i)
            v[i] = i + 1 == count ? hi : lo + (hi - lo) * double(i) / double(count - 1);
        return v;
    }

    Landscape landscape(const Evaluator &ev, std::span<const double> ys, std::span<const int> etas, bool parallel)
    {
        if (ys.empty() || etas.empty())
            throw std::invalid_argument("landscape: grids must be non-empty");
        Landscape out;
        out.ys.assign(ys.begin(), ys.end());
        out.etas.assign(etas.begin(), etas.end());
        out.values = parallel ? kernels::parallel::landscape(ev, ys, etas) : kernels::serial::landscape(ev, ys, etas);
        const auto [mn, mx] = std::minmax_element(out.values.begin(), out.values.end());
        out.min = *mn;
        out.max = *mx;
        out.gap_in_db = ev.single_user();
        if (out.gap_in_db)
            out.gap = out.min > 0.0 ? 10.0 * std::log10(out.max / out.min) : std::numeric_limits<double>::infinity();
        else
            out.gap = out.max - out.min;
        return out;
    }
}
