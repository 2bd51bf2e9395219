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

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gma
{
    using cd = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;

    inline constexpr double speed_of_light = 299792458.0;
    inline constexpr double pi = 3.14159265358979323846;

    /*!
    Physical array and movable-region geometry.

    - `M` physical elements separated by `d`, `N` RF chains (selected elements).
    - The movable region `[y_min, y_max]` constrains the bottom (reference) element only,
      unless `constrain_aperture` is set, in which case the whole selected array
      `y + (N-1)*eta*d` must stay below `y_max`.
    - `fpa_y` is the reference position of the fixed compact array baseline (defaults to `y_min`).
    */
    struct ArrayConfig
    {
        int M = 128;
        int N = 4;
        double d = 0.0;
        double lambda = 0.0;
        double y_min = 0.0;
        double y_max = 0.0;
        bool constrain_aperture = false;
        std::optional<double> fpa_y{};

        double d_bar() const { return d / lambda; }
        double wavenumber() const { return 2.0 * pi / lambda; }
        double physical_length() const { return double(M - 1) * d; }
        double region_length() const { return y_max - y_min; }

        // Half-wavelength array for a carrier frequency.
        static ArrayConfig from_carrier(double f_carrier, int M, int N, double y_min, double y_max);

        // Throws std::invalid_argument on a degenerate geometry.
        void validate() const;
    };

    struct Path
    {
        cd gain{1.0, 0.0}; // alpha, linear amplitude
        double aoa = 0.0;  // theta in [-pi/2, pi/2]
    };

    using PathSet = std::vector<Path>;

    void validate_paths(std::span<const Path> paths);

    struct ChannelVector
    {
        CVector entries;
        double y = 0.0;
        int eta = 1;
    };

    // floor((M-1)/(N-1))
    int max_sparsity(int M, int N);
    int max_sparsity(const ArrayConfig &cfg);

    // Offset of selected element n (0-based) from the reference element.
    double element_offset(int n, int eta, double d);

    // Feasible range of the reference position for a sparsity level. Empty (lo > hi) if none.
    std::pair<double, double> position_bounds(const ArrayConfig &cfg, int eta);
    bool is_feasible(const ArrayConfig &cfg, double y, int eta);

    // Largest sparsity level whose position range is non-empty.
    int largest_feasible_eta(const ArrayConfig &cfg);

    // Reference position of the fixed compact-array baseline.
    double fpa_position(const ArrayConfig &cfg);

    // Unit phasor exp(j * k * x * s). All steering entries are built from this one expression.
    inline cd unit_phasor(double k, double x, double s)
    {
        return std::polar(1.0, k * x * s);
    }

    CVector sparse_steering(int eta, double theta, const ArrayConfig &cfg);
    CVector steering(double y, int eta, double theta, const ArrayConfig &cfg);

    // h = sum_l alpha_l * exp(j k y sin(theta_l)) * abar(eta; theta_l)
    ChannelVector channel_vector(double y, int eta, std::span<const Path> paths, const ArrayConfig &cfg);

    // Channel for an arbitrary element layout given as reference position + per-element offsets.
    // For offsets (n * eta * d) this is bit-identical to channel_vector(anchor, eta, ...).
    CVector channel_at_offsets(double anchor, std::span<const double> offsets,
                               std::span<const Path> paths, const ArrayConfig &cfg);
}
