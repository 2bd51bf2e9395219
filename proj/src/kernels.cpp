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

#include "gma/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gma
{
    UniformGrid make_grid(double lo, double hi, double step)
    {
        if (!(step > 0.0) || !std::isfinite(step))
            throw std::invalid_argument("grid step must be positive");
        if (lo > hi)
            throw std::invalid_argument("grid bounds must satisfy lo <= hi");
        std::size_t count = std::size_t(std::floor((hi - lo) / step)) + 1;
        while (count > 1 && lo + step * double(count - 1) > hi)
            --count;
        return {lo, step, count};
    }

    std::size_t argmax_first(std::span<const double> values, double rel_tol)
    {
        if (values.empty())
            throw std::invalid_argument("argmax of an empty set");
        const double top = *std::max_element(values.begin(), values.end());
        const double floor = top - rel_tol * std::abs(top);
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] >= floor)
                return i;
        return 0;
    }

    namespace kernels
    {
        namespace
        {
            // Channel gain along a sweep for one user with compile-time RF chain and path counts.
            template <std::size_t N, std::size_t L>
            void single_user_range(const std::vector<cd> &coef, const std::vector<cd> &rot,
                                   const std::vector<const cd *> &column, std::size_t first, std::size_t last,
                                   double *out)
            {
                cd steer[L][N], c[L], r[L];
                for (std::size_t p = 0; p < L; ++p)
                {
                    std::copy(column[p], column[p] + N, steer[p]);
                    c[p] = coef[p];
                    r[p] = rot[p];
                }
                for (std::size_t i = first; i < last; ++i)
                {
                    cd h[N] = {};
                    for (std::size_t p = 0; p < L; ++p)
                    {
                        for (std::size_t n = 0; n < N; ++n)
                            h[n] += c[p] * steer[p][n];
                        c[p] *= r[p];
                    }
                    double gain = 0.0;
                    for (std::size_t n = 0; n < N; ++n)
                        gain += std::norm(h[n]);
                    out[i] = gain;
                }
            }

            template <std::size_t N>
            bool single_user_dispatch(const std::vector<cd> &coef, const std::vector<cd> &rot,
                                      const std::vector<const cd *> &column, std::size_t first, std::size_t last,
                                      double *out)
            {
                switch (coef.size())
                {
                case 1: single_user_range<N, 1>(coef, rot, column, first, last, out); return true;
                case 2: single_user_range<N, 2>(coef, rot, column, first, last, out); return true;
                case 3: single_user_range<N, 3>(coef, rot, column, first, last, out); return true;
                case 4: single_user_range<N, 4>(coef, rot, column, first, last, out); return true;
                case 5: single_user_range<N, 5>(coef, rot, column, first, last, out); return true;
                case 6: single_user_range<N, 6>(coef, rot, column, first, last, out); return true;
                default: return false;
                }
            }

            // Fills out[first, last) of a uniform sweep. Phases are exact at `first`.
            void sweep_block_range(const Evaluator &ev, int eta, const UniformGrid &grid, std::size_t first,
                                   std::size_t last, double *out)
            {
                const auto &cfg = ev.config();
                const double k = cfg.wavenumber();
                const std::size_t K = ev.num_users();
                const std::size_t N = std::size_t(cfg.N);

                // Flat per-path state across users: coefficient, rotation, steering column.
                std::vector<cd> coef, rot;
                std::vector<const cd *> column;
                std::vector<std::size_t> user_end;
                for (std::size_t u = 0; u < K; ++u)
                {
                    const auto &paths = ev.users()[u];
                    const auto &s = ev.sines(u);
                    const CMatrix &block = ev.steering_block(eta, u);
                    for (std::size_t l = 0; l < paths.size(); ++l)
                    {
                        coef.push_back(paths[l].gain * unit_phasor(k, grid.at(first), s[l]));
                        rot.push_back(unit_phasor(k, grid.step, s[l]));
                        column.push_back(block.data() + l * N);
                    }
                    user_end.push_back(coef.size());
                }

                if (K == 1)
                {
                    bool done = false;
                    switch (N)
                    {
                    case 2: done = single_user_dispatch<2>(coef, rot, column, first, last, out); break;
                    case 4: done = single_user_dispatch<4>(coef, rot, column, first, last, out); break;
                    case 8: done = single_user_dispatch<8>(coef, rot, column, first, last, out); break;
                    default: break;
                    }
                    if (done)
                        return;
                }

                std::vector<CVector> hs(K, CVector::Zero(cfg.N));
                for (std::size_t i = first; i < last; ++i)
                {
                    std::size_t p = 0;
                    for (std::size_t u = 0; u < K; ++u)
                    {
                        cd *h = hs[u].data();
                        std::fill(h, h + N, cd(0.0, 0.0));
                        for (; p < user_end[u]; ++p)
                        {
                            const cd c = coef[p];
                            const cd *col = column[p];
                            for (std::size_t n = 0; n < N; ++n)
                                h[n] += c * col[n];
                            coef[p] = c * rot[p];
                        }
                    }
                    out[i] = ev.objective_from_channels(hs);
                }
            }

            void check_sweep(const Evaluator &ev, int eta, const UniformGrid &grid)
            {
                if (grid.count == 0)
                    return;
                if (eta < 1 || eta > ev.eta_max())
                    throw std::invalid_argument("sweep: invalid sparsity level");
                if (!is_feasible(ev.config(), grid.at(0), eta) || !is_feasible(ev.config(), grid.at(grid.count - 1), eta))
                    throw std::invalid_argument("sweep: grid leaves the movable region");
            }

            void check_points(const Evaluator &ev, std::span<const double> ys, std::span<const int> etas)
            {
                for (int eta : etas)
                {
                    if (eta < 1 || eta > ev.eta_max())
                        throw std::invalid_argument("invalid sparsity level in evaluation set");
                    for (double y : ys)
                        if (!is_feasible(ev.config(), y, eta))
                            throw std::invalid_argument("evaluation point outside the movable region");
                }
            }

            std::size_t num_blocks(const UniformGrid &grid)
            {
                return (grid.count + sweep_block - 1) / sweep_block;
            }
        }

        namespace serial
        {
            std::vector<double> sweep(const Evaluator &ev, int eta, const UniformGrid &grid)
            {
                check_sweep(ev, eta, grid);
                std::vector<double> out(grid.count);
                for (std::size_t b = 0; b < num_blocks(grid); ++b)
                    sweep_block_range(ev, eta, grid, b * sweep_block, std::min(grid.count, (b + 1) * sweep_block),
                                      out.data());
                return out;
            }

            std::vector<double> element_moves(const Evaluator &ev, double anchor, std::span<const double> offsets,
                                              std::size_t n, std::span<const double> ys)
            {
                if (n >= offsets.size())
                    throw std::invalid_argument("element_moves: element index out of range");
                std::vector<double> out(ys.size());
                std::vector<double> moved(offsets.begin(), offsets.end());
                for (std::size_t i = 0; i < ys.size(); ++i)
                {
                    moved[n] = ys[i] - anchor;
                    out[i] = ev.objective_at_offsets(anchor, moved);
                }
                return out;
            }

            std::vector<double> evaluate(const Evaluator &ev, int eta, std::span<const double> ys)
            {
                std::vector<double> out(ys.size());
                for (std::size_t i = 0; i < ys.size(); ++i)
                    out[i] = ev.objective(ys[i], eta);
                return out;
            }

            std::vector<double> landscape(const Evaluator &ev, std::span<const double> ys, std::span<const int> etas)
            {
                std::vector<double> out(ys.size() * etas.size());
                for (std::size_t e = 0; e < etas.size(); ++e)
                    for (std::size_t i = 0; i < ys.size(); ++i)
                        out[e * ys.size() + i] = ev.metric(ys[i], etas[e]);
                return out;
            }
        }

        namespace parallel
        {
            std::vector<double> sweep(const Evaluator &ev, int eta, const UniformGrid &grid)
            {
                check_sweep(ev, eta, grid);
                std::vector<double> out(grid.count);
                const long long blocks = (long long)num_blocks(grid);
#pragma omp parallel for schedule(static)
                for (long long b = 0; b < blocks; ++b)
                    sweep_block_range(ev, eta, grid, std::size_t(b) * sweep_block,
                                      std::min(grid.count, std::size_t(b + 1) * sweep_block), out.data());
                return out;
            }

            std::vector<double> element_moves(const Evaluator &ev, double anchor, std::span<const double> offsets,
                                              std::size_t n, std::span<const double> ys)
            {
                if (n >= offsets.size())
                    throw std::invalid_argument("element_moves: element index out of range");
                std::vector<double> out(ys.size());
                const long long count = (long long)ys.size();
#pragma omp parallel
                {
                    std::vector<double> moved(offsets.begin(), offsets.end());
#pragma omp for schedule(static)
                    for (long long i = 0; i < count; ++i)
                    {
                        moved[n] = ys[std::size_t(i)] - anchor;
                        out[std::size_t(i)] = ev.objective_at_offsets(anchor, moved);
                    }
                }
                return out;
            }

            std::vector<double> evaluate(const Evaluator &ev, int eta, std::span<const double> ys)
            {
                check_points(ev, ys, std::span<const int>(&eta, 1));
                std::vector<double> out(ys.size());
                const long long n = (long long)ys.size();
#pragma omp parallel for schedule(static)
                for (long long i = 0; i < n; ++i)
                    out[i] = ev.objective(ys[i], eta);
                return out;
            }

            std::vector<double> landscape(const Evaluator &ev, std::span<const double> ys, std::span<const int> etas)
            {
                check_points(ev, ys, etas);
                std::vector<double> out(ys.size() * etas.size());
                const long long total = (long long)out.size();
                const std::size_t ny = ys.size();
#pragma omp parallel for schedule(static)
                for (long long idx = 0; idx < total; ++idx)
                {
                    const std::size_t e = std::size_t(idx) / ny, i = std::size_t(idx) % ny;
                    out[std::size_t(idx)] = ev.metric(ys[i], etas[e]);
                }
                return out;
            }
        }
    }
}
