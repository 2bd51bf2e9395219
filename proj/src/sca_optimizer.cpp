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

#include "gma/sca_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gma/kernels.hpp"

namespace gma
{
    void OptimizerSettings::validate() const
    {
        if (!(epsilon > 0.0))
            throw std::invalid_argument("OptimizerSettings: epsilon must be positive");
        if (max_sca_iters < 1 || max_alt_iters < 1)
            throw std::invalid_argument("OptimizerSettings: iteration caps must be at least 1");
        if (multistart_grid_step && !(*multistart_grid_step > 0.0))
            throw std::invalid_argument("OptimizerSettings: multistart grid step must be positive");
        if (eta_init < 0)
            throw std::invalid_argument("OptimizerSettings: eta_init must be non-negative");
    }

    PathMatrix path_matrix(int eta, std::span<const Path> paths, const ArrayConfig &cfg)
    {
        validate_paths(paths);
        PathMatrix A;
        A.wavenumber = cfg.wavenumber();
        A.a_mat.resize(cfg.N, Eigen::Index(paths.size()));
        for (std::size_t l = 0; l < paths.size(); ++l)
        {
            A.a_mat.col(Eigen::Index(l)) = paths[l].gain * sparse_steering(eta, paths[l].aoa, cfg);
            A.sin_aoa.push_back(std::sin(paths[l].aoa));
        }
        return A;
    }

    CVector phase_vector(double y, const PathMatrix &A)
    {
        CVector f(Eigen::Index(A.sin_aoa.size()));
        for (std::size_t l = 0; l < A.sin_aoa.size(); ++l)
            f[Eigen::Index(l)] = unit_phasor(A.wavenumber, y, A.sin_aoa[l]);
        return f;
    }

    CVector phase_vector(double y, std::span<const Path> paths, const ArrayConfig &cfg)
    {
        CVector f(Eigen::Index(paths.size()));
        for (std::size_t l = 0; l < paths.size(); ++l)
            f[Eigen::Index(l)] = unit_phasor(cfg.wavenumber(), y, std::sin(paths[l].aoa));
        return f;
    }

    double position_objective(const PathMatrix &A, double y)
    {
        return (A.a_mat * phase_vector(y, A)).squaredNorm();
    }

    ScaState expand_at(const PathMatrix &A, double y_j, int iteration)
    {
        ScaState st;
        st.y_j = y_j;
        st.iteration = iteration;
        const CVector f = phase_vector(y_j, A);
        const CVector Af = A.a_mat * f;
        st.objective = Af.squaredNorm();
        st.b = A.a_mat.adjoint() * Af;
        double sum_abs = 0.0;
        for (Eigen::Index i = 0; i < st.b.size(); ++i)
            sum_abs += std::abs(st.b[i]);
        st.xi = A.wavenumber * A.wavenumber * sum_abs;
        st.g_prime = surrogate_g_prime(st, A, y_j);
        return st;
    }

    double surrogate_g(const ScaState &st, const PathMatrix &A, double y)
    {
        double g = 0.0;
        for (Eigen::Index i = 0; i < st.b.size(); ++i)
            g += std::abs(st.b[i]) * std::cos(A.wavenumber * y * A.sin_aoa[i] - std::arg(st.b[i]));
        return g;
    }

    double surrogate_g_prime(const ScaState &st, const PathMatrix &A, double y)
    {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < st.b.size(); ++i)
            acc += std::abs(st.b[i]) * A.sin_aoa[i] * std::sin(A.wavenumber * y * A.sin_aoa[i] - std::arg(st.b[i]));
        return -A.wavenumber * acc;
    }

    double surrogate_g_second(const ScaState &st, const PathMatrix &A, double y)
    {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < st.b.size(); ++i)
        {
            const double s = A.sin_aoa[i];
            acc += std::abs(st.b[i]) * s * s * std::cos(A.wavenumber * y * s - std::arg(st.b[i]));
        }
        return -A.wavenumber * A.wavenumber * acc;
    }

    double quadratic_minorant(const ScaState &st, const PathMatrix &A, double y)
    {
        const double dy = y - st.y_j;
        return surrogate_g(st, A, st.y_j) + st.g_prime * dy - 0.5 * st.xi * dy * dy;
    }

    StepResult surrogate_step(const ScaState &st, double y_min, double y_max)
    {
        if (!(st.xi > 0.0))
            return {st.y_j, true};
        const double target = st.y_j + st.g_prime / st.xi;
        return {std::clamp(target, y_min, y_max), false};
    }

    PositionResult optimize_position_sca(const PathMatrix &A, double y0, double y_min, double y_max,
                                         const OptimizerSettings &settings)
    {
        if (!(y0 >= y_min && y0 <= y_max))
            throw std::invalid_argument("optimize_position_sca: start outside the movable region");
        ScaState st = expand_at(A, y0);
        PositionResult res{y0, st.objective, {st.objective}, 0};
        for (int it = 1; it <= settings.max_sca_iters; ++it)
        {
            const StepResult step = surrogate_step(st, y_min, y_max);
            if (step.degenerate || step.y == st.y_j)
                break;
            ScaState next = expand_at(A, step.y, it);
            // The minorant guarantees ascent; a decrease can only be rounding at a fixed point.
            if (next.objective < st.objective)
                break;
            const double inc = fractional_increase(st.objective, next.objective);
            st = std::move(next);
            res.y = st.y_j;
            res.objective = st.objective;
            res.trace.push_back(st.objective);
            res.iterations = it;
            if (inc < settings.epsilon)
                break;
        }
        return res;
    }

    SparsityResult optimize_sparsity(double y, std::span<const Path> paths, const ArrayConfig &cfg)
    {
        const int eta_max = max_sparsity(cfg);
        std::vector<double> values;
        std::vector<int> etas;
        for (int eta = 1; eta <= eta_max; ++eta)
        {
            if (!is_feasible(cfg, y, eta))
                continue;
            etas.push_back(eta);
            values.push_back(channel_vector(y, eta, paths, cfg).entries.squaredNorm());
        }
        if (etas.empty())
            throw std::invalid_argument("optimize_sparsity: no feasible sparsity level at this position");
        const std::size_t best = argmax_first(values, tie_tolerance);
        return {etas[best], values[best], int(values.size())};
    }

    namespace
    {
        // Best sparsity level at y over the evaluator's canonical objective.
        SparsityResult sparsity_at(const Evaluator &ev, double y)
        {
            std::vector<double> values;
            std::vector<int> etas;
            for (int eta = 1; eta <= ev.eta_max(); ++eta)
                if (is_feasible(ev.config(), y, eta))
                {
                    etas.push_back(eta);
                    values.push_back(ev.objective(y, eta));
                }
            const std::size_t best = argmax_first(values, tie_tolerance);
            return {etas[best], values[best], int(values.size())};
        }
    }

    GmaSolution optimize_single_user(const Evaluator &ev, const OptimizerSettings &settings,
                                     std::span<const Candidate> injected)
    {
        settings.validate();
        if (!ev.single_user())
            throw std::invalid_argument("optimize_single_user: evaluator must hold exactly one user");
        const auto &cfg = ev.config();
        const auto &paths = ev.users()[0];
        const double ms_step = settings.multistart_grid_step.value_or(cfg.lambda / 4.0);

        GmaSolution sol;
        int eta = settings.eta_init > 0 ? std::min(settings.eta_init, largest_feasible_eta(cfg))
                                        : largest_feasible_eta(cfg);

        // Best coarse-grid position at eta, optionally competing with an incumbent position.
        auto coarse_start = [&](int e, std::optional<double> incumbent) {
            const auto [lo, hi] = position_bounds(cfg, e);
            const UniformGrid grid = make_grid(lo, hi, ms_step);
            const auto values = kernels::parallel::sweep(ev, e, grid);
            sol.evals += std::int64_t(grid.count);
            const std::size_t i = argmax_first(values, tie_tolerance);
            if (incumbent)
            {
                const double inc = ev.objective(*incumbent, e);
                ++sol.evals;
                if (!(values[i] > inc))
                    return *incumbent;
            }
            return grid.at(i);
        };

        // Position subproblem by SCA from the best coarse start (and the incumbent, when warm).
        auto solve_position = [&](int e, std::optional<double> incumbent) {
            const auto [lo, hi] = position_bounds(cfg, e);
            const PathMatrix A = path_matrix(e, paths, cfg);
            const PositionResult pos = optimize_position_sca(A, coarse_start(e, incumbent), lo, hi, settings);
            sol.evals += pos.iterations + 1;
            return pos;
        };

        double y = 0.0;
        double current = 0.0;
        if (settings.eta_init == 0 && settings.scan_eta_init)
        {
            bool found = false;
            for (int e = 1; e <= largest_feasible_eta(cfg); ++e)
            {
                const double ye = solve_position(e, std::nullopt).y;
                const double v = ev.objective(ye, e);
                ++sol.evals;
                if (!found || v > current + tie_tolerance * std::abs(current))
                {
                    found = true;
                    eta = e;
                    y = ye;
                    current = v;
                }
            }
        }
        else
        {
            y = coarse_start(eta, std::nullopt);
            current = ev.objective(y, eta);
            ++sol.evals;
        }

        Candidate best{y, eta};
        double best_value = current;
        for (const auto &c : injected)
        {
            const double v = ev.objective(c.y, c.eta);
            ++sol.evals;
            if (v > best_value)
            {
                best = c;
                best_value = v;
            }
        }
        sol.trace.push_back(ev.metric_from_objective(best_value));

        for (int r = 0; r < settings.max_alt_iters; ++r)
        {
            const PositionResult pos =
                solve_position(eta, settings.warm_start ? std::optional<double>(y) : std::nullopt);
            sol.sca_iterations.push_back(pos.iterations);

            const double previous = current;
            const double moved = ev.objective(pos.y, eta);
            ++sol.evals;
            if (moved > current || !settings.warm_start)
            {
                y = pos.y;
                current = moved;
            }

            // Sparsity subproblem by exhaustive search at the new position.
            const SparsityResult sp = sparsity_at(ev, y);
            sol.evals += sp.evals;
            if (sp.objective > current)
            {
                eta = sp.eta;
                current = sp.objective;
            }

            if (current > best_value)
            {
                best = {y, eta};
                best_value = current;
            }
            sol.trace.push_back(ev.metric_from_objective(best_value));
            sol.rounds = r + 1;
            if (fractional_increase(previous, current) < settings.epsilon)
                break;
        }

        sol.y_star = best.y;
        sol.eta_star = best.eta;
        sol.objective = ev.metric_from_objective(best_value);
        return sol;
    }

    GmaSolution optimize_single_user(const PathSet &paths, double p_bar, const ArrayConfig &cfg,
                                     const OptimizerSettings &settings)
    {
        const Evaluator ev({paths}, LinkPowers{{p_bar}}, cfg);
        return optimize_single_user(ev, settings);
    }
}
