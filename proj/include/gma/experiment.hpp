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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gma/baselines.hpp"
#include "gma/multiuser_optimizer.hpp"
#include "gma/scenario.hpp"
#include "gma/solution.hpp"

namespace gma
{
    struct LandscapeSettings
    {
        std::size_t y_points = 1000;
        double y_over_d_max = 0.0; // upper end of the scan in units of (M - 1) d; 0 scans the region
        std::vector<int> etas;     // empty selects every sparsity level
    };

    struct SweepSettings
    {
        std::vector<double> region_ratios{1.0, 2.0, 4.0, 8.0};
        std::vector<int> elements{32, 64, 128};
        int reference_elements = 32;
    };

    struct ExperimentConfig
    {
        ScenarioParams scenario;
        OptimizerSettings optimizer;
        double multistart_step_wavelengths = 0.25;
        double grid_step_wavelengths = 1.0 / 16.0;
        std::optional<double> grid_step_m; // overrides grid_step_wavelengths
        int refine_levels = 2;
        int refine_factor = 8;
        int refine_candidates = 8;
        double oracle_step_wavelengths = 1e-3;
        std::size_t trials = 200;
        std::uint64_t seed = 1;
        std::vector<std::string> schemes;
        bool record_timing = false;
        SweepSettings sweep;
        LandscapeSettings landscape;

        GridSpec grid(const ArrayConfig &cfg) const;
        void validate() const;
    };

    // Rejects unknown keys and ill-typed values with std::invalid_argument.
    ExperimentConfig parse_config(const nlohmann::json &j);
    ExperimentConfig load_config(const std::string &path);
    nlohmann::json to_json(const ExperimentConfig &cfg);

    struct TrialRecord
    {
        std::uint64_t seed = 0;
        std::string scheme; // gma | fpa | ma | oracle
        int K = 0, M = 0, N = 0;
        double y_over_d = 0.0;
        int reference_elements = 0; // region reference array size, 0 means M
        int eta_max = 0;
        double y_star = 0.0; // bottom element position for ma
        int eta_star = 0;    // 0 for ma
        double metric = 0.0;
        std::int64_t evals = 0;
        double wall_ms = 0.0;
        std::optional<MaLayout> layout; // ma only
    };

    // One scenario (trial seed), every requested scheme. `injected` feeds the gma search.
    std::vector<TrialRecord> run_trial(const ExperimentConfig &cfg, std::uint64_t seed,
                                       std::span<const std::string> schemes,
                                       std::span<const Candidate> injected = {});

    // All trials of cfg.scenario. Trials run concurrently; records come back in trial order.
    std::vector<TrialRecord> run_experiment(const ExperimentConfig &cfg);

    // Region-size x array-size sweep of gma and fpa. Within a trial, smaller configurations are
    // solved first and their solutions injected into larger ones.
    std::vector<TrialRecord> run_sweep(const ExperimentConfig &cfg);

    // Landscape for one trial over the configured scan.
    Landscape run_landscape(const ExperimentConfig &cfg, std::uint64_t seed);

    // Metric recomputed from the record's stored configuration.
    double reevaluate(const ExperimentConfig &cfg, const TrialRecord &rec);

    void write_csv(std::ostream &os, std::span<const TrialRecord> records);
    void write_landscape_csv(std::ostream &os, std::uint64_t seed, const Landscape &ls, double length_unit,
                             bool header);

    nlohmann::json run_metadata(const ExperimentConfig &cfg, const std::string &command,
                                std::span<const TrialRecord> records);

    std::vector<std::string> split_schemes(const std::string &list);
}
