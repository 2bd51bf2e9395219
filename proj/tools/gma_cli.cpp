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

// Command-line experiment harness.

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "gma/experiment.hpp"

namespace
{
    struct Options
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> seeds;
        std::string out;
        std::string schemes;
        std::optional<double> grid_step;
    };

    void add_common(CLI::App *cmd, Options &o, bool with_schemes)
    {
        cmd->add_option("--config", o.config, "JSON configuration file");
        cmd->add_option("--seed", o.seed, "master seed");
        cmd->add_option("--seeds", o.seeds, "number of trials");
        cmd->add_option("--out", o.out, "CSV output path (stdout when omitted)");
        cmd->add_option("--grid-step", o.grid_step, "position search step in meters");
        if (with_schemes)
            cmd->add_option("--scheme", o.schemes, "comma-separated schemes: gma,fpa,ma,oracle");
    }

    gma::ExperimentConfig build_config(const Options &o)
    {
        gma::ExperimentConfig cfg = o.config.empty() ? gma::ExperimentConfig{} : gma::load_config(o.config);
        if (o.seed)
            cfg.seed = *o.seed;
        if (o.seeds)
            cfg.trials = *o.seeds;
        if (o.grid_step)
            cfg.grid_step_m = *o.grid_step;
        if (!o.schemes.empty())
            cfg.schemes = gma::split_schemes(o.schemes);
        return cfg;
    }

    std::string command_line(int argc, char **argv)
    {
        std::string s;
        for (int i = 0; i < argc; ++i)
            s += (i ? " " : "") + std::string(argv[i]);
        return s;
    }

    // Writes `body` to the CSV target and the metadata sidecar next to it.
    void emit(const Options &o, const std::string &body, const nlohmann::json &meta)
    {
        if (o.out.empty())
        {
            std::cout << body;
            return;
        }
        std::ofstream csv(o.out, std::ios::binary);
        if (!csv)
            throw std::runtime_error("cannot write '" + o.out + "'");
        csv << body;
        std::ofstream side(o.out + ".meta.json");
        if (!side)
            throw std::runtime_error("cannot write '" + o.out + ".meta.json'");
        side << meta.dump(2) << '\n';
    }

    void summarize(const std::vector<gma::TrialRecord> &records)
    {
        std::map<std::tuple<std::string, int, double>, std::pair<double, std::size_t>> acc;
        for (const auto &r : records)
        {
            auto &a = acc[{r.scheme, r.M, r.y_over_d}];
            a.first += r.metric;
            ++a.second;
        }
        for (const auto &[key, a] : acc)
            std::fprintf(stderr, "%-7s M=%-4d Y/D=%-5g trials=%-5zu mean metric=%.6g\n", std::get<0>(key).c_str(),
                         std::get<1>(key), std::get<2>(key), a.second, a.first / double(a.second));
    }

    void run_records(const Options &o, gma::ExperimentConfig cfg, const std::string &cmd, bool sweep)
    {
        cfg.validate();
        const auto t0 = std::chrono::steady_clock::now();
        const auto records = sweep ? gma::run_sweep(cfg) : gma::run_experiment(cfg);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream csv;
        gma::write_csv(csv, records);
        auto meta = gma::run_metadata(cfg, cmd, records);
        meta["wall_seconds"] = wall;
        emit(o, csv.str(), meta);
        summarize(records);
    }

    void run_landscapes(const Options &o, const gma::ExperimentConfig &cfg, const std::string &cmd)
    {
        cfg.validate();
        const std::size_t n = o.seeds.value_or(1);
        std::ostringstream csv;
        nlohmann::json gaps = nlohmann::json::array();
        const double unit = cfg.scenario.array().physical_length();
        for (std::size_t i = 0; i < n; ++i)
        {
            const std::uint64_t seed = gma::trial_seed(cfg.seed, i);
            const gma::Landscape ls = gma::run_landscape(cfg, seed);
            gma::write_landscape_csv(csv, seed, ls, unit, i == 0);
            gaps.push_back({{"seed", seed}, {"max", ls.max}, {"min", ls.min}, {"gap", ls.gap},
                            {"gap_unit", ls.gap_in_db ? "dB" : "bits/s/Hz"}});
            std::fprintf(stderr, "seed=%llu max=%.6g min=%.6g gap=%.4g %s\n", (unsigned long long)seed, ls.max,
                         ls.min, ls.gap, ls.gap_in_db ? "dB" : "bits/s/Hz");
        }
        if (n == 0)
            csv << "seed,y,y_over_D,eta,metric\n";
        auto meta = gma::run_metadata(cfg, cmd, {});
        meta["landscapes"] = gaps;
        emit(o, csv.str(), meta);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Group movable antenna position and sparsity optimization experiments"};
    app.require_subcommand(1);

    Options o;
    auto *land = app.add_subcommand("landscape", "metric over the (y, eta) grid for one or more seeds");
    auto *single = app.add_subcommand("single-user", "Monte-Carlo run with one user");
    auto *multi = app.add_subcommand("multi-user", "Monte-Carlo run with the configured users");
    auto *sweep = app.add_subcommand("sweep", "region size x array size sweep of gma and fpa");
    auto *compare = app.add_subcommand("compare", "gma, fpa and ma on the same trials");
    add_common(land, o, false);
    add_common(single, o, true);
    add_common(multi, o, true);
    add_common(sweep, o, false);
    add_common(compare, o, true);

    CLI11_PARSE(app, argc, argv);

    try
    {
        gma::ExperimentConfig cfg = build_config(o);
        const std::string cmd = command_line(argc, argv);
        if (cfg.schemes.empty())
            cfg.schemes = compare->parsed() ? std::vector<std::string>{"gma", "fpa", "ma"}
                                            : std::vector<std::string>{"gma", "fpa"};
        if (land->parsed())
            run_landscapes(o, cfg, cmd);
        else if (single->parsed())
        {
            cfg.scenario.users = 1;
            run_records(o, cfg, cmd, false);
        }
        else if (multi->parsed() || compare->parsed())
            run_records(o, cfg, cmd, false);
        else if (sweep->parsed())
            run_records(o, cfg, cmd, true);
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
