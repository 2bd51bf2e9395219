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

#include "gma/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gma/sca_optimizer.hpp"

namespace gma
{
    using nlohmann::json;

    namespace
    {
        void reject_unknown(const json &j, const std::string &where, const std::set<std::string> &allowed)
        {
            if (!j.is_object())
                throw std::invalid_argument("config: '" + where + "' must be an object");
            for (const auto &item : j.items())
                if (!allowed.count(item.key()))
                    throw std::invalid_argument("config: unknown key '" + item.key() + "' in " + where);
        }

        template <class T>
        void read(const json &j, const char *key, T &out)
        {
            if (!j.contains(key))
                return;
            try
            {
                out = j.at(key).get<T>();
            }
            catch (const json::exception &e)
            {
                throw std::invalid_argument(std::string("config: bad value for '") + key + "': " + e.what());
            }
        }

        const std::set<std::string> known_schemes{"gma", "fpa", "ma", "oracle"};

        std::string fmt17(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        OptimizerSettings optimizer_for(const ExperimentConfig &cfg, const ArrayConfig &array, double ms_wavelengths)
        {
            OptimizerSettings s = cfg.optimizer;
            s.multistart_grid_step = ms_wavelengths * array.lambda;
            return s;
        }

        double multistart_wavelengths(const ExperimentConfig &cfg)
        {
            return cfg.multistart_step_wavelengths;
        }

        ExperimentConfig with_array(const ExperimentConfig &cfg, int elements, double ratio, int reference)
        {
            ExperimentConfig c = cfg;
            c.scenario.elements = elements;
            c.scenario.region_ratio = ratio;
            c.scenario.region_reference_elements = reference;
            return c;
        }

        template <class Work>
        std::vector<TrialRecord> over_trials(std::size_t trials, Work &&work)
        {
            std::vector<std::vector<TrialRecord>> per_trial(trials);
            std::vector<std::exception_ptr> errors(trials);
            const long long n = (long long)trials;
#pragma omp parallel for schedule(dynamic)
            for (long long i = 0; i < n; ++i)
            {
                try
                {
                    per_trial[std::size_t(i)] = work(std::size_t(i));
                }
                catch (...)
                {
                    errors[std::size_t(i)] = std::current_exception();
                }
            }
            for (auto &e : errors)
                if (e)
                    std::rethrow_exception(e);
            std::vector<TrialRecord> out;
            for (auto &v : per_trial)
                out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
            return out;
        }
    }

    GridSpec ExperimentConfig::grid(const ArrayConfig &cfg) const
    {
        GridSpec g;
        g.step = grid_step_m.value_or(grid_step_wavelengths * cfg.lambda);
        g.refine_levels = refine_levels;
        g.refine_factor = refine_factor;
        g.refine_candidates = refine_candidates;
        return g;
    }

    void ExperimentConfig::validate() const
    {
        scenario.validate();
        optimizer.validate();
        grid(scenario.array()).validate();
        if (!(multistart_step_wavelengths > 0.0))
            throw std::invalid_argument("config: multistart step must be positive");
        if (!(oracle_step_wavelengths > 0.0))
            throw std::invalid_argument("config: oracle step must be positive");
        for (const auto &s : schemes)
            if (!known_schemes.count(s))
                throw std::invalid_argument("config: unknown scheme '" + s + "'");
        if (landscape.y_points < 1)
            throw std::invalid_argument("config: landscape needs at least one position");
        if (!(landscape.y_over_d_max >= 0.0))
            throw std::invalid_argument("config: landscape.y_over_d_max must be non-negative");
        if (sweep.reference_elements < 2)
            throw std::invalid_argument("config: sweep.reference_elements must be at least 2");
        for (int m : sweep.elements)
            if (m < scenario.rf_chains)
                throw std::invalid_argument("config: sweep element count below the number of RF chains");
        for (double r : sweep.region_ratios)
            if (!(r >= 0.0))
                throw std::invalid_argument("config: sweep region ratios must be non-negative");
    }

    ExperimentConfig parse_config(const json &j)
    {
        reject_unknown(j, "config",
                       {"scenario", "optimizer", "grid", "oracle_step_wavelengths", "trials", "seed", "schemes",
                        "record_timing", "sweep", "landscape"});
        ExperimentConfig cfg;

        if (j.contains("scenario"))
        {
            const json &s = j.at("scenario");
            reject_unknown(s, "scenario",
                           {"carrier_hz", "users", "center", "radius", "paths_per_user", "scatterer_range",
                            "aoa_range", "p_tx_dbm", "n0_dbm_hz", "bandwidth_hz", "rf_chains", "elements", "y_min",
                            "region_ratio", "region_reference_elements", "constrain_aperture", "fpa_position"});
            auto &p = cfg.scenario;
            read(s, "carrier_hz", p.carrier_hz);
            read(s, "users", p.users);
            read(s, "center", p.center);
            read(s, "radius", p.radius);
            read(s, "paths_per_user", p.paths_per_user);
            read(s, "scatterer_range", p.scatterer_range);
            read(s, "aoa_range", p.aoa_range);
            read(s, "p_tx_dbm", p.p_tx_dbm);
            read(s, "n0_dbm_hz", p.n0_dbm_hz);
            read(s, "bandwidth_hz", p.bandwidth_hz);
            read(s, "rf_chains", p.rf_chains);
            read(s, "elements", p.elements);
            read(s, "y_min", p.y_min);
            read(s, "region_ratio", p.region_ratio);
            read(s, "region_reference_elements", p.region_reference_elements);
            read(s, "constrain_aperture", p.constrain_aperture);
            if (s.contains("fpa_position") && !s.at("fpa_position").is_null())
            {
                double v = 0.0;
                read(s, "fpa_position", v);
                p.fpa_position = v;
            }
        }

        if (j.contains("optimizer"))
        {
            const json &o = j.at("optimizer");
            reject_unknown(o, "optimizer",
                           {"epsilon", "max_sca_iters", "max_alt_iters", "multistart_step_wavelengths", "eta_init",
                            "warm_start"});
            read(o, "epsilon", cfg.optimizer.epsilon);
            read(o, "max_sca_iters", cfg.optimizer.max_sca_iters);
            read(o, "max_alt_iters", cfg.optimizer.max_alt_iters);
            read(o, "eta_init", cfg.optimizer.eta_init);
            read(o, "warm_start", cfg.optimizer.warm_start);
            read(o, "multistart_step_wavelengths", cfg.multistart_step_wavelengths);
        }

        if (j.contains("grid"))
        {
            const json &g = j.at("grid");
            reject_unknown(g, "grid", {"step_wavelengths", "step_m", "refine_levels", "refine_factor", "refine_candidates"});
            read(g, "step_wavelengths", cfg.grid_step_wavelengths);
            if (g.contains("step_m"))
            {
                double v = 0.0;
                read(g, "step_m", v);
                cfg.grid_step_m = v;
            }
            read(g, "refine_levels", cfg.refine_levels);
            read(g, "refine_factor", cfg.refine_factor);
            read(g, "refine_candidates", cfg.refine_candidates);
        }

        read(j, "oracle_step_wavelengths", cfg.oracle_step_wavelengths);
        read(j, "trials", cfg.trials);
        read(j, "seed", cfg.seed);
        read(j, "schemes", cfg.schemes);
        read(j, "record_timing", cfg.record_timing);

        if (j.contains("sweep"))
        {
            const json &s = j.at("sweep");
            reject_unknown(s, "sweep", {"region_ratios", "elements", "reference_elements"});
            read(s, "region_ratios", cfg.sweep.region_ratios);
            read(s, "elements", cfg.sweep.elements);
            read(s, "reference_elements", cfg.sweep.reference_elements);
        }

        if (j.contains("landscape"))
        {
            const json &l = j.at("landscape");
            reject_unknown(l, "landscape", {"y_points", "y_over_d_max", "etas"});
            read(l, "y_points", cfg.landscape.y_points);
            read(l, "y_over_d_max", cfg.landscape.y_over_d_max);
            read(l, "etas", cfg.landscape.etas);
        }

        cfg.validate();
        return cfg;
    }

    ExperimentConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("config: cannot open '" + path + "'");
        json j;
        try
        {
            in >> j;
        }
        catch (const json::exception &e)
        {
            throw std::invalid_argument("config: parse error in '" + path + "': " + e.what());
        }
        return parse_config(j);
    }

    json to_json(const ExperimentConfig &cfg)
    {
        const auto &p = cfg.scenario;
        json j;
        j["scenario"] = {{"carrier_hz", p.carrier_hz},
                         {"users", p.users},
                         {"center", p.center},
                         {"radius", p.radius},
                         {"paths_per_user", p.paths_per_user},
                         {"scatterer_range", p.scatterer_range},
                         {"aoa_range", p.aoa_range},
                         {"p_tx_dbm", p.p_tx_dbm},
                         {"n0_dbm_hz", p.n0_dbm_hz},
                         {"bandwidth_hz", p.bandwidth_hz},
                         {"rf_chains", p.rf_chains},
                         {"elements", p.elements},
                         {"y_min", p.y_min},
                         {"region_ratio", p.region_ratio},
                         {"region_reference_elements", p.region_reference_elements},
                         {"constrain_aperture", p.constrain_aperture},
                         {"fpa_position", p.fpa_position ? json(*p.fpa_position) : json(nullptr)}};
        j["optimizer"] = {{"epsilon", cfg.optimizer.epsilon},
                          {"max_sca_iters", cfg.optimizer.max_sca_iters},
                          {"max_alt_iters", cfg.optimizer.max_alt_iters},
                          {"multistart_step_wavelengths", multistart_wavelengths(cfg)},
                          {"eta_init", cfg.optimizer.eta_init},
                          {"warm_start", cfg.optimizer.warm_start}};
        j["grid"] = {{"step_wavelengths", cfg.grid_step_wavelengths},
                     {"refine_levels", cfg.refine_levels},
                     {"refine_factor", cfg.refine_factor},
                     {"refine_candidates", cfg.refine_candidates}};
        if (cfg.grid_step_m)
            j["grid"]["step_m"] = *cfg.grid_step_m;
        j["oracle_step_wavelengths"] = cfg.oracle_step_wavelengths;
        j["trials"] = cfg.trials;
        j["seed"] = cfg.seed;
        j["schemes"] = cfg.schemes;
        j["record_timing"] = cfg.record_timing;
        j["sweep"] = {{"region_ratios", cfg.sweep.region_ratios},
                      {"elements", cfg.sweep.elements},
                      {"reference_elements", cfg.sweep.reference_elements}};
        j["landscape"] = {{"y_points", cfg.landscape.y_points},
                          {"y_over_d_max", cfg.landscape.y_over_d_max},
                          {"etas", cfg.landscape.etas}};
        return j;
    }

    std::vector<TrialRecord> run_trial(const ExperimentConfig &cfg, std::uint64_t seed,
                                       std::span<const std::string> schemes, std::span<const Candidate> injected)
    {
        ScenarioParams params = cfg.scenario;
        params.seed = seed;
        const Scenario sc = sample_scenario(params);
        const Evaluator ev = sc.evaluator();
        const ArrayConfig &array = sc.array;
        const GridSpec grid = cfg.grid(array);
        const OptimizerSettings opt = optimizer_for(cfg, array, multistart_wavelengths(cfg));

        auto base = [&](const std::string &scheme) {
            TrialRecord r;
            r.seed = seed;
            r.scheme = scheme;
            r.K = int(ev.num_users());
            r.M = array.M;
            r.N = array.N;
            r.y_over_d = params.region_ratio;
            r.reference_elements = params.region_reference_elements;
            r.eta_max = ev.eta_max();
            return r;
        };
        using clock = std::chrono::steady_clock;
        auto elapsed = [&](clock::time_point t0) {
            return cfg.record_timing ? std::chrono::duration<double, std::milli>(clock::now() - t0).count() : 0.0;
        };

        auto want = [&](const char *s) { return std::find(schemes.begin(), schemes.end(), s) != schemes.end(); };
        std::optional<GmaSolution> gma;
        double gma_ms = 0.0;
        if (want("gma") || want("ma"))
        {
            const auto t0 = clock::now();
            if (ev.single_user())
            {
                std::vector<Candidate> seeds{{fpa_position(array), 1}};
                seeds.insert(seeds.end(), injected.begin(), injected.end());
                gma = optimize_single_user(ev, opt, seeds);
            }
            else
                gma = optimize_multiuser(ev, grid, opt, injected);
            gma_ms = elapsed(t0);
        }

        std::vector<TrialRecord> out;
        for (const auto &scheme : schemes)
        {
            TrialRecord r = base(scheme);
            const auto t0 = clock::now();
            if (scheme == "gma")
            {
                r.y_star = gma->y_star;
                r.eta_star = gma->eta_star;
                r.metric = gma->objective;
                r.evals = gma->evals;
                r.wall_ms = gma_ms;
            }
            else if (scheme == "fpa")
            {
                r.y_star = fpa_position(array);
                r.eta_star = 1;
                r.metric = fpa_metric(ev);
                r.evals = 1;
                r.wall_ms = elapsed(t0);
            }
            else if (scheme == "ma")
            {
                const MaResult ma = ma_optimize(ev, grid, opt, layout_from_gma(gma->y_star, gma->eta_star, array));
                r.y_star = ma.layout.positions().front();
                r.eta_star = 0;
                r.metric = ma.metric;
                r.evals = ma.evals;
                r.wall_ms = elapsed(t0);
                r.layout = ma.layout;
            }
            else if (scheme == "oracle")
            {
                const OracleResult o = exhaustive_oracle(ev, cfg.oracle_step_wavelengths * array.lambda);
                r.y_star = o.y;
                r.eta_star = o.eta;
                r.metric = o.metric;
                r.evals = o.evals;
                r.wall_ms = elapsed(t0);
            }
            else
                throw std::invalid_argument("unknown scheme '" + scheme + "'");
            out.push_back(std::move(r));
        }
        return out;
    }

    std::vector<TrialRecord> run_experiment(const ExperimentConfig &cfg)
    {
        cfg.validate();
        std::vector<std::string> schemes = cfg.schemes.empty() ? std::vector<std::string>{"gma"} : cfg.schemes;
        return over_trials(cfg.trials, [&](std::size_t i) {
            return run_trial(cfg, trial_seed(cfg.seed, i), schemes);
        });
    }

    std::vector<TrialRecord> run_sweep(const ExperimentConfig &cfg)
    {
        cfg.validate();
        std::vector<int> elements = cfg.sweep.elements;
        std::vector<double> ratios = cfg.sweep.region_ratios;
        std::sort(elements.begin(), elements.end());
        std::sort(ratios.begin(), ratios.end());
        const std::vector<std::string> schemes{"gma", "fpa"};

        return over_trials(cfg.trials, [&](std::size_t i) {
            const std::uint64_t seed = trial_seed(cfg.seed, i);
            std::vector<Candidate> solved;
            std::vector<TrialRecord> out;
            for (int m : elements)
                for (double ratio : ratios)
                {
                    const ExperimentConfig c = with_array(cfg, m, ratio, cfg.sweep.reference_elements);
                    const ArrayConfig array = c.scenario.array();
                    const int eta_max = max_sparsity(array);
                    std::vector<Candidate> feasible;
                    for (const auto &s : solved)
                        if (s.eta <= eta_max && is_feasible(array, s.y, s.eta))
                            feasible.push_back(s);
                    auto recs = run_trial(c, seed, schemes, feasible);
                    for (auto &r : recs)
                    {
                        if (r.scheme == "gma")
                            solved.push_back({r.y_star, r.eta_star});
                        out.push_back(std::move(r));
                    }
                }
            return out;
        });
    }

    Landscape run_landscape(const ExperimentConfig &cfg, std::uint64_t seed)
    {
        ScenarioParams params = cfg.scenario;
        params.seed = seed;
        const Scenario sc = sample_scenario(params);
        const Evaluator ev = sc.evaluator();
        const ArrayConfig &a = sc.array;
        double hi = a.y_max;
        if (cfg.landscape.y_over_d_max > 0.0)
            hi = std::min(hi, a.y_min + cfg.landscape.y_over_d_max * a.physical_length());
        const auto ys = linspace(a.y_min, hi, cfg.landscape.y_points);
        std::vector<int> etas = cfg.landscape.etas;
        if (etas.empty())
            for (int e = 1; e <= ev.eta_max(); ++e)
                etas.push_back(e);
        return landscape(ev, ys, etas);
    }

    double reevaluate(const ExperimentConfig &cfg, const TrialRecord &rec)
    {
        ScenarioParams params = cfg.scenario;
        params.seed = rec.seed;
        params.elements = rec.M;
        params.region_ratio = rec.y_over_d;
        params.region_reference_elements = rec.reference_elements;
        const Scenario sc = sample_scenario(params);
        const Evaluator ev = sc.evaluator();
        if (rec.layout)
            return ev.metric_from_objective(ev.objective_at_offsets(rec.layout->anchor, rec.layout->offsets));
        return ev.metric(rec.y_star, rec.eta_star);
    }

    void write_csv(std::ostream &os, std::span<const TrialRecord> records)
    {
        os << "seed,scheme,K,M,N,Y_over_D,eta_max,y_star,eta_star,metric,evals,wall_ms\n";
        for (const auto &r : records)
            os << r.seed << ',' << r.scheme << ',' << r.K << ',' << r.M << ',' << r.N << ',' << fmt17(r.y_over_d) << ','
               << r.eta_max << ',' << fmt17(r.y_star) << ',' << r.eta_star << ',' << fmt17(r.metric) << ',' << r.evals
               << ',' << fmt17(r.wall_ms) << '\n';
    }

    void write_landscape_csv(std::ostream &os, std::uint64_t seed, const Landscape &ls, double length_unit, bool header)
    {
        if (header)
            os << "seed,y,y_over_D,eta,metric\n";
        const double y0 = ls.ys.empty() ? 0.0 : ls.ys.front();
        for (std::size_t e = 0; e < ls.etas.size(); ++e)
            for (std::size_t i = 0; i < ls.ys.size(); ++i)
                os << seed << ',' << fmt17(ls.ys[i]) << ',' << fmt17((ls.ys[i] - y0) / length_unit) << ','
                   << ls.etas[e] << ',' << fmt17(ls.at(e, i)) << '\n';
    }

    json run_metadata(const ExperimentConfig &cfg, const std::string &command, std::span<const TrialRecord> records)
    {
        const auto &p = cfg.scenario;
        const ArrayConfig array = p.array();
        json meta;
        meta["command"] = command;
        meta["config"] = to_json(cfg);
        meta["derived"] = {{"wavelength_m", array.lambda},
                           {"element_spacing_m", array.d},
                           {"y_min_m", array.y_min},
                           {"y_max_m", array.y_max},
                           {"eta_max", max_sparsity(array)},
                           {"noise_power_dbm", noise_power_dbm(p.n0_dbm_hz, p.bandwidth_hz)},
                           {"p_bar_linear", p.p_bar()},
                           {"fpa_position_m", fpa_position(array)},
                           {"params_hash", params_hash(p)}};
        meta["model"] = {
            {"path_gain", "alpha = sqrt(beta_k / L) * exp(j*phi), phi ~ U[0, 2pi), beta_k = (lambda / (4 pi r_k))^2"},
            {"bandwidth_hz", p.bandwidth_hz},
            {"fpa", "compact array (eta = 1) at fpa_position_m"},
            {"ma_span", "[y_min, y_max + (M - 1) d], minimum spacing lambda / 2"},
            {"metric", "linear SNR for one user, sum rate in bits/s/Hz otherwise"},
            {"seed_derivation", "trial i uses splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15)"}};
        json layouts = json::array();
        for (const auto &r : records)
            if (r.layout)
                layouts.push_back({{"seed", r.seed}, {"M", r.M}, {"positions_m", r.layout->positions()},
                                   {"anchor_m", r.layout->anchor}, {"offsets_m", r.layout->offsets}});
        meta["ma_layouts"] = layouts;
        meta["records"] = records.size();
        const std::time_t now = std::time(nullptr);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        meta["timestamp"] = stamp;
        return meta;
    }

    std::vector<std::string> split_schemes(const std::string &list)
    {
        std::vector<std::string> out;
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            item.erase(0, item.find_first_not_of(" \t"));
            item.erase(item.find_last_not_of(" \t") + 1);
            if (item.empty())
                continue;
            if (!known_schemes.count(item))
                throw std::invalid_argument("unknown scheme '" + item + "'");
            out.push_back(item);
        }
        return out;
    }
}
