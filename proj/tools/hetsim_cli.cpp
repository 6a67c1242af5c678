// SPDX-License-Identifier: Apache-2.0
//
// hetsim: system-level simulator for coordinated dense cellular networks
// Copyright (C) 2026 The hetsim authors
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

// hetsim command-line driver: runs the experiments and writes one CSV per
// experiment plus a JSON manifest into the output directory.

#include "hetsim/config.hpp"
#include "hetsim/experiments.hpp"
#include "hetsim/records.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace hetsim;

namespace {

struct Options
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> threads;
    std::optional<std::string> out;
};

template <class T>
std::optional<T> env_number(const char* name)
{
    const char* v = std::getenv(name);
    if (!v || !*v)
        return std::nullopt;
    try
    {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != std::string(v).size())
            throw std::invalid_argument(name);
        return static_cast<T>(x);
    }
    catch (const std::exception&)
    {
        throw config::ConfigError(std::string("environment variable ") + name + " is not a non-negative integer");
    }
}

config::ScenarioConfig resolve(const Options& o, fs::path& out_dir)
{
    config::ScenarioConfig cfg = o.config_path.empty() ? config::ScenarioConfig{} : config::load(o.config_path);

    // Precedence: config file < environment < command line.
    if (auto v = env_number<std::uint64_t>("HETSIM_SEED"))
        cfg.seed = *v;
    if (auto v = env_number<std::size_t>("HETSIM_TRIALS"))
        cfg.trials = *v;
    if (auto v = env_number<std::size_t>("HETSIM_THREADS"))
        cfg.threads = *v;
    out_dir = "results";
    if (const char* v = std::getenv("HETSIM_OUT"); v && *v)
        out_dir = v;

    const bool trials_overridden = o.trials.has_value() || std::getenv("HETSIM_TRIALS");
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.trials)
        cfg.trials = *o.trials;
    if (o.threads)
        cfg.threads = *o.threads;
    if (o.out)
        out_dir = *o.out;
    if (trials_overridden)
        cfg.density.trials = cfg.distance.trials = cfg.scaling.trials = cfg.comp_gain.trials = 0;
    cfg.validate();
    return cfg;
}

void check_table(const records::SweepTable& t)
{
    for (const auto& r : t.records)
        if (!std::isfinite(r.value) || !(r.ci95_half_width >= 0.0) || r.trials == 0)
            throw std::runtime_error(t.experiment + ": invalid record for metric " + r.metric);
}

void write_json(const fs::path& p, const nlohmann::json& j)
{
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + p.string());
    out << j.dump(2) << '\n';
}

int run(const std::vector<std::string>& names, const Options& o)
{
    fs::path out_dir;
    const auto cfg = resolve(o, out_dir);
    if (names.empty())
    {
        std::printf("%s\n", config::to_json(cfg).dump(2).c_str());
        return 0;
    }
    fs::create_directories(out_dir);

    std::vector<records::ManifestFile> files;
    std::vector<std::string> aux;
    for (const auto& name : names)
    {
        const auto start = std::chrono::steady_clock::now();
        records::SweepTable table;
        if (name == "density")
            table = experiments::run_density_sweep(cfg);
        else if (name == "distance")
            table = experiments::run_distance_sweep(cfg);
        else if (name == "scaling")
        {
            nlohmann::json audit;
            table = experiments::run_scaling_experiment(cfg, &audit);
            write_json(out_dir / "scaling_decisions.json", audit);
            aux.push_back("scaling_decisions.json");
        }
        else if (name == "comp_gain")
            table = experiments::run_comp_gain_experiment(cfg);
        else if (name == "codec")
            table = experiments::run_codec_bench(cfg);
        else if (name == "budget")
            table = experiments::emit_budget_tables(cfg);
        check_table(table);
        files.push_back(records::write_table(table, out_dir));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::fprintf(stderr, "%-10s %5zu records  %8.2f s  -> %s\n", name.c_str(), table.records.size(), secs,
                     (out_dir / files.back().path).string().c_str());
    }
    write_json(out_dir / "timeline.json", experiments::timelines(cfg));
    aux.push_back("timeline.json");
    write_json(out_dir / "manifest.json", records::make_manifest(cfg, files, aux));
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hetsim: dense HetNet CoMP simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    std::uint64_t seed = 0;
    std::size_t trials = 0, threads = 0;
    std::string out;
    app.add_option("--config", o.config_path, "Scenario config (JSON)")->check(CLI::ExistingFile);
    auto* seed_opt = app.add_option("--seed", seed, "Base seed (env HETSIM_SEED)");
    auto* trials_opt = app.add_option("--trials", trials, "Monte-Carlo trials for every experiment (env HETSIM_TRIALS)")
                           ->check(CLI::PositiveNumber);
    auto* threads_opt = app.add_option("--threads", threads, "Worker threads (env HETSIM_THREADS)")
                            ->check(CLI::PositiveNumber);
    auto* out_opt = app.add_option("--out", out, "Output directory (env HETSIM_OUT, default ./results)");

    const std::vector<std::pair<std::string, std::vector<std::string>>> commands{
        {"density", {"density"}},
        {"distance", {"distance"}},
        {"scaling", {"scaling"}},
        {"comp-gain", {"comp_gain"}},
        {"codec", {"codec"}},
        {"budget", {"budget"}},
        {"all", {"budget", "codec", "distance", "density", "scaling", "comp_gain"}},
        {"show-config", {}},
    };
    std::vector<std::string> selected;
    for (const auto& [cmd, exps] : commands)
    {
        const std::string help = cmd == "all"           ? "Run every experiment"
                                 : cmd == "show-config" ? "Print the resolved config and exit"
                                                        : "Run the " + cmd + " experiment";
        auto* sub = app.add_subcommand(cmd, help);
        sub->callback([&selected, e = exps] { selected = e; });
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        return app.exit(e);
    }

    if (*seed_opt)
        o.seed = seed;
    if (*trials_opt)
        o.trials = trials;
    if (*threads_opt)
        o.threads = threads;
    if (*out_opt)
        o.out = out;

    try
    {
        return run(selected, o);
    }
    catch (const config::ConfigError& e)
    {
        std::fprintf(stderr, "hetsim: %s\n", e.what());
        return 2;
    }
    catch (const std::exception& e)
    {
        std::fprintf(stderr, "hetsim: %s\n", e.what());
        return 1;
    }
}
