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

#include "hetsim/config.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>

using namespace hetsim::config;
using nlohmann::json;

namespace {

std::string error_of(const json& j)
{
    try
    {
        (void)from_json(j);
    }
    catch (const ConfigError& e)
    {
        return e.what();
    }
    return {};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text)
{
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST_CASE("defaults survive a JSON round trip")
{
    const ScenarioConfig d;
    const json j = to_json(d);
    CHECK(to_json(from_json(j)) == j);
    CHECK(config_hash(from_json(j)) == config_hash(d));
    CHECK(from_json(json::object()).trials == 200);
}

TEST_CASE("partial overrides keep other defaults")
{
    const auto c = from_json({{"seed", 9}, {"scaling", {{"n_users", 10}}}, {"control_plane", {{"waiting", "average"}}}});
    CHECK(c.seed == 9);
    CHECK(c.scaling.n_users == 10);
    CHECK(c.scaling.densities == ScenarioConfig{}.scaling.densities);
    CHECK(c.control_plane.waiting == hetsim::controlplane::Waiting::average);
    CHECK(c.fading.rho == 0.9);
}

TEST_CASE("unknown keys are rejected with their path")
{
    auto msg = error_of({{"sead", 1}});
    CHECK(msg.find("unknown key 'sead'") != std::string::npos);
    msg = error_of({{"scaling", {{"n_user", 10}}}});
    CHECK(msg.find("unknown key 'scaling.n_user'") != std::string::npos);
}

TEST_CASE("schema and type errors")
{
    CHECK(error_of({{"schema_version", 2}}).find("schema_version") != std::string::npos);
    CHECK(error_of({{"trials", "many"}}).find("trials: wrong type") != std::string::npos);
    CHECK(error_of(json::array()).find("expected an object") != std::string::npos);
    CHECK(error_of({{"fading", 3}}).find("fading") != std::string::npos);
    CHECK(error_of({{"control_plane", {{"waiting", "soon"}}}}).find("control_plane.waiting") != std::string::npos);
}

TEST_CASE("validation names the offending field")
{
    CHECK(error_of({{"trials", 0}}).find("trials") != std::string::npos);
    CHECK(error_of({{"threads", 0}}).find("threads") != std::string::npos);
    CHECK(error_of({{"fading", {{"rho", 1.5}}}}) != "");
    CHECK(error_of({{"scheduler", {{"threshold_db", 0}}}}).find("threshold_db") != std::string::npos);
    CHECK(error_of({{"density", {{"cell_radii_m", json::array()}}}}).find("density.cell_radii_m") != std::string::npos);
    CHECK(error_of({{"distance", {{"distances_m", json::array({500.0})}}}}).find("distance.distances_m") != std::string::npos);
    CHECK(error_of({{"scaling", {{"macro_protection", "none"}}}}).find("macro_protection") != std::string::npos);
    CHECK(error_of({{"density", {{"cooperation", "mesh"}}}}).find("cooperation") != std::string::npos);
    CHECK(error_of({{"codec", {{"coordination_fraction", 2.0}}}}).find("coordination_fraction") != std::string::npos);
    CHECK(error_of({{"codec", {{"q", 0}}}}) != "");
    CHECK(error_of({{"control_plane", {{"tti_ms", 0.0}}}}) != "");
}

TEST_CASE("hash tracks results-relevant fields only")
{
    ScenarioConfig a;
    ScenarioConfig b = a;
    b.threads = 8;
    CHECK(config_hash(a) == config_hash(b));
    b.seed = 2;
    CHECK(config_hash(a) != config_hash(b));
    b = a;
    b.scaling.macro_protection = "background";
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("trials override")
{
    ScenarioConfig c;
    CHECK(c.trials_for(0) == 200);
    CHECK(c.trials_for(7) == 7);
}

TEST_CASE("fading at speed scales coherence time")
{
    const FadingConfig f;
    CHECK(f.at_speed(5.0).coherence_time_ms() == doctest::Approx(5.0));
    CHECK(f.at_speed(30.0).coherence_time_ms() == doctest::Approx(5.0 / 6.0));
    CHECK(f.at_speed(1.0).coherence_time_ms() == doctest::Approx(25.0));
}

TEST_CASE("load accepts comments and reports file problems")
{
    const auto ok = temp_file("hetsim_cfg_ok.json", "// header\n{\"seed\": 4 /* inline */}\n");
    CHECK(load(ok).seed == 4);
    const auto broken = temp_file("hetsim_cfg_broken.json", "{\"seed\": }");
    CHECK_THROWS_AS(load(broken), ConfigError);
    CHECK_THROWS_AS(load(std::filesystem::temp_directory_path() / "hetsim_no_such_file.json"), ConfigError);
    std::filesystem::remove(ok);
    std::filesystem::remove(broken);
}
