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

#include <fstream>
#include <set>

namespace hetsim::config {

using nlohmann::json;

namespace {

class Reader
{
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError(path_ + ": expected an object");
    }

    template <class T>
    void get(const char* key, T& out)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end())
            return;
        try
        {
            out = it->template get<T>();
        }
        catch (const json::exception&)
        {
            throw ConfigError(field(key) + ": wrong type");
        }
    }

    const json* sub(const char* key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                throw ConfigError("unknown key '" + field(it.key().c_str()) + "'");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw ConfigError("invalid config: " + what);
}

template <class T>
void require_nonempty(const std::vector<T>& v, const std::string& what)
{
    require(!v.empty(), what + " must not be empty");
}

} // namespace

fading::FadingParams FadingConfig::at_speed(double speed_kmph) const
{
    return params().scaled_to_speed(speed_kmph, reference_speed_kmph);
}

void ScenarioConfig::validate() const
{
    require(schema_version == kSchemaVersion, "schema_version must be " + std::to_string(kSchemaVersion));
    require(trials >= 1, "trials must be >= 1");
    require(threads >= 1, "threads must be >= 1");
    try
    {
        (void)fading.params();
        control_plane.validate();
        codec.quantizer().validate();
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    require(fading.reference_speed_kmph > 0.0, "fading.reference_speed_kmph must be > 0");
    require(radio.bandwidth_hz > 0.0, "radio.bandwidth_hz must be > 0");
    require(radio.n_subcarriers >= 1, "radio.n_subcarriers must be >= 1");
    require(codec.coordination_fraction >= 0.0 && codec.coordination_fraction <= 1.0,
            "codec.coordination_fraction must lie in [0, 1]");
    require(codec.grids >= 1, "codec.grids must be >= 1");
    require(codec.n_subframes >= 1, "codec.n_subframes must be >= 1");
    require(codec.n_subchannels >= csicodec::kSubchannelsPerRb, "codec.n_subchannels must be >= 12");
    require(scheduler.threshold_db > 0.0, "scheduler.threshold_db must be > 0");

    require(density.region_radius_m > 0.0, "density.region_radius_m must be > 0");
    require_nonempty(density.cell_radii_m, "density.cell_radii_m");
    require_nonempty(density.latencies_ms, "density.latencies_ms");
    for (double r : density.cell_radii_m)
        require(r > 0.0, "density.cell_radii_m entries must be > 0");
    for (double l : density.latencies_ms)
        require(l >= 0.0, "density.latencies_ms entries must be >= 0");
    require(density.cooperation == "network" || density.cooperation == "triangle",
            "density.cooperation must be \"network\" or \"triangle\"");
    require(density.subcarriers >= 1, "density.subcarriers must be >= 1");

    require(distance.cell_radius_m > 0.0, "distance.cell_radius_m must be > 0");
    require_nonempty(distance.distances_m, "distance.distances_m");
    require_nonempty(distance.latencies_ms, "distance.latencies_ms");
    for (double d : distance.distances_m)
        require(d > 0.0 && d <= distance.cell_radius_m, "distance.distances_m entries must lie in (0, cell_radius_m]");
    for (double l : distance.latencies_ms)
        require(l >= 0.0, "distance.latencies_ms entries must be >= 0");
    require(distance.subcarriers >= 1, "distance.subcarriers must be >= 1");

    require(scaling.macro_radius_m > 0.0, "scaling.macro_radius_m must be > 0");
    require_nonempty(scaling.densities, "scaling.densities");
    for (int d : scaling.densities)
        require(d >= 0, "scaling.densities entries must be >= 0");
    require(scaling.n_users >= 1, "scaling.n_users must be >= 1");
    require(scaling.fading_draws >= 1, "scaling.fading_draws must be >= 1");
    require(scaling.macro_protection == "abs" || scaling.macro_protection == "background",
            "scaling.macro_protection must be \"abs\" or \"background\"");
    require_nonempty(comp_gain.densities, "comp_gain.densities");
    for (int d : comp_gain.densities)
        require(d >= 1, "comp_gain.densities entries must be >= 1");
    require_nonempty(budget.bandwidths_hz, "budget.bandwidths_hz");
    for (double b : budget.bandwidths_hz)
        require(b > 0.0, "budget.bandwidths_hz entries must be > 0");
}

ScenarioConfig from_json(const json& j)
{
    ScenarioConfig c;
    Reader r(j, "");
    r.get("schema_version", c.schema_version);
    if (c.schema_version != kSchemaVersion)
        throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version) + " (expected " +
                          std::to_string(kSchemaVersion) + ")");
    r.get("seed", c.seed);
    r.get("trials", c.trials);
    r.get("threads", c.threads);

    if (const json* s = r.sub("fading"))
    {
        Reader f(*s, "fading");
        f.get("rho", c.fading.rho);
        f.get("coherence_time_ms", c.fading.coherence_time_ms);
        f.get("reference_speed_kmph", c.fading.reference_speed_kmph);
        f.get("freq_corr", c.fading.freq_corr);
        f.finish();
    }
    if (const json* s = r.sub("radio"))
    {
        Reader f(*s, "radio");
        f.get("bandwidth_hz", c.radio.bandwidth_hz);
        f.get("n_subcarriers", c.radio.n_subcarriers);
        f.finish();
    }
    if (const json* s = r.sub("path_loss"))
    {
        Reader f(*s, "path_loss");
        f.get("a_db", c.path_loss.a_db);
        f.get("b_db_per_decade", c.path_loss.b_db_per_decade);
        f.get("elevation_bonus_db", c.path_loss.elevation_bonus_db);
        f.get("elevated_height_m", c.path_loss.elevated_height_m);
        f.finish();
    }
    if (const json* s = r.sub("control_plane"))
    {
        Reader f(*s, "control_plane");
        f.get("tti_ms", c.control_plane.tti_ms);
        f.get("one_way_ip_ms", c.control_plane.one_way_ip_ms);
        f.get("processing_ms", c.control_plane.processing_ms);
        std::string waiting(controlplane::to_string(c.control_plane.waiting));
        f.get("waiting", waiting);
        try
        {
            c.control_plane.waiting = controlplane::parse_waiting(waiting);
        }
        catch (const std::invalid_argument& e)
        {
            throw ConfigError(std::string("control_plane.waiting: ") + e.what());
        }
        f.finish();
    }
    if (const json* s = r.sub("codec"))
    {
        Reader f(*s, "codec");
        f.get("q", c.codec.q);
        f.get("dynamic_range_db", c.codec.dynamic_range_db);
        f.get("headroom_db", c.codec.headroom_db);
        f.get("n_rbs", c.codec.n_rbs);
        f.get("neighbors", c.codec.neighbors);
        f.get("coordination_fraction", c.codec.coordination_fraction);
        f.get("n_subframes", c.codec.n_subframes);
        f.get("n_subchannels", c.codec.n_subchannels);
        f.get("macro_rates_kbps", c.codec.macro_rates_kbps);
        f.get("grids", c.codec.grids);
        f.finish();
    }
    if (const json* s = r.sub("scheduler"))
    {
        Reader f(*s, "scheduler");
        f.get("threshold_db", c.scheduler.threshold_db);
        f.get("high_mobility_kmph", c.scheduler.high_mobility_kmph);
        f.finish();
    }
    if (const json* s = r.sub("density"))
    {
        Reader f(*s, "density");
        f.get("region_radius_m", c.density.region_radius_m);
        f.get("cell_radii_m", c.density.cell_radii_m);
        f.get("latencies_ms", c.density.latencies_ms);
        f.get("subcarriers", c.density.subcarriers);
        f.get("user_speed_kmph", c.density.user_speed_kmph);
        f.get("cooperation", c.density.cooperation);
        f.get("trials", c.density.trials);
        f.finish();
    }
    if (const json* s = r.sub("distance"))
    {
        Reader f(*s, "distance");
        f.get("cell_radius_m", c.distance.cell_radius_m);
        f.get("distances_m", c.distance.distances_m);
        f.get("latencies_ms", c.distance.latencies_ms);
        f.get("subcarriers", c.distance.subcarriers);
        f.get("user_speed_kmph", c.distance.user_speed_kmph);
        f.get("interfering_rings", c.distance.interfering_rings);
        f.get("trials", c.distance.trials);
        f.finish();
    }
    if (const json* s = r.sub("scaling"))
    {
        Reader f(*s, "scaling");
        f.get("macro_radius_m", c.scaling.macro_radius_m);
        f.get("densities", c.scaling.densities);
        f.get("n_users", c.scaling.n_users);
        f.get("fading_draws", c.scaling.fading_draws);
        f.get("macro_protection", c.scaling.macro_protection);
        f.get("trials", c.scaling.trials);
        f.finish();
    }
    if (const json* s = r.sub("comp_gain"))
    {
        Reader f(*s, "comp_gain");
        f.get("densities", c.comp_gain.densities);
        f.get("trials", c.comp_gain.trials);
        f.finish();
    }
    if (const json* s = r.sub("budget"))
    {
        Reader f(*s, "budget");
        f.get("bandwidths_hz", c.budget.bandwidths_hz);
        f.finish();
    }
    r.finish();
    c.validate();
    return c;
}

ScenarioConfig load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    json j;
    try
    {
        j = json::parse(in, nullptr, true, true);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError("config file '" + path.string() + "': " + e.what());
    }
    return from_json(j);
}

json to_json(const ScenarioConfig& c)
{
    return {
        {"schema_version", c.schema_version},
        {"seed", c.seed},
        {"trials", c.trials},
        {"threads", c.threads},
        {"fading",
         {{"rho", c.fading.rho},
          {"coherence_time_ms", c.fading.coherence_time_ms},
          {"reference_speed_kmph", c.fading.reference_speed_kmph},
          {"freq_corr", c.fading.freq_corr}}},
        {"radio", {{"bandwidth_hz", c.radio.bandwidth_hz}, {"n_subcarriers", c.radio.n_subcarriers}}},
        {"path_loss",
         {{"a_db", c.path_loss.a_db},
          {"b_db_per_decade", c.path_loss.b_db_per_decade},
          {"elevation_bonus_db", c.path_loss.elevation_bonus_db},
          {"elevated_height_m", c.path_loss.elevated_height_m}}},
        {"control_plane",
         {{"tti_ms", c.control_plane.tti_ms},
          {"one_way_ip_ms", c.control_plane.one_way_ip_ms},
          {"processing_ms", c.control_plane.processing_ms},
          {"waiting", std::string(controlplane::to_string(c.control_plane.waiting))}}},
        {"codec",
         {{"q", c.codec.q},
          {"dynamic_range_db", c.codec.dynamic_range_db},
          {"headroom_db", c.codec.headroom_db},
          {"n_rbs", c.codec.n_rbs},
          {"neighbors", c.codec.neighbors},
          {"coordination_fraction", c.codec.coordination_fraction},
          {"n_subframes", c.codec.n_subframes},
          {"n_subchannels", c.codec.n_subchannels},
          {"macro_rates_kbps", c.codec.macro_rates_kbps},
          {"grids", c.codec.grids}}},
        {"scheduler",
         {{"threshold_db", c.scheduler.threshold_db}, {"high_mobility_kmph", c.scheduler.high_mobility_kmph}}},
        {"density",
         {{"region_radius_m", c.density.region_radius_m},
          {"cell_radii_m", c.density.cell_radii_m},
          {"latencies_ms", c.density.latencies_ms},
          {"subcarriers", c.density.subcarriers},
          {"user_speed_kmph", c.density.user_speed_kmph},
          {"cooperation", c.density.cooperation},
          {"trials", c.density.trials}}},
        {"distance",
         {{"cell_radius_m", c.distance.cell_radius_m},
          {"distances_m", c.distance.distances_m},
          {"latencies_ms", c.distance.latencies_ms},
          {"subcarriers", c.distance.subcarriers},
          {"user_speed_kmph", c.distance.user_speed_kmph},
          {"interfering_rings", c.distance.interfering_rings},
          {"trials", c.distance.trials}}},
        {"scaling",
         {{"macro_radius_m", c.scaling.macro_radius_m},
          {"densities", c.scaling.densities},
          {"n_users", c.scaling.n_users},
          {"fading_draws", c.scaling.fading_draws},
          {"macro_protection", c.scaling.macro_protection},
          {"trials", c.scaling.trials}}},
        {"comp_gain", {{"densities", c.comp_gain.densities}, {"trials", c.comp_gain.trials}}},
        {"budget", {{"bandwidths_hz", c.budget.bandwidths_hz}}},
    };
}

std::uint64_t config_hash(const ScenarioConfig& c)
{
    // The worker count does not change results, so it stays out of the hash.
    json j = to_json(c);
    j.erase("threads");
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text)
    {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace hetsim::config
