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

#include "hetsim/experiments.hpp"

#include "doctest.h"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

using namespace hetsim;
using namespace hetsim::experiments;
using records::to_csv;

namespace {

config::ScenarioConfig small_config()
{
    config::ScenarioConfig c;
    c.trials = 12;
    c.density.region_radius_m = 700.0;
    c.density.cell_radii_m = {400.0, 250.0};
    c.distance.distances_m = {10.0, 200.0};
    c.distance.subcarriers = 8;
    c.scaling.densities = {1, 2};
    c.scaling.n_users = 24;
    c.scaling.fading_draws = 2;
    c.scaling.trials = 4;
    c.comp_gain.densities = {1, 2};
    c.comp_gain.trials = 3;
    c.codec.n_subframes = 20;
    c.codec.n_subchannels = 120;
    c.codec.grids = 2;
    return c;
}

double value(const records::SweepTable& t, std::vector<std::string> coords, const std::string& metric)
{
    return t.find(coords, metric).value;
}

} // namespace

TEST_CASE("budget tables")
{
    const auto t = emit_budget_tables(config::ScenarioConfig{});
    CHECK(t.records.size() == 24);
    // Reference figures: small-cell eNB NF 5 dB, UE NF 9 dB, 18/30 dBm transmitters.
    const double enb[] = {-102.0, -99.0, -96.0};
    const double ue[] = {-98.0, -95.0, -92.0};
    const double up[] = {120.0, 117.0, 114.0};
    const double down[] = {128.0, 125.0, 122.0};
    const char* bw[] = {"5", "10", "20"};
    for (int i = 0; i < 3; ++i)
    {
        CHECK(std::abs(value(t, {"uplink", bw[i]}, "noise_floor_dbm") - enb[i]) <= 0.1);
        CHECK(std::abs(value(t, {"downlink", bw[i]}, "noise_floor_dbm") - ue[i]) <= 0.1);
        CHECK(std::abs(value(t, {"uplink", bw[i]}, "cancellation_db") - up[i]) <= 0.1);
        CHECK(std::abs(value(t, {"downlink", bw[i]}, "cancellation_db") - down[i]) <= 0.1);
        CHECK(value(t, {"uplink", bw[i]}, "noise_floor_full_duplex_dbm") ==
              doctest::Approx(value(t, {"uplink", bw[i]}, "noise_floor_dbm") + 1.7));
    }
}

TEST_CASE("same seed gives byte-identical tables")
{
    const auto c = small_config();
    CHECK(to_csv(run_distance_sweep(c)) == to_csv(run_distance_sweep(c)));
    CHECK(to_csv(run_density_sweep(c)) == to_csv(run_density_sweep(c)));
    CHECK(to_csv(run_scaling_experiment(c)) == to_csv(run_scaling_experiment(c)));
    CHECK(to_csv(run_codec_bench(c)) == to_csv(run_codec_bench(c)));

    auto other = c;
    other.seed = 2;
    CHECK(to_csv(run_distance_sweep(c)) != to_csv(run_distance_sweep(other)));
}

TEST_CASE("thread count does not change results")
{
    auto one = small_config();
    auto four = one;
    four.threads = 4;
    CHECK(to_csv(run_distance_sweep(one)) == to_csv(run_distance_sweep(four)));
    CHECK(to_csv(run_density_sweep(one)) == to_csv(run_density_sweep(four)));
    CHECK(to_csv(run_comp_gain_experiment(one)) == to_csv(run_comp_gain_experiment(four)));
}

TEST_CASE("distance sweep shape")
{
    const auto c = small_config();
    const auto t = run_distance_sweep(c);
    CHECK(t.coord_columns == std::vector<std::string>{"distance_m", "latency_ms"});
    for (const char* d : {"10", "200"})
    {
        CHECK(value(t, {d, ""}, "avoid_normalized") == doctest::Approx(1.0));
        CHECK(t.find({d, ""}, "avoid_normalized").ci95_half_width == doctest::Approx(0.0));
        CHECK(t.find({d, "21"}, "comp_capacity").trials == 12);
        // More staleness never helps on average once CSI is stale at all.
        CHECK(value(t, {d, "0"}, "comp_capacity") >= value(t, {d, "21"}, "comp_capacity"));
    }
    // Edge users gain from coordination with fresh CSI.
    CHECK(value(t, {"200", "0"}, "comp_normalized") > 1.0);
}

TEST_CASE("confidence intervals shrink with trials")
{
    auto a = small_config();
    a.trials = 20;
    auto b = a;
    b.trials = 320;
    const auto ta = run_distance_sweep(a);
    const auto tb = run_distance_sweep(b);
    const double ratio = ta.find({"200", "2"}, "comp_capacity").ci95_half_width /
                         tb.find({"200", "2"}, "comp_capacity").ci95_half_width;
    // 16x trials: expect about 4x narrower.
    CHECK(ratio > 2.5);
    CHECK(ratio < 6.0);
}

TEST_CASE("density sweep shape")
{
    const auto c = small_config();
    const auto t = run_density_sweep(c);
    CHECK(t.coord_columns == std::vector<std::string>{"cell_radius_m", "n_cells", "latency_ms"});
    CHECK(t.records.size() == 2 * 5 * 2);
    for (const auto& r : t.records)
        if (r.metric == "capacity_drop" && r.coords[2] == "1")
            CHECK(r.value == doctest::Approx(0.0));
    const auto first = t.records.front().coords;
    CHECK(value(t, {first[0], first[1], "20"}, "capacity_drop") > value(t, {first[0], first[1], "2"}, "capacity_drop"));

    auto tri = c;
    tri.density.cooperation = "triangle";
    CHECK(run_density_sweep(tri).records.size() == t.records.size());
}

TEST_CASE("scaling trial accounting")
{
    const auto c = small_config();
    for (int d : {1, 2})
        for (std::size_t trial = 0; trial < 3; ++trial)
        {
            const auto s = scaling_trial(c, d, trial);
            CHECK(s.frac_macro + s.frac_ignore + s.frac_comp + s.frac_avoid_assist == doctest::Approx(1.0));
            CHECK(s.decisions.size() == c.scaling.n_users);
            CHECK(s.ideal >= s.swiftc - 1e-9);
            CHECK(s.baseline > 0.0);
            CHECK(s.comp_swiftc <= s.swiftc + 1e-9);
            for (const auto& dec : s.decisions)
                CHECK(dec.airtime_share > 0.0);
        }
}

TEST_CASE("scaling table and audit")
{
    const auto c = small_config();
    nlohmann::json audit;
    const auto t = run_scaling_experiment(c, &audit);
    CHECK(t.coord_columns == std::vector<std::string>{"micro_per_sector", "n_small_cells"});
    CHECK(value(t, {"2", "6"}, "ideal_normalized") >= value(t, {"2", "6"}, "swiftc_normalized"));
    CHECK(t.find({"1", "3"}, "swiftc_x2_ratio").trials == 4);
    REQUIRE(audit.is_array());
    CHECK(audit.size() == 2);
    CHECK(audit[0]["decisions"].size() == c.scaling.n_users);

    auto bg = c;
    bg.scaling.macro_protection = "background";
    CHECK(to_csv(run_scaling_experiment(bg)) != to_csv(t));
}

TEST_CASE("comp gain table")
{
    const auto t = run_comp_gain_experiment(small_config());
    double top = 0.0;
    for (const auto& r : t.records)
        if (r.metric.find("pct_of_max") != std::string::npos)
            top = std::max(top, r.value);
    CHECK(top == doctest::Approx(100.0));
}

TEST_CASE("codec bench")
{
    const auto t = run_codec_bench(small_config());
    CHECK(value(t, {"6", ""}, "kbps_per_rb_uncompressed") == 144.0);
    CHECK(value(t, {"6", ""}, "kbps_per_rb_compressed") < 144.0);
    CHECK(value(t, {"6", "1000"}, "macro_overhead_kbps_500m") == doctest::Approx(183.4));
    CHECK(value(t, {"6", "6000"}, "macro_overhead_kbps_500m") == doctest::Approx(1100.4));
}

TEST_CASE("timelines export")
{
    const auto j = timelines(config::ScenarioConfig{});
    REQUIRE(j.size() == 2);
    CHECK(j[0]["variant"] == "swiftc");
    CHECK(j[0]["total_ms"].get<double>() == 3.0);
    CHECK(j[1]["total_ms"].get<double>() == 21.0);
    CHECK(j[1]["events"].size() == 5);
}

TEST_CASE("parallel_for covers every index and propagates errors")
{
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, 3, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits)
        CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) {
                        if (i == 5)
                            throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
    parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("invalid configs are refused")
{
    auto c = small_config();
    c.trials = 0;
    CHECK_THROWS_AS(run_distance_sweep(c), config::ConfigError);
}
