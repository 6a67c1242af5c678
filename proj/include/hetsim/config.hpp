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

#pragma once

#include "hetsim/controlplane.hpp"
#include "hetsim/csicodec.hpp"
#include "hetsim/fading.hpp"
#include "hetsim/geometry.hpp"
#include "hetsim/scheduler.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetsim::config {

inline constexpr int kSchemaVersion = 1;

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct FadingConfig
{
    double rho = 0.9;
    double coherence_time_ms = 5.0;   // at reference_speed_kmph
    double reference_speed_kmph = 5.0;
    double freq_corr = fading::kCalibratedFreqCorr;

    fading::FadingParams params() const { return {rho, coherence_time_ms, 1.0, freq_corr}; }
    /// Parameters for a user moving at speed_kmph.
    fading::FadingParams at_speed(double speed_kmph) const;
};

struct RadioConfig
{
    double bandwidth_hz = 5e6;
    std::size_t n_subcarriers = 512;
};

struct CodecConfig
{
    int q = csicodec::kDefaultBits;
    double dynamic_range_db = 60.0;
    double headroom_db = 10.0;
    std::size_t n_rbs = 100;
    std::size_t neighbors = 3;
    double coordination_fraction = 0.5;
    std::size_t n_subframes = 500;
    std::size_t n_subchannels = 512;
    std::vector<double> macro_rates_kbps{1000.0, 6000.0};
    std::size_t grids = 8; // independently seeded channel grids

    csicodec::QuantizerConfig quantizer() const { return {q, dynamic_range_db, headroom_db, 1.0}; }
};

struct DensityConfig
{
    double region_radius_m = 2000.0;
    std::vector<double> cell_radii_m{600.0, 500.0, 400.0, 300.0, 200.0};
    std::vector<double> latencies_ms{1.0, 2.0, 5.0, 10.0, 20.0};
    std::size_t subcarriers = 4;
    double user_speed_kmph = 5.0;
    /// "network": every cell joins one joint transmission.
    /// "triangle": disjoint 3-cell clusters; other clusters interfere.
    std::string cooperation = "network";
    std::size_t trials = 0; // 0: use the global count
};

struct DistanceConfig
{
    double cell_radius_m = 200.0;
    std::vector<double> distances_m{10.0, 40.0, 80.0, 120.0, 160.0, 200.0};
    std::vector<double> latencies_ms{0.0, 2.0, 3.0, 5.0, 10.0, 21.0};
    std::size_t subcarriers = 64;
    double user_speed_kmph = 5.0;
    /// Rings of co-channel hex sites around the cluster that transmit at
    /// full power as background interference (0: isolated cluster).
    std::size_t interfering_rings = 0;
    std::size_t trials = 0;
};

struct ScalingConfig
{
    double macro_radius_m = 1000.0;
    std::vector<int> densities{2, 3, 4, 5, 6, 7};
    std::size_t n_users = 100;
    std::size_t fading_draws = 20;
    /// "abs": macro and micro tiers split airtime, the macro blanks while micros serve.
    /// "background": the macro interferes with every micro transmission.
    std::string macro_protection = "abs";
    std::size_t trials = 0;
};

struct CompGainConfig
{
    std::vector<int> densities{3, 4, 5, 6, 7};
    std::size_t trials = 0;
};

struct BudgetConfig
{
    std::vector<double> bandwidths_hz{5e6, 10e6, 20e6};
};

struct ScenarioConfig
{
    int schema_version = kSchemaVersion;
    std::uint64_t seed = 1;
    std::size_t trials = 200;
    std::size_t threads = 1;

    FadingConfig fading;
    RadioConfig radio;
    geometry::PathLossConfig path_loss;
    controlplane::ControlPlaneModel control_plane;
    CodecConfig codec;
    scheduler::SchedulerPolicy scheduler;

    DensityConfig density;
    DistanceConfig distance;
    ScalingConfig scaling;
    CompGainConfig comp_gain;
    BudgetConfig budget;

    std::size_t trials_for(std::size_t override_trials) const
    {
        return override_trials > 0 ? override_trials : trials;
    }

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Parses a config document. Missing keys keep their defaults; unknown keys,
/// wrong types and a schema_version other than kSchemaVersion are errors.
ScenarioConfig from_json(const nlohmann::json& j);
ScenarioConfig load(const std::filesystem::path& path);
nlohmann::json to_json(const ScenarioConfig& c);

/// FNV-1a 64 over the canonical (sorted-key, compact) JSON dump.
std::uint64_t config_hash(const ScenarioConfig& c);

} // namespace hetsim::config
