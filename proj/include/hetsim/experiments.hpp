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

#include "hetsim/config.hpp"
#include "hetsim/records.hpp"
#include "hetsim/scheduler.hpp"

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hetsim::experiments {

/// Stream ids used as the first element of every derive_seed() path.
enum class Stream : std::uint64_t
{
    density = 1,
    distance = 2,
    scaling = 3,
    codec = 5,
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Results must be
/// written to per-index slots; the first exception is rethrown.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// CoMP over a hexagonal micro layout, one user per cell, with either one
/// network-wide joint transmission or triangle clusters (density.cooperation).
/// Columns: cell_radius_m, n_cells, latency_ms.
/// Metrics: capacity (sum bps/Hz over the network), capacity_drop (relative
/// to the first latency in the list).
records::SweepTable run_density_sweep(const config::ScenarioConfig& cfg);

/// Symmetric 3-cell cluster with users moved from the cell centre to the
/// shared corner. Columns: distance_m, latency_ms (empty for IGNORE and
/// AVOID). Metrics: {comp,ignore,avoid}_capacity (bps/Hz per cell) and
/// {comp,ignore,avoid}_normalized (divided by the AVOID mean).
records::SweepTable run_distance_sweep(const config::ScenarioConfig& cfg);

/// Per-density outcome of one scaling trial, all capacities in bps/Hz.
struct ScalingSample
{
    double baseline = 0.0; // macro-only network
    double ideal = 0.0;
    double swiftc = 0.0;
    double x2 = 0.0;
    double comp_swiftc = 0.0; // part delivered to COMP and AVOID_ASSIST users
    double comp_x2 = 0.0;
    double frac_macro = 0.0;
    double frac_ignore = 0.0;
    double frac_comp = 0.0;
    double frac_avoid_assist = 0.0;
    std::vector<scheduler::ServingDecision> decisions;
};

/// One Monte-Carlo trial of the macro + micro network.
ScalingSample scaling_trial(const config::ScenarioConfig& cfg, int micro_per_sector, std::size_t trial);

/// Columns: micro_per_sector, n_small_cells. Metrics: {ideal,swiftc,x2}_normalized
/// (over the macro-only baseline), raw capacities, swiftc_x2_ratio and the
/// serving-mode fractions. When `decisions_audit` is set it receives the
/// trial-0 decisions per density.
records::SweepTable run_scaling_experiment(const config::ScenarioConfig& cfg,
                                           nlohmann::json* decisions_audit = nullptr);

/// CoMP-delivered capacity for SwiftC and X2. Columns: micro_per_sector,
/// n_small_cells. Metrics: {swiftc,x2}_comp_capacity, {swiftc,x2}_comp_pct_of_max
/// and swiftc_advantage (swiftc / x2 - 1).
records::SweepTable run_comp_gain_experiment(const config::ScenarioConfig& cfg);

/// Columns: q, input_kbps (macro-overhead rows only).
records::SweepTable run_codec_bench(const config::ScenarioConfig& cfg);

/// Columns: direction, bandwidth_mhz. Metrics: tx_power_dbm, noise_floor_dbm,
/// cancellation_db, noise_floor_full_duplex_dbm.
records::SweepTable emit_budget_tables(const config::ScenarioConfig& cfg);

/// Coordination timelines of both control planes, for plotting.
nlohmann::json timelines(const config::ScenarioConfig& cfg);

} // namespace hetsim::experiments
