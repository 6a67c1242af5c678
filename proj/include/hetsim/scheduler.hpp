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

#include "json.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace hetsim::scheduler {

enum class Mode
{
    macro,        // high-mobility user anchored on the macro
    ignore,       // single cell, interference treated as noise
    comp,         // joint transmission from 2 or 3 cells
    avoid_assist, // joint transmission from 3 cells while other strong cells mute
};

std::string_view to_string(Mode mode);

struct ServingDecision
{
    std::size_t user_id = 0;
    Mode mode = Mode::ignore;
    std::vector<std::size_t> serving_cells; // strongest first
    std::vector<std::size_t> muted_cells;   // AVOID_ASSIST only
    double airtime_share = 0.0;

    /// Every cell whose airtime this user occupies.
    std::vector<std::size_t> occupied_cells() const;
};

struct SchedulerPolicy
{
    double threshold_db = 15.0;
    double high_mobility_kmph = 30.0;
    std::size_t macro_cell = 0;
    /// When false, only high-mobility users are placed on the macro and the
    /// macro never enters an IGNORE or CoMP set.
    bool macro_is_candidate = true;
};

/// Association and serving mode from large-scale SNRs (indexed by cell id).
/// Dominance tests use ">=", so an exact tie at the threshold resolves to
/// the branch with less coordination. Equal SNRs are ordered by cell id.
///
/// AVOID_ASSIST serves from the three strongest cells and mutes every other
/// cell that is not at least threshold_db below the strongest.
///
/// Throws std::invalid_argument for an empty SNR list, threshold_db <= 0 or
/// a macro id outside the list.
ServingDecision decide(std::size_t user_id, double velocity_kmph, std::span<const double> rx_snrs_db,
                       const SchedulerPolicy& policy = {});

/// Round-robin airtime: max-min fair progressive filling over the cells
/// each user occupies. A user alone with m-1 others on a single cell gets
/// 1/m; a CoMP user holds the same share on all of its cells at once.
/// Returns shares in decision order.
std::vector<double> round_robin(std::span<const ServingDecision> decisions);

/// round_robin() written back into airtime_share.
void assign_airtime(std::vector<ServingDecision>& decisions);

/// Sum of shares per cell, for cells 0 .. n_cells-1.
std::vector<double> cell_airtime(std::span<const ServingDecision> decisions, std::size_t n_cells);

nlohmann::json to_json(std::span<const ServingDecision> decisions);

} // namespace hetsim::scheduler
