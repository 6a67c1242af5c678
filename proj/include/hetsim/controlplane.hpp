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

#include <string>
#include <string_view>
#include <vector>

namespace hetsim::controlplane {

enum class Variant
{
    swiftc, // in-band full-duplex relay through the macro
    x2_ip,  // X2 over the IP backhaul
};

enum class Waiting
{
    best_case,
    average,
};

std::string_view to_string(Variant v);
std::string_view to_string(Waiting w);
Variant parse_variant(std::string_view s);
Waiting parse_waiting(std::string_view s);

struct ControlPlaneModel
{
    Variant variant = Variant::swiftc;
    double tti_ms = 1.0;
    double one_way_ip_ms = 10.0;
    double processing_ms = 1.0; // feedback + coordinator processing
    Waiting waiting = Waiting::best_case;

    /// Throws std::invalid_argument for negative durations or tti_ms <= 0.
    void validate() const;
};

/// SwiftC waits for the next uplink/downlink TTI boundary: 1 TTI in the best
/// case, 1.5 TTIs on average. X2 is a fixed IP one-way delay.
double one_way_latency(const ControlPlaneModel& m);

/// Uplink plus downlink leg, without processing.
double round_trip_latency(const ControlPlaneModel& m);

/// Round trip plus processing. This is the latency that ages the CSI.
double total_coordination_latency(const ControlPlaneModel& m);

struct TimelineEvent
{
    double timestamp_ms = 0.0;
    std::string label;
};

struct CoordinationTimeline
{
    std::vector<TimelineEvent> events;
    double total_ms() const { return events.empty() ? 0.0 : events.back().timestamp_ms; }
};

/// Stage start times: client feedback at 0, uplink control after the
/// feedback half of the processing budget, coordinator compute after the
/// uplink leg, downlink control after the compute half, and joint
/// transmission at total_coordination_latency().
CoordinationTimeline timeline(const ControlPlaneModel& m);

nlohmann::json to_json(const CoordinationTimeline& t);

} // namespace hetsim::controlplane
