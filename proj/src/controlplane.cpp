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

#include "hetsim/controlplane.hpp"

#include <cmath>
#include <stdexcept>

namespace hetsim::controlplane {

std::string_view to_string(Variant v)
{
    return v == Variant::swiftc ? "swiftc" : "x2_ip";
}

std::string_view to_string(Waiting w)
{
    return w == Waiting::best_case ? "best_case" : "average";
}

Variant parse_variant(std::string_view s)
{
    if (s == "swiftc")
        return Variant::swiftc;
    if (s == "x2_ip")
        return Variant::x2_ip;
    throw std::invalid_argument("unknown control-plane variant '" + std::string(s) + "'");
}

Waiting parse_waiting(std::string_view s)
{
    if (s == "best_case")
        return Waiting::best_case;
    if (s == "average")
        return Waiting::average;
    throw std::invalid_argument("unknown waiting model '" + std::string(s) + "'");
}

void ControlPlaneModel::validate() const
{
    if (!(tti_ms > 0.0) || !std::isfinite(tti_ms))
        throw std::invalid_argument("ControlPlaneModel: tti_ms must be > 0");
    if (!(one_way_ip_ms >= 0.0) || !std::isfinite(one_way_ip_ms))
        throw std::invalid_argument("ControlPlaneModel: one_way_ip_ms must be >= 0");
    if (!(processing_ms >= 0.0) || !std::isfinite(processing_ms))
        throw std::invalid_argument("ControlPlaneModel: processing_ms must be >= 0");
}

double one_way_latency(const ControlPlaneModel& m)
{
    m.validate();
    if (m.variant == Variant::x2_ip)
        return m.one_way_ip_ms;
    return m.waiting == Waiting::best_case ? m.tti_ms : 1.5 * m.tti_ms;
}

double round_trip_latency(const ControlPlaneModel& m)
{
    return 2.0 * one_way_latency(m);
}

double total_coordination_latency(const ControlPlaneModel& m)
{
    return round_trip_latency(m) + m.processing_ms;
}

CoordinationTimeline timeline(const ControlPlaneModel& m)
{
    const double ow = one_way_latency(m);
    const double feedback = 0.5 * m.processing_ms;
    const double compute = m.processing_ms - feedback;

    CoordinationTimeline t;
    double now = 0.0;
    t.events.push_back({now, "client_feedback"});
    now += feedback;
    t.events.push_back({now, "uplink_control"});
    now += ow;
    t.events.push_back({now, "coordinator_compute"});
    now += compute;
    t.events.push_back({now, "downlink_control"});
    // Pinned to the closed form so the stage gaps telescope to it exactly.
    t.events.push_back({total_coordination_latency(m), "joint_transmission"});
    return t;
}

nlohmann::json to_json(const CoordinationTimeline& t)
{
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : t.events)
        events.push_back({{"timestamp_ms", e.timestamp_ms}, {"label", e.label}});
    return events;
}

} // namespace hetsim::controlplane
