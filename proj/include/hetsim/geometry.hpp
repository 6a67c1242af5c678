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

#include "hetsim/random.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace hetsim::geometry {

inline constexpr double kThermalNoiseDbmPerHz = -174.0; // kT at 290 K
inline constexpr double kFullDuplexNoisePenaltyDb = 1.7;

enum class NodeKind
{
    macro_enb,
    micro_enb,
    pico_enb,
    ue,
    smallcell_ue_radio,
};

std::string_view to_string(NodeKind kind);

struct Position
{
    double x = 0.0;
    double y = 0.0;
};

double horizontal_distance(const Position& a, const Position& b);

struct NodeSpec
{
    NodeKind kind = NodeKind::ue;
    Position position;
    double height_m = 1.5;
    double tx_power_dbm = 18.0;   // includes antenna gains
    double noise_figure_db = 9.0;
    double velocity_kmph = 0.0;   // 0 for infrastructure

    bool is_cell() const
    {
        return kind == NodeKind::macro_enb || kind == NodeKind::micro_enb || kind == NodeKind::pico_enb;
    }
};

// Simulation defaults. Noise figures are chosen so that the 5 MHz noise
// floors come out at -105 / -102 / -98 dBm.
NodeSpec make_macro(Position p);
NodeSpec make_micro(Position p);
NodeSpec make_ue(Position p, double velocity_kmph);
NodeSpec make_smallcell_ue_radio(Position p);

struct PathLossConfig
{
    double a_db = 30.5;               // intercept
    double b_db_per_decade = 36.7;    // slope
    double elevation_bonus_db = 30.0; // macro <-> elevated small-cell UE radio
    double elevated_height_m = 10.0;
};

struct LinkBudget
{
    double bandwidth_hz = 0.0;
    double noise_floor_dbm = 0.0;
    double tx_power_dbm = 0.0;
    double required_cancellation_db = 0.0;
};

/// -174 dBm/Hz + 10 log10(B) + NF.
double noise_floor_dbm(double bandwidth_hz, double noise_figure_db);

/// Self-interference cancellation needed to push the maximum Tx power down to
/// the receiver noise floor.
double cancellation_required_db(double tx_power_dbm, double bandwidth_hz, double noise_figure_db);

LinkBudget make_link_budget(double tx_power_dbm, double bandwidth_hz, double noise_figure_db);

/// Large-scale gain -(A + B log10 d) plus the elevation bonus for a
/// macro <-> small-cell-UE-radio pair. d is the 3-D distance. Reciprocal.
double path_gain_db(const NodeSpec& tx, const NodeSpec& rx, const PathLossConfig& model = {});

/// tx + path gain + 20 log10|fading| - noise floor(rx). A zero fading gain
/// returns -infinity.
double rx_snr_db(const NodeSpec& tx, const NodeSpec& rx, double bandwidth_hz,
                 ComplexGain fast_fading_gain, const PathLossConfig& model = {},
                 double extra_noise_db = 0.0);

/// Large-scale SNR (unit fading gain).
double large_scale_snr_db(const NodeSpec& tx, const NodeSpec& rx, double bandwidth_hz,
                          const PathLossConfig& model = {});

inline constexpr int kSectorsPerMacro = 3;

struct Topology
{
    std::vector<NodeSpec> cells; // cells[0] is the macro
    std::vector<NodeSpec> users;
    double macro_radius_m = 0.0;
    double micro_radius_m = 0.0;
    int micro_per_sector = 0;
};

struct TopologyOptions
{
    std::size_t n_users = 1000;
    std::vector<double> user_speeds_kmph{1.0, 5.0, 30.0};
};

/// One macro at the origin; density micro cells in each 120 degree sector,
/// spread evenly over the sector (sunflower lattice); users uniform over the
/// coverage disc with speeds drawn uniformly from the option list.
Topology build_topology(int micro_per_sector, double macro_radius_m, std::uint64_t seed,
                        const TopologyOptions& options = {});

/// Sites of a hexagonal layout with cell radius r whose centres fall inside
/// a disc of the given radius (the centre site is always present).
std::vector<Position> hex_sites(double region_radius_m, double cell_radius_m);

/// Disjoint groups of up to three mutually adjacent hex sites, as returned
/// in the order of hex_sites(). Every site belongs to exactly one cluster.
std::vector<std::vector<std::size_t>> triangle_clusters(double region_radius_m, double cell_radius_m);

/// Uniform point inside the hexagon of circumradius r centred at c.
Position uniform_in_hexagon(const Position& c, double r, Rng& rng);

/// Three cells at the corners of an equilateral triangle with inter-site
/// distance sqrt(3) r, and three users each at `user_distance_m` from its own
/// cell along the line to the common cell-edge corner (the triangle centre).
/// user_distance_m == r puts all users on the shared edge point.
struct SymmetricCluster
{
    std::vector<NodeSpec> cells;
    std::vector<NodeSpec> users;
};
SymmetricCluster symmetric_three_cell_cluster(double cell_radius_m, double user_distance_m,
                                              double user_speed_kmph = 5.0);

/// Sites of the same hexagonal layout around the symmetric cluster, out to
/// `rings` inter-site distances beyond the cluster (the cluster's own three
/// sites excluded). One ring holds 9 sites.
std::vector<Position> cluster_surrounding_sites(double cell_radius_m, std::size_t rings);

} // namespace hetsim::geometry
