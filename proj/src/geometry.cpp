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

#include "hetsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hetsim::geometry {

std::string_view to_string(NodeKind kind)
{
    switch (kind)
    {
    case NodeKind::macro_enb: return "macro_enb";
    case NodeKind::micro_enb: return "micro_enb";
    case NodeKind::pico_enb: return "pico_enb";
    case NodeKind::ue: return "ue";
    case NodeKind::smallcell_ue_radio: return "smallcell_ue_radio";
    }
    return "unknown";
}

double horizontal_distance(const Position& a, const Position& b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

NodeSpec make_macro(Position p) { return {NodeKind::macro_enb, p, 32.0, 62.0, 2.0, 0.0}; }
NodeSpec make_micro(Position p) { return {NodeKind::micro_enb, p, 12.5, 30.0, 5.0, 0.0}; }
NodeSpec make_ue(Position p, double velocity_kmph) { return {NodeKind::ue, p, 1.5, 18.0, 9.0, velocity_kmph}; }
NodeSpec make_smallcell_ue_radio(Position p) { return {NodeKind::smallcell_ue_radio, p, 12.5, 18.0, 9.0, 0.0}; }

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw std::invalid_argument("noise_floor_dbm: bandwidth must be > 0");
    return kThermalNoiseDbmPerHz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double cancellation_required_db(double tx_power_dbm, double bandwidth_hz, double noise_figure_db)
{
    return tx_power_dbm - noise_floor_dbm(bandwidth_hz, noise_figure_db);
}

LinkBudget make_link_budget(double tx_power_dbm, double bandwidth_hz, double noise_figure_db)
{
    LinkBudget b;
    b.bandwidth_hz = bandwidth_hz;
    b.noise_floor_dbm = noise_floor_dbm(bandwidth_hz, noise_figure_db);
    b.tx_power_dbm = tx_power_dbm;
    b.required_cancellation_db = tx_power_dbm - b.noise_floor_dbm;
    return b;
}

namespace {

bool elevated_pair(const NodeSpec& a, const NodeSpec& b, const PathLossConfig& m)
{
    auto one_way = [&](const NodeSpec& macro, const NodeSpec& radio) {
        return macro.kind == NodeKind::macro_enb && radio.kind == NodeKind::smallcell_ue_radio &&
               radio.height_m >= m.elevated_height_m;
    };
    return one_way(a, b) || one_way(b, a);
}

} // namespace

double path_gain_db(const NodeSpec& tx, const NodeSpec& rx, const PathLossConfig& model)
{
    const double dh = tx.height_m - rx.height_m;
    const double d = std::sqrt(std::pow(horizontal_distance(tx.position, rx.position), 2) + dh * dh);
    if (!(d > 0.0))
        throw std::invalid_argument("path_gain_db: transmitter and receiver coincide");
    double gain = -(model.a_db + model.b_db_per_decade * std::log10(d));
    if (elevated_pair(tx, rx, model))
        gain += model.elevation_bonus_db;
    return gain;
}

double large_scale_snr_db(const NodeSpec& tx, const NodeSpec& rx, double bandwidth_hz,
                          const PathLossConfig& model)
{
    return tx.tx_power_dbm + path_gain_db(tx, rx, model) - noise_floor_dbm(bandwidth_hz, rx.noise_figure_db);
}

double rx_snr_db(const NodeSpec& tx, const NodeSpec& rx, double bandwidth_hz,
                 ComplexGain fast_fading_gain, const PathLossConfig& model, double extra_noise_db)
{
    const double mag = std::abs(fast_fading_gain);
    const double ls = large_scale_snr_db(tx, rx, bandwidth_hz, model) - extra_noise_db;
    if (mag == 0.0)
        return -std::numeric_limits<double>::infinity();
    return ls + 20.0 * std::log10(mag);
}

Topology build_topology(int micro_per_sector, double macro_radius_m, std::uint64_t seed,
                        const TopologyOptions& options)
{
    if (micro_per_sector < 0)
        throw std::invalid_argument("build_topology: density must be >= 0");
    if (!(macro_radius_m > 0.0))
        throw std::invalid_argument("build_topology: macro radius must be > 0");
    if (options.user_speeds_kmph.empty())
        throw std::invalid_argument("build_topology: need at least one user speed");

    Topology topo;
    topo.macro_radius_m = macro_radius_m;
    topo.micro_per_sector = micro_per_sector;
    topo.cells.push_back(make_macro({0.0, 0.0}));

    constexpr double kInvGolden = 0.6180339887498949;
    const double wedge = 2.0 * std::numbers::pi / kSectorsPerMacro;
    const int n = micro_per_sector;
    for (int s = 0; s < kSectorsPerMacro; ++s)
    {
        for (int i = 0; i < n; ++i)
        {
            const double r = macro_radius_m * std::sqrt((i + 0.5) / n);
            const double frac = std::fmod(i * kInvGolden + 0.5, 1.0);
            const double theta = s * wedge + frac * wedge;
            topo.cells.push_back(make_micro({r * std::cos(theta), r * std::sin(theta)}));
        }
    }
    topo.micro_radius_m = n > 0 ? macro_radius_m / std::sqrt(static_cast<double>(kSectorsPerMacro * n)) : 0.0;

    Rng rng(seed);
    topo.users.reserve(options.n_users);
    for (std::size_t u = 0; u < options.n_users; ++u)
    {
        const double r = macro_radius_m * std::sqrt(rng.uniform());
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double v = options.user_speeds_kmph[rng.index(options.user_speeds_kmph.size())];
        topo.users.push_back(make_ue({r * std::cos(theta), r * std::sin(theta)}, v));
    }
    return topo;
}

namespace {

struct HexIndex
{
    int i;
    int j;
};

std::vector<HexIndex> hex_indices(double region_radius_m, double cell_radius_m)
{
    if (!(cell_radius_m > 0.0) || !(region_radius_m >= 0.0))
        throw std::invalid_argument("hex_sites: radii must be positive");
    const double isd = std::sqrt(3.0) * cell_radius_m;
    const int span = static_cast<int>(std::ceil(region_radius_m / (1.5 * cell_radius_m))) + 2;
    std::vector<HexIndex> out;
    for (int j = -span; j <= span; ++j)
    {
        for (int i = -2 * span; i <= 2 * span; ++i)
        {
            const double x = isd * (i + 0.5 * j);
            const double y = 1.5 * cell_radius_m * j;
            if (std::hypot(x, y) <= region_radius_m + 1e-9)
                out.push_back({i, j});
        }
    }
    return out;
}

Position hex_position(HexIndex h, double cell_radius_m)
{
    const double isd = std::sqrt(3.0) * cell_radius_m;
    return {isd * (h.i + 0.5 * h.j), 1.5 * cell_radius_m * h.j};
}

int mod3(int v) { return ((v % 3) + 3) % 3; }

} // namespace

std::vector<Position> hex_sites(double region_radius_m, double cell_radius_m)
{
    std::vector<Position> out;
    for (auto h : hex_indices(region_radius_m, cell_radius_m))
        out.push_back(hex_position(h, cell_radius_m));
    return out;
}

std::vector<std::vector<std::size_t>> triangle_clusters(double region_radius_m, double cell_radius_m)
{
    const auto idx = hex_indices(region_radius_m, cell_radius_m);
    auto find = [&](int i, int j) -> std::ptrdiff_t {
        for (std::size_t n = 0; n < idx.size(); ++n)
            if (idx[n].i == i && idx[n].j == j)
                return static_cast<std::ptrdiff_t>(n);
        return -1;
    };

    // Up-triangles {(i,j), (i+1,j), (i,j+1)} with (i + 2j) = 0 mod 3 tile the
    // lattice: every site is the base of, or a corner of, exactly one of them.
    std::vector<std::vector<std::size_t>> clusters;
    std::vector<bool> taken(idx.size(), false);
    int jmin = 0, jmax = 0, imin = 0, imax = 0;
    for (auto h : idx)
    {
        jmin = std::min(jmin, h.j); jmax = std::max(jmax, h.j);
        imin = std::min(imin, h.i); imax = std::max(imax, h.i);
    }
    for (int j = jmin - 1; j <= jmax; ++j)
    {
        for (int i = imin - 1; i <= imax; ++i)
        {
            if (mod3(i + 2 * j) != 0)
                continue;
            std::vector<std::size_t> members;
            for (auto [di, dj] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{0, 1}})
            {
                const auto n = find(i + di, j + dj);
                if (n >= 0)
                {
                    members.push_back(static_cast<std::size_t>(n));
                    taken[static_cast<std::size_t>(n)] = true;
                }
            }
            if (!members.empty())
            {
                std::sort(members.begin(), members.end());
                clusters.push_back(std::move(members));
            }
        }
    }
    if (std::find(taken.begin(), taken.end(), false) != taken.end())
        throw std::logic_error("triangle_clusters: incomplete tiling");
    return clusters;
}

Position uniform_in_hexagon(const Position& c, double r, Rng& rng)
{
    // Pointy-top hexagon (matches hex_sites): |x| <= sqrt(3)/2 r, and
    // |y| + |x| / sqrt(3) <= r.
    const double hw = 0.5 * std::sqrt(3.0) * r;
    for (;;)
    {
        const double x = rng.uniform(-hw, hw);
        const double y = rng.uniform(-r, r);
        if (std::abs(y) + std::abs(x) / std::sqrt(3.0) <= r)
            return {c.x + x, c.y + y};
    }
}

SymmetricCluster symmetric_three_cell_cluster(double cell_radius_m, double user_distance_m,
                                              double user_speed_kmph)
{
    if (!(cell_radius_m > 0.0) || !(user_distance_m > 0.0) || user_distance_m > cell_radius_m)
        throw std::invalid_argument("symmetric_three_cell_cluster: need 0 < d <= r");
    SymmetricCluster out;
    for (int k = 0; k < 3; ++k)
    {
        const double theta = std::numbers::pi / 2.0 + k * 2.0 * std::numbers::pi / 3.0;
        const Position bs{cell_radius_m * std::cos(theta), cell_radius_m * std::sin(theta)};
        const double f = 1.0 - user_distance_m / cell_radius_m;
        out.cells.push_back(make_micro(bs));
        out.users.push_back(make_ue({bs.x * f, bs.y * f}, user_speed_kmph));
    }
    return out;
}

std::vector<Position> cluster_surrounding_sites(double cell_radius_m, std::size_t rings)
{
    const auto cluster = symmetric_three_cell_cluster(cell_radius_m, cell_radius_m);
    const Position s0 = cluster.cells[0].position;
    const Position a1{cluster.cells[1].position.x - s0.x, cluster.cells[1].position.y - s0.y};
    const Position a2{cluster.cells[2].position.x - s0.x, cluster.cells[2].position.y - s0.y};
    const double isd = std::sqrt(3.0) * cell_radius_m;
    const double limit = cell_radius_m + static_cast<double>(rings) * isd + 1e-6 * cell_radius_m;
    const int span = static_cast<int>(rings) + 3;

    std::vector<Position> out;
    for (int i = -span; i <= span; ++i)
        for (int j = -span; j <= span; ++j)
        {
            const Position p{s0.x + i * a1.x + j * a2.x, s0.y + i * a1.y + j * a2.y};
            const double d = std::hypot(p.x, p.y);
            if (d <= cell_radius_m * (1.0 + 1e-9) || d > limit)
                continue;
            out.push_back(p);
        }
    std::sort(out.begin(), out.end(), [](const Position& a, const Position& b) {
        const double da = std::hypot(a.x, a.y), db = std::hypot(b.x, b.y);
        if (std::abs(da - db) > 1e-9)
            return da < db;
        return std::atan2(a.y, a.x) < std::atan2(b.y, b.x);
    });
    return out;
}

} // namespace hetsim::geometry
