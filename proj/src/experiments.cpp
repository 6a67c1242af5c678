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

#include "hetsim/comp.hpp"
#include "hetsim/controlplane.hpp"
#include "hetsim/csicodec.hpp"
#include "hetsim/fading.hpp"
#include "hetsim/geometry.hpp"
#include "hetsim/random.hpp"
#include "hetsim/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace hetsim::experiments {

namespace {

using records::format_number;
using records::SweepTable;

std::uint64_t stream(Stream s) { return static_cast<std::uint64_t>(s); }

double amplitude(const geometry::NodeSpec& tx, const geometry::NodeSpec& rx, const geometry::PathLossConfig& pl)
{
    return std::sqrt(std::pow(10.0, geometry::path_gain_db(tx, rx, pl) / 10.0));
}

double noise_mw(const geometry::NodeSpec& rx, double bandwidth_hz)
{
    return comp::dbm_to_mw(geometry::noise_floor_dbm(bandwidth_hz, rx.noise_figure_db));
}

/// Ratio of means mean(x) / mean(y) with a delta-method 95% half-width.
Summary ratio_summary(std::span<const double> x, std::span<const double> y)
{
    const std::size_t n = x.size();
    Summary s;
    s.count = n;
    if (n == 0)
        return s;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    s.mean = mx / my;
    if (n > 1)
    {
        std::vector<double> resid(n);
        for (std::size_t i = 0; i < n; ++i)
            resid[i] = (x[i] - s.mean * y[i]) / my;
        s.ci95_half_width = summarize(resid).ci95_half_width;
    }
    return s;
}

std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t k)
{
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back(r[k]);
    return out;
}

} // namespace

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn)
{
    threads = std::max<std::size_t>(1, std::min(threads, n));
    if (threads == 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Density sweep

records::SweepTable run_density_sweep(const config::ScenarioConfig& cfg)
{
    cfg.validate();
    const auto& dc = cfg.density;
    const std::size_t n_trials = cfg.trials_for(dc.trials);
    const auto params = cfg.fading.at_speed(dc.user_speed_kmph);
    const std::size_t n_lat = dc.latencies_ms.size();
    std::vector<double> rho(n_lat);
    for (std::size_t l = 0; l < n_lat; ++l)
        rho[l] = fading::correlation_at(dc.latencies_ms[l], params);

    SweepTable table{"density", {"cell_radius_m", "n_cells", "latency_ms"}, {}};
    for (std::size_t ri = 0; ri < dc.cell_radii_m.size(); ++ri)
    {
        const double r = dc.cell_radii_m[ri];
        const auto sites = geometry::hex_sites(dc.region_radius_m, r);
        const std::size_t n = sites.size();
        std::vector<std::vector<std::size_t>> clusters;
        if (dc.cooperation == "triangle")
            clusters = geometry::triangle_clusters(dc.region_radius_m, r);
        else
        {
            clusters.emplace_back(n);
            std::iota(clusters[0].begin(), clusters[0].end(), std::size_t{0});
        }
        std::vector<geometry::NodeSpec> cells;
        for (const auto& p : sites)
            cells.push_back(geometry::make_micro(p));
        const std::vector<double> power_dbm_all(n, cells[0].tx_power_dbm);

        std::vector<std::vector<double>> samples(n_trials, std::vector<double>(n_lat, 0.0));
        parallel_for(n_trials, cfg.threads, [&](std::size_t t) {
            Rng rng(derive_seed(cfg.seed, {stream(Stream::density), ri, t}));
            Eigen::MatrixXd amp(n, n);
            Eigen::VectorXd noise(n);
            for (std::size_t u = 0; u < n; ++u)
            {
                const auto ue = geometry::make_ue(geometry::uniform_in_hexagon(sites[u], r, rng), dc.user_speed_kmph);
                noise(static_cast<Eigen::Index>(u)) = noise_mw(ue, cfg.radio.bandwidth_hz);
                for (std::size_t c = 0; c < n; ++c)
                    amp(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(c)) =
                        amplitude(cells[c], ue, cfg.path_loss);
            }
            const double reg = noise.mean();

            Eigen::MatrixXcd h(n, n), w(n, n), stale(n, n);
            std::vector<Eigen::MatrixXcd> rx(clusters.size());
            for (std::size_t s = 0; s < dc.subcarriers; ++s)
            {
                for (Eigen::Index c = 0; c < h.cols(); ++c)
                    for (Eigen::Index u = 0; u < h.rows(); ++u)
                    {
                        h(u, c) = amp(u, c) * rng.complex_normal();
                        w(u, c) = amp(u, c) * rng.complex_normal();
                    }
                for (std::size_t l = 0; l < n_lat; ++l)
                {
                    stale = rho[l] * h + std::sqrt(std::max(0.0, 1.0 - rho[l] * rho[l])) * w;
                    for (std::size_t k = 0; k < clusters.size(); ++k)
                    {
                        const auto& members = clusters[k];
                        const auto m = static_cast<Eigen::Index>(members.size());
                        comp::ChannelMatrix hs{Eigen::MatrixXcd(m, m), dc.latencies_ms[l]};
                        Eigen::MatrixXcd h_cols(h.rows(), m);
                        for (Eigen::Index a = 0; a < m; ++a)
                        {
                            const auto ca = static_cast<Eigen::Index>(members[static_cast<std::size_t>(a)]);
                            h_cols.col(a) = h.col(ca);
                            for (Eigen::Index b = 0; b < m; ++b)
                                hs.entries(b, a) = stale(static_cast<Eigen::Index>(members[static_cast<std::size_t>(b)]), ca);
                        }
                        const auto pre = comp::precode(hs, std::span(power_dbm_all).first(members.size()), reg);
                        rx[k] = h_cols * pre.matrix; // all users x this cluster's streams
                    }
                    double sum_se = 0.0;
                    for (std::size_t k = 0; k < clusters.size(); ++k)
                        for (std::size_t a = 0; a < clusters[k].size(); ++a)
                        {
                            const auto u = static_cast<Eigen::Index>(clusters[k][a]);
                            double total = 0.0;
                            for (const auto& rk : rx)
                                total += rk.row(u).squaredNorm();
                            const double signal = std::norm(rx[k](u, static_cast<Eigen::Index>(a)));
                            sum_se += std::log2(1.0 + signal / (total - signal + noise(u)));
                        }
                    samples[t][l] += sum_se / static_cast<double>(dc.subcarriers);
                }
            }
        });

        const std::string radius = format_number(r);
        const std::string n_cells = std::to_string(n);
        const auto ref = column(samples, 0);
        for (std::size_t l = 0; l < n_lat; ++l)
        {
            const auto col = column(samples, l);
            const std::vector<std::string> coords{radius, n_cells, format_number(dc.latencies_ms[l])};
            table.add(coords, "capacity", summarize(col));
            const Summary ratio = ratio_summary(col, ref);
            table.add(coords, "capacity_drop", 1.0 - ratio.mean, ratio.ci95_half_width, ratio.count);
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Distance sweep

records::SweepTable run_distance_sweep(const config::ScenarioConfig& cfg)
{
    cfg.validate();
    const auto& dc = cfg.distance;
    const std::size_t n_trials = cfg.trials_for(dc.trials);
    const auto params = cfg.fading.at_speed(dc.user_speed_kmph);
    const std::size_t n_lat = dc.latencies_ms.size();
    const std::size_t n_dist = dc.distances_m.size();
    std::vector<double> rho(n_lat);
    for (std::size_t l = 0; l < n_lat; ++l)
        rho[l] = fading::correlation_at(dc.latencies_ms[l], params);

    const auto ring = geometry::cluster_surrounding_sites(dc.cell_radius_m, dc.interfering_rings);
    std::vector<geometry::NodeSpec> ring_cells;
    for (const auto& p : ring)
        if (dc.interfering_rings > 0)
            ring_cells.push_back(geometry::make_micro(p));

    // per trial, per distance: [ignore, avoid, comp(l0), comp(l1), ...]
    const std::size_t n_cols = 2 + n_lat;
    std::vector<std::vector<std::vector<double>>> samples(
        n_dist, std::vector<std::vector<double>>(n_trials, std::vector<double>(n_cols, 0.0)));

    parallel_for(n_trials, cfg.threads, [&](std::size_t t) {
        for (std::size_t di = 0; di < n_dist; ++di)
        {
            Rng rng(derive_seed(cfg.seed, {stream(Stream::distance), di, t}));
            const auto cl = geometry::symmetric_three_cell_cluster(dc.cell_radius_m, dc.distances_m[di],
                                                                   dc.user_speed_kmph);
            const std::size_t k = cl.users.size();
            const std::size_t n_sc = dc.subcarriers;

            comp::CapacityBudget budget;
            for (const auto& c : cl.cells)
                budget.cell_power_mw.push_back(comp::dbm_to_mw(c.tx_power_dbm));
            for (const auto& u : cl.users)
                budget.noise_mw.push_back(noise_mw(u, cfg.radio.bandwidth_hz));
            const double reg = comp::default_regularization(budget.noise_mw);

            // Frequency-correlated fading profiles per link.
            std::vector<std::vector<ComplexGain>> prof_h(k * k), prof_w(k * k);
            std::vector<double> amp(k * k);
            for (std::size_t u = 0; u < k; ++u)
                for (std::size_t c = 0; c < k; ++c)
                {
                    amp[u * k + c] = amplitude(cl.cells[c], cl.users[u], cfg.path_loss);
                    prof_h[u * k + c] = fading::frequency_profile(n_sc, params, rng);
                    prof_w[u * k + c] = fading::frequency_profile(n_sc, params, rng);
                }
            std::vector<std::vector<double>> ext(k, std::vector<double>(n_sc, 0.0));
            for (std::size_t u = 0; u < k; ++u)
                for (const auto& rc : ring_cells)
                {
                    const double a = amplitude(rc, cl.users[u], cfg.path_loss);
                    const double p = comp::dbm_to_mw(rc.tx_power_dbm);
                    const auto prof = fading::frequency_profile(n_sc, params, rng);
                    for (std::size_t s = 0; s < n_sc; ++s)
                        ext[u][s] += p * a * a * std::norm(prof[s]);
                }

            auto& row = samples[di][t];
            comp::ChannelMatrix h{Eigen::MatrixXcd(k, k), 0.0};
            comp::ChannelMatrix hs{Eigen::MatrixXcd(k, k), 0.0};
            for (std::size_t s = 0; s < n_sc; ++s)
            {
                budget.external_interference_mw.assign(k, 0.0);
                for (std::size_t u = 0; u < k; ++u)
                    budget.external_interference_mw[u] = ext[u][s];
                for (std::size_t u = 0; u < k; ++u)
                    for (std::size_t c = 0; c < k; ++c)
                        h.entries(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(c)) =
                            amp[u * k + c] * prof_h[u * k + c][s];

                auto per_cell = [&](const std::vector<comp::CapacityRecord>& recs) {
                    double sum = 0.0;
                    for (const auto& rec : recs)
                        sum += rec.spectral_efficiency_bps_hz;
                    return sum / static_cast<double>(k) / static_cast<double>(n_sc);
                };
                row[0] += per_cell(comp::ignore_capacity(h, budget));
                row[1] += per_cell(comp::avoid_capacity(h, budget));
                for (std::size_t l = 0; l < n_lat; ++l)
                {
                    const double innov = std::sqrt(std::max(0.0, 1.0 - rho[l] * rho[l]));
                    for (std::size_t u = 0; u < k; ++u)
                        for (std::size_t c = 0; c < k; ++c)
                            hs.entries(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(c)) =
                                amp[u * k + c] * (rho[l] * prof_h[u * k + c][s] + innov * prof_w[u * k + c][s]);
                    hs.timestamp_ms = -dc.latencies_ms[l];
                    row[2 + l] += per_cell(comp::comp_capacity(h, hs, budget, reg));
                }
            }
        }
    });

    SweepTable table{"distance", {"distance_m", "latency_ms"}, {}};
    for (std::size_t di = 0; di < n_dist; ++di)
    {
        const std::string d = format_number(dc.distances_m[di]);
        const auto avoid = column(samples[di], 1);
        auto emit = [&](const std::string& lat, const std::string& scheme, std::size_t k) {
            const auto col = column(samples[di], k);
            table.add({d, lat}, scheme + "_capacity", summarize(col));
            table.add({d, lat}, scheme + "_normalized", ratio_summary(col, avoid));
        };
        emit("", "ignore", 0);
        emit("", "avoid", 1);
        for (std::size_t l = 0; l < n_lat; ++l)
            emit(format_number(dc.latencies_ms[l]), "comp", 2 + l);
    }
    return table;
}

// ---------------------------------------------------------------------------
// Scaling

namespace {

struct UserLinks
{
    std::vector<double> amp; // per cell
    double noise = 0.0;
    double rho_swiftc = 1.0;
    double rho_x2 = 1.0;
};

} // namespace

ScalingSample scaling_trial(const config::ScenarioConfig& cfg, int micro_per_sector, std::size_t trial)
{
    const auto& sc = cfg.scaling;
    Rng rng(derive_seed(cfg.seed, {stream(Stream::scaling), static_cast<std::uint64_t>(micro_per_sector), trial}));
    geometry::TopologyOptions opts;
    opts.n_users = sc.n_users;
    const auto topo = geometry::build_topology(micro_per_sector, sc.macro_radius_m, rng.next(), opts);
    const std::size_t n_cells = topo.cells.size();
    const std::size_t n_users = topo.users.size();

    controlplane::ControlPlaneModel swiftc = cfg.control_plane;
    swiftc.variant = controlplane::Variant::swiftc;
    controlplane::ControlPlaneModel x2 = cfg.control_plane;
    x2.variant = controlplane::Variant::x2_ip;
    const double l_swiftc = controlplane::total_coordination_latency(swiftc);
    const double l_x2 = controlplane::total_coordination_latency(x2);

    std::vector<double> power_mw(n_cells), power_dbm(n_cells);
    for (std::size_t c = 0; c < n_cells; ++c)
    {
        power_dbm[c] = topo.cells[c].tx_power_dbm;
        power_mw[c] = comp::dbm_to_mw(power_dbm[c]);
    }

    std::vector<UserLinks> links(n_users);
    std::vector<scheduler::ServingDecision> decisions;
    scheduler::SchedulerPolicy policy = cfg.scheduler;
    policy.macro_cell = 0;
    policy.macro_is_candidate = false;
    for (std::size_t u = 0; u < n_users; ++u)
    {
        const auto& ue = topo.users[u];
        auto& lk = links[u];
        lk.noise = noise_mw(ue, cfg.radio.bandwidth_hz);
        const auto params = cfg.fading.at_speed(ue.velocity_kmph);
        lk.rho_swiftc = fading::correlation_at(l_swiftc, params);
        lk.rho_x2 = fading::correlation_at(l_x2, params);
        std::vector<double> snr(n_cells);
        for (std::size_t c = 0; c < n_cells; ++c)
        {
            lk.amp.push_back(amplitude(topo.cells[c], ue, cfg.path_loss));
            snr[c] = geometry::large_scale_snr_db(topo.cells[c], ue, cfg.radio.bandwidth_hz, cfg.path_loss);
        }
        decisions.push_back(scheduler::decide(u, ue.velocity_kmph, snr, policy));
    }
    scheduler::assign_airtime(decisions);

    std::vector<bool> active(n_cells, false);
    std::vector<std::vector<std::size_t>> attached(n_cells); // by primary cell, low-mobility only
    for (const auto& d : decisions)
    {
        for (auto c : d.serving_cells)
            active[c] = true;
        if (d.mode != scheduler::Mode::macro)
            attached[d.serving_cells[0]].push_back(d.user_id);
    }
    std::vector<std::size_t> per_primary(n_cells, 0);
    for (const auto& d : decisions)
        ++per_primary[d.serving_cells[0]];

    // With blanking the tiers alternate in time: the macro tier gets the airtime of
    // its users under round robin and neither tier hears the other.
    const bool blanking = sc.macro_protection == "abs";
    double macro_time = 1.0, micro_time = 1.0;
    if (blanking)
    {
        macro_time = static_cast<double>(per_primary[0]) / static_cast<double>(n_users);
        micro_time = 1.0 - macro_time;
    }
    std::vector<bool> heard_by_micro = active;
    if (blanking)
        heard_by_micro[0] = false;

    ScalingSample out;
    const std::size_t draws = sc.fading_draws;
    for (std::size_t u = 0; u < n_users; ++u)
    {
        const auto& d = decisions[u];
        const auto& lk = links[u];

        // Partners: one user homed on each other cell of the set, preferring joint
        // users that also lean on this user's primary cell.
        std::vector<std::size_t> group{u};
        const bool joint = d.mode == scheduler::Mode::comp || d.mode == scheduler::Mode::avoid_assist;
        if (joint)
            for (std::size_t i = 1; i < d.serving_cells.size(); ++i)
            {
                std::vector<std::size_t> pool, preferred;
                for (auto v : attached[d.serving_cells[i]])
                {
                    if (v == u)
                        continue;
                    pool.push_back(v);
                    const auto& dv = decisions[v];
                    if (std::find(dv.serving_cells.begin(), dv.serving_cells.end(), d.serving_cells[0]) !=
                        dv.serving_cells.end())
                        preferred.push_back(v);
                }
                const auto& from = preferred.empty() ? pool : preferred;
                if (!from.empty())
                    group.push_back(from[rng.index(from.size())]);
            }
        std::vector<bool> silent(n_cells, false);
        for (auto c : d.serving_cells)
            silent[c] = true;
        for (auto c : d.muted_cells)
            silent[c] = true;

        double base = 0.0, ideal = 0.0, rate_s = 0.0, rate_x = 0.0;
        const std::size_t primary = d.serving_cells[0];
        const auto m = static_cast<Eigen::Index>(d.serving_cells.size());
        const auto kk = static_cast<Eigen::Index>(group.size());
        comp::ChannelMatrix h{Eigen::MatrixXcd(kk, m), 0.0}, hs_s{Eigen::MatrixXcd(kk, m), 0.0},
            hs_x{Eigen::MatrixXcd(kk, m), 0.0};
        std::vector<double> set_power_dbm;
        for (auto c : d.serving_cells)
            set_power_dbm.push_back(power_dbm[c]);
        const double reg = lk.noise;

        for (std::size_t dr = 0; dr < draws; ++dr)
        {
            std::vector<ComplexGain> g(n_cells);
            for (std::size_t c = 0; c < n_cells; ++c)
                g[c] = lk.amp[c] * rng.complex_normal();

            base += std::log2(1.0 + power_mw[0] * std::norm(g[0]) / lk.noise);
            ideal += std::log2(1.0 + power_mw[primary] * std::norm(g[primary]) / lk.noise);

            if (!joint)
            {
                const bool macro_tier = primary == 0;
                double interference = 0.0;
                for (std::size_t c = 0; c < n_cells; ++c)
                    if (c != primary && active[c] && !(blanking && macro_tier) && (macro_tier || heard_by_micro[c]))
                        interference += power_mw[c] * std::norm(g[c]);
                const double se = std::log2(1.0 + power_mw[primary] * std::norm(g[primary]) / (interference + lk.noise));
                rate_s += se;
                rate_x += se;
                continue;
            }

            // Every stream of the joint slot sees the cells outside the set.
            std::vector<double> external(group.size(), 0.0);
            for (std::size_t a = 0; a < group.size(); ++a)
                for (std::size_t c = 0; c < n_cells; ++c)
                    if (!silent[c] && heard_by_micro[c])
                    {
                        const double amp = links[group[a]].amp[c];
                        external[a] += power_mw[c] * (a == 0 ? std::norm(g[c]) : amp * amp * std::norm(rng.complex_normal()));
                    }

            for (Eigen::Index a = 0; a < kk; ++a)
            {
                const auto& la = links[group[static_cast<std::size_t>(a)]];
                for (Eigen::Index b = 0; b < m; ++b)
                {
                    const std::size_t c = d.serving_cells[static_cast<std::size_t>(b)];
                    const ComplexGain true_h = a == 0 ? g[c] : la.amp[c] * rng.complex_normal();
                    const ComplexGain innov = la.amp[c] * rng.complex_normal();
                    h.entries(a, b) = true_h;
                    hs_s.entries(a, b) =
                        la.rho_swiftc * true_h + std::sqrt(std::max(0.0, 1.0 - la.rho_swiftc * la.rho_swiftc)) * innov;
                    hs_x.entries(a, b) =
                        la.rho_x2 * true_h + std::sqrt(std::max(0.0, 1.0 - la.rho_x2 * la.rho_x2)) * innov;
                }
            }
            comp::CapacityBudget budget;
            for (auto c : d.serving_cells)
                budget.cell_power_mw.push_back(power_mw[c]);
            for (auto v : group)
                budget.noise_mw.push_back(links[v].noise);
            budget.external_interference_mw = external;

            const auto sinr_s = comp::precoded_sinr(h, comp::precode(hs_s, set_power_dbm, reg), budget);
            const auto sinr_x = comp::precoded_sinr(h, comp::precode(hs_x, set_power_dbm, reg), budget);
            for (std::size_t a = 0; a < group.size(); ++a)
            {
                rate_s += std::log2(1.0 + sinr_s[a]);
                rate_x += std::log2(1.0 + sinr_x[a]);
            }
        }
        const double nd = static_cast<double>(draws);
        out.baseline += base / nd / static_cast<double>(n_users);
        out.ideal += ideal / nd / static_cast<double>(per_primary[primary]);
        const double share = d.airtime_share * (primary == 0 ? macro_time : micro_time);
        out.swiftc += share * rate_s / nd;
        out.x2 += share * rate_x / nd;
        if (joint)
        {
            out.comp_swiftc += share * rate_s / nd;
            out.comp_x2 += share * rate_x / nd;
        }
        const double w = 1.0 / static_cast<double>(n_users);
        switch (d.mode)
        {
        case scheduler::Mode::macro: out.frac_macro += w; break;
        case scheduler::Mode::ignore: out.frac_ignore += w; break;
        case scheduler::Mode::comp: out.frac_comp += w; break;
        case scheduler::Mode::avoid_assist: out.frac_avoid_assist += w; break;
        }
    }
    out.decisions = std::move(decisions);
    return out;
}

namespace {

std::vector<std::vector<ScalingSample>> scaling_samples(const config::ScenarioConfig& cfg,
                                                        const std::vector<int>& densities, std::size_t n_trials)
{
    std::vector<std::vector<ScalingSample>> out(densities.size(), std::vector<ScalingSample>(n_trials));
    parallel_for(densities.size() * n_trials, cfg.threads, [&](std::size_t i) {
        const std::size_t di = i / n_trials;
        const std::size_t t = i % n_trials;
        out[di][t] = scaling_trial(cfg, densities[di], t);
    });
    return out;
}

template <class F>
std::vector<double> pick(const std::vector<ScalingSample>& v, F f)
{
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& s : v)
        out.push_back(f(s));
    return out;
}

} // namespace

records::SweepTable run_scaling_experiment(const config::ScenarioConfig& cfg, nlohmann::json* decisions_audit)
{
    cfg.validate();
    const auto& sc = cfg.scaling;
    const std::size_t n_trials = cfg.trials_for(sc.trials);
    const auto samples = scaling_samples(cfg, sc.densities, n_trials);

    SweepTable table{"scaling", {"micro_per_sector", "n_small_cells"}, {}};
    if (decisions_audit)
        *decisions_audit = nlohmann::json::array();
    for (std::size_t di = 0; di < sc.densities.size(); ++di)
    {
        const int d = sc.densities[di];
        const std::vector<std::string> coords{std::to_string(d), std::to_string(d * geometry::kSectorsPerMacro)};
        const auto& s = samples[di];
        const auto base = pick(s, [](const ScalingSample& x) { return x.baseline; });
        const auto ideal = pick(s, [](const ScalingSample& x) { return x.ideal; });
        const auto sw = pick(s, [](const ScalingSample& x) { return x.swiftc; });
        const auto x2 = pick(s, [](const ScalingSample& x) { return x.x2; });
        table.add(coords, "ideal_normalized", ratio_summary(ideal, base));
        table.add(coords, "swiftc_normalized", ratio_summary(sw, base));
        table.add(coords, "x2_normalized", ratio_summary(x2, base));
        table.add(coords, "baseline_capacity", summarize(base));
        table.add(coords, "ideal_capacity", summarize(ideal));
        table.add(coords, "swiftc_capacity", summarize(sw));
        table.add(coords, "x2_capacity", summarize(x2));
        table.add(coords, "swiftc_x2_ratio", ratio_summary(sw, x2));
        table.add(coords, "frac_macro", summarize(pick(s, [](const ScalingSample& x) { return x.frac_macro; })));
        table.add(coords, "frac_ignore", summarize(pick(s, [](const ScalingSample& x) { return x.frac_ignore; })));
        table.add(coords, "frac_comp", summarize(pick(s, [](const ScalingSample& x) { return x.frac_comp; })));
        table.add(coords, "frac_avoid_assist",
                  summarize(pick(s, [](const ScalingSample& x) { return x.frac_avoid_assist; })));
        if (decisions_audit && !s.empty())
            decisions_audit->push_back({{"micro_per_sector", d}, {"trial", 0}, {"decisions", scheduler::to_json(s[0].decisions)}});
    }
    return table;
}

records::SweepTable run_comp_gain_experiment(const config::ScenarioConfig& cfg)
{
    cfg.validate();
    const auto& cg = cfg.comp_gain;
    const std::size_t n_trials = cfg.trials_for(cg.trials);
    const auto samples = scaling_samples(cfg, cg.densities, n_trials);

    double plot_max = 0.0;
    std::vector<std::vector<double>> sw(cg.densities.size()), x2(cg.densities.size());
    for (std::size_t di = 0; di < cg.densities.size(); ++di)
    {
        sw[di] = pick(samples[di], [](const ScalingSample& x) { return x.comp_swiftc; });
        x2[di] = pick(samples[di], [](const ScalingSample& x) { return x.comp_x2; });
        plot_max = std::max({plot_max, summarize(sw[di]).mean, summarize(x2[di]).mean});
    }

    SweepTable table{"comp_gain", {"micro_per_sector", "n_small_cells"}, {}};
    for (std::size_t di = 0; di < cg.densities.size(); ++di)
    {
        const int d = cg.densities[di];
        const std::vector<std::string> coords{std::to_string(d), std::to_string(d * geometry::kSectorsPerMacro)};
        const Summary s = summarize(sw[di]);
        const Summary x = summarize(x2[di]);
        table.add(coords, "swiftc_comp_capacity", s);
        table.add(coords, "x2_comp_capacity", x);
        const double scale = plot_max > 0.0 ? 100.0 / plot_max : 0.0;
        table.add(coords, "swiftc_comp_pct_of_max", s.mean * scale, s.ci95_half_width * scale, s.count);
        table.add(coords, "x2_comp_pct_of_max", x.mean * scale, x.ci95_half_width * scale, x.count);
        const Summary r = ratio_summary(sw[di], x2[di]);
        table.add(coords, "swiftc_advantage", r.mean - 1.0, r.ci95_half_width, r.count);
    }
    return table;
}

// ---------------------------------------------------------------------------
// Codec

records::SweepTable run_codec_bench(const config::ScenarioConfig& cfg)
{
    cfg.validate();
    const auto& cc = cfg.codec;
    const auto qc = cc.quantizer();
    const auto params = cfg.fading.params();

    enum Metric : std::size_t
    {
        kUncompressed,
        kCompressed,
        kEffective,
        kTotal,
        kTotalUncompressed,
        kCqiBits,
        kCpiBits,
        kDistortion,
        kFreqSame,
        kFreqPm1,
        kFreqOther,
        kCqiSame,
        kCqiMinus,
        kCqiPlus,
        kCqiRefresh,
        kCpiSame,
        kCpiMinus,
        kCpiPlus,
        kCpiRefresh,
        kCount
    };
    static const char* names[kCount] = {"kbps_per_rb_uncompressed", "kbps_per_rb_compressed",
                                        "effective_kbps_per_rb",    "total_mbps",
                                        "total_mbps_uncompressed",  "cqi_bits_per_subframe",
                                        "cpi_bits_per_subframe",    "rb_distortion",
                                        "freq_p_same",              "freq_p_plus_minus_one",
                                        "freq_p_other",             "time_cqi_p_same",
                                        "time_cqi_p_minus_one",     "time_cqi_p_plus_one",
                                        "time_cqi_p_refresh",       "time_cpi_p_same",
                                        "time_cpi_p_minus_one",     "time_cpi_p_plus_one",
                                        "time_cpi_p_refresh"};

    std::vector<std::vector<double>> rows(cc.grids, std::vector<double>(kCount, 0.0));
    parallel_for(cc.grids, cfg.threads, [&](std::size_t g) {
        const auto ch = fading::generate_process(params, cc.n_subframes, cc.n_subchannels,
                                                 derive_seed(cfg.seed, {stream(Stream::codec), 0, g}));
        const auto rr = csicodec::rate_report(ch, cc.n_rbs, cc.neighbors, cc.coordination_fraction, qc);
        const auto fp = csicodec::frequency_increment_probabilities(ch, qc);
        auto& r = rows[g];
        r[kUncompressed] = rr.kbps_per_rb_uncompressed;
        r[kCompressed] = rr.kbps_per_rb_compressed;
        r[kEffective] = rr.effective_kbps_per_rb;
        r[kTotal] = rr.total_mbps;
        r[kTotalUncompressed] = rr.total_mbps_uncompressed;
        r[kCqiBits] = rr.cqi_bits_per_subframe;
        r[kCpiBits] = rr.cpi_bits_per_subframe;
        r[kDistortion] = rr.rb_distortion;
        r[kFreqSame] = fp.same;
        r[kFreqPm1] = fp.plus_minus_one;
        r[kFreqOther] = fp.other;
        auto frac = [](std::size_t n, const csicodec::IncrementStats& s) {
            return s.total() ? static_cast<double>(n) / static_cast<double>(s.total()) : 0.0;
        };
        const auto& tc = rr.cqi_time_stats;
        const auto& tp = rr.cpi_time_stats;
        r[kCqiSame] = frac(tc.same, tc);
        r[kCqiMinus] = frac(tc.minus_one, tc);
        r[kCqiPlus] = frac(tc.plus_one, tc);
        r[kCqiRefresh] = frac(tc.refresh, tc);
        r[kCpiSame] = frac(tp.same, tp);
        r[kCpiMinus] = frac(tp.minus_one, tp);
        r[kCpiPlus] = frac(tp.plus_one, tp);
        r[kCpiRefresh] = frac(tp.refresh, tp);
    });

    SweepTable table{"codec", {"q", "input_kbps"}, {}};
    const std::string q = std::to_string(cc.q);
    for (std::size_t k = 0; k < kCount; ++k)
        table.add({q, ""}, names[k], summarize(column(rows, k)));

    std::vector<double> inputs = cc.macro_rates_kbps;
    inputs.push_back(summarize(column(rows, kTotal)).mean * 1000.0);
    for (double rate : inputs)
    {
        const std::string in = format_number(rate);
        table.add({q, in}, "macro_overhead_kbps_500m",
                  csicodec::macro_overhead_kbps(rate, 1.0, csicodec::kSeRatioGroundUe500m), 0.0, 1);
        table.add({q, in}, "macro_overhead_kbps_edge",
                  csicodec::macro_overhead_kbps(rate, 1.0, csicodec::kSeRatioGroundUeEdge), 0.0, 1);
    }
    return table;
}

// ---------------------------------------------------------------------------
// Budget

records::SweepTable emit_budget_tables(const config::ScenarioConfig& cfg)
{
    cfg.validate();
    const auto ue = geometry::make_ue({}, 0.0);
    const auto micro = geometry::make_micro({});
    struct Direction
    {
        const char* name;
        double tx_dbm;
        double rx_nf_db;
    };
    // Uplink: UE transmitter into the small-cell receiver. Downlink: small
    // cell transmitter into the UE receiver.
    const Direction dirs[] = {{"uplink", ue.tx_power_dbm, micro.noise_figure_db},
                              {"downlink", micro.tx_power_dbm, ue.noise_figure_db}};

    SweepTable table{"budget", {"direction", "bandwidth_mhz"}, {}};
    for (const auto& dir : dirs)
        for (double bw : cfg.budget.bandwidths_hz)
        {
            const auto lb = geometry::make_link_budget(dir.tx_dbm, bw, dir.rx_nf_db);
            const std::vector<std::string> coords{dir.name, format_number(bw / 1e6)};
            table.add(coords, "tx_power_dbm", lb.tx_power_dbm, 0.0, 1);
            table.add(coords, "noise_floor_dbm", lb.noise_floor_dbm, 0.0, 1);
            table.add(coords, "cancellation_db", lb.required_cancellation_db, 0.0, 1);
            table.add(coords, "noise_floor_full_duplex_dbm",
                      lb.noise_floor_dbm + geometry::kFullDuplexNoisePenaltyDb, 0.0, 1);
        }
    return table;
}

nlohmann::json timelines(const config::ScenarioConfig& cfg)
{
    nlohmann::json out = nlohmann::json::array();
    for (auto variant : {controlplane::Variant::swiftc, controlplane::Variant::x2_ip})
    {
        auto m = cfg.control_plane;
        m.variant = variant;
        const auto t = controlplane::timeline(m);
        out.push_back({{"variant", std::string(controlplane::to_string(variant))},
                       {"waiting", std::string(controlplane::to_string(m.waiting))},
                       {"one_way_ms", controlplane::one_way_latency(m)},
                       {"round_trip_ms", controlplane::round_trip_latency(m)},
                       {"total_ms", controlplane::total_coordination_latency(m)},
                       {"events", controlplane::to_json(t)}});
    }
    return out;
}

} // namespace hetsim::experiments
