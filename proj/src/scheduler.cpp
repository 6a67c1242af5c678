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

#include "hetsim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hetsim::scheduler {

std::string_view to_string(Mode mode)
{
    switch (mode)
    {
    case Mode::macro:
        return "MACRO";
    case Mode::ignore:
        return "IGNORE";
    case Mode::comp:
        return "COMP";
    case Mode::avoid_assist:
        return "AVOID_ASSIST";
    }
    return "?";
}

std::vector<std::size_t> ServingDecision::occupied_cells() const
{
    std::vector<std::size_t> cells = serving_cells;
    cells.insert(cells.end(), muted_cells.begin(), muted_cells.end());
    return cells;
}

ServingDecision decide(std::size_t user_id, double velocity_kmph, std::span<const double> rx_snrs_db,
                       const SchedulerPolicy& policy)
{
    if (rx_snrs_db.empty())
        throw std::invalid_argument("decide: empty SNR list");
    if (!(policy.threshold_db > 0.0))
        throw std::invalid_argument("decide: threshold must be > 0 dB");
    if (policy.macro_cell >= rx_snrs_db.size())
        throw std::invalid_argument("decide: macro cell id outside the SNR list");

    ServingDecision d;
    d.user_id = user_id;

    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < rx_snrs_db.size(); ++c)
        if (policy.macro_is_candidate || c != policy.macro_cell)
            order.push_back(c);

    if (velocity_kmph >= policy.high_mobility_kmph || order.empty())
    {
        d.mode = Mode::macro;
        d.serving_cells = {policy.macro_cell};
        return d;
    }

    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rx_snrs_db[a] > rx_snrs_db[b]; });
    const auto snr = [&](std::size_t rank) {
        return rank < order.size() ? rx_snrs_db[order[rank]] : -std::numeric_limits<double>::infinity();
    };
    const auto dominates = [&](std::size_t rank) { return snr(rank) - snr(rank + 1) >= policy.threshold_db; };

    if (dominates(0))
    {
        d.mode = Mode::ignore;
        d.serving_cells = {order[0]};
    }
    else if (dominates(1))
    {
        d.mode = Mode::comp;
        d.serving_cells = {order[0], order[1]};
    }
    else if (dominates(2))
    {
        d.mode = Mode::comp;
        d.serving_cells = {order[0], order[1], order[2]};
    }
    else
    {
        d.mode = Mode::avoid_assist;
        d.serving_cells = {order[0], order[1], order[2]};
        for (std::size_t r = 3; r < order.size() && snr(0) - snr(r) < policy.threshold_db; ++r)
            d.muted_cells.push_back(order[r]);
    }
    return d;
}

std::vector<double> round_robin(std::span<const ServingDecision> decisions)
{
    const std::size_t n = decisions.size();
    std::vector<std::vector<std::size_t>> cells(n);
    std::size_t n_cells = 0;
    for (std::size_t u = 0; u < n; ++u)
    {
        cells[u] = decisions[u].occupied_cells();
        std::sort(cells[u].begin(), cells[u].end());
        cells[u].erase(std::unique(cells[u].begin(), cells[u].end()), cells[u].end());
        if (cells[u].empty())
            throw std::invalid_argument("round_robin: decision without cells");
        n_cells = std::max(n_cells, cells[u].back() + 1);
    }

    std::vector<double> share(n, 0.0);
    std::vector<bool> active(n, true);
    std::vector<double> frozen(n_cells, 0.0);
    std::size_t remaining = n;
    while (remaining > 0)
    {
        std::vector<std::size_t> n_active(n_cells, 0);
        for (std::size_t u = 0; u < n; ++u)
            if (active[u])
                for (auto c : cells[u])
                    ++n_active[c];

        double level = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n_cells; ++c)
            if (n_active[c] > 0)
                level = std::min(level, (1.0 - frozen[c]) / static_cast<double>(n_active[c]));

        constexpr double kTol = 1e-12;
        std::vector<bool> saturated(n_cells, false);
        for (std::size_t c = 0; c < n_cells; ++c)
            if (n_active[c] > 0 &&
                frozen[c] + level * static_cast<double>(n_active[c]) >= 1.0 - kTol)
                saturated[c] = true;

        for (std::size_t u = 0; u < n; ++u)
        {
            if (!active[u])
                continue;
            if (std::any_of(cells[u].begin(), cells[u].end(), [&](std::size_t c) { return saturated[c]; }))
            {
                share[u] = level;
                active[u] = false;
                --remaining;
                for (auto c : cells[u])
                    frozen[c] += level;
            }
        }
    }
    return share;
}

void assign_airtime(std::vector<ServingDecision>& decisions)
{
    const auto shares = round_robin(decisions);
    for (std::size_t u = 0; u < decisions.size(); ++u)
        decisions[u].airtime_share = shares[u];
}

std::vector<double> cell_airtime(std::span<const ServingDecision> decisions, std::size_t n_cells)
{
    std::vector<double> load(n_cells, 0.0);
    for (const auto& d : decisions)
    {
        auto cells = d.occupied_cells();
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        for (auto c : cells)
            if (c < n_cells)
                load[c] += d.airtime_share;
    }
    return load;
}

nlohmann::json to_json(std::span<const ServingDecision> decisions)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& d : decisions)
        out.push_back({{"user_id", d.user_id},
                       {"mode", std::string(to_string(d.mode))},
                       {"serving_cells", d.serving_cells},
                       {"muted_cells", d.muted_cells},
                       {"airtime_share", d.airtime_share}});
    return out;
}

} // namespace hetsim::scheduler
