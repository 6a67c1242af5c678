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

#include "hetsim/random.hpp"
#include "hetsim/scheduler.hpp"

#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace hetsim;
using namespace hetsim::scheduler;

namespace {

// Reference rule on sorted gaps: returns serving-set size, 0 for AVOID_ASSIST.
int reference_set_size(std::vector<double> snr, double threshold)
{
    std::sort(snr.begin(), snr.end(), std::greater<>());
    snr.resize(std::max<std::size_t>(snr.size(), 4), -1e300);
    for (int k = 0; k < 3; ++k)
        if (snr[static_cast<std::size_t>(k)] - snr[static_cast<std::size_t>(k) + 1] >= threshold)
            return k + 1;
    return 0;
}

std::vector<double> random_snrs(Rng& rng, std::size_t n)
{
    std::vector<double> v(n);
    for (auto& x : v)
        x = std::round(rng.uniform(-10.0, 50.0) * 2.0) / 2.0; // half-dB grid so ties occur
    return v;
}

ServingDecision comp_on(std::size_t id, std::vector<std::size_t> cells)
{
    ServingDecision d;
    d.user_id = id;
    d.mode = cells.size() == 1 ? Mode::ignore : Mode::comp;
    d.serving_cells = std::move(cells);
    return d;
}

} // namespace

TEST_CASE("rule examples")
{
    const std::vector<double> a{30.0, 10.0, 5.0};
    auto d = decide(7, 5.0, a);
    CHECK(d.user_id == 7);
    CHECK(d.mode == Mode::ignore);
    CHECK(d.serving_cells == std::vector<std::size_t>{0});

    const std::vector<double> b{30.0, 28.0, 5.0};
    d = decide(0, 5.0, b);
    CHECK(d.mode == Mode::comp);
    CHECK(d.serving_cells == std::vector<std::size_t>{0, 1});

    const std::vector<double> c{30.0, 28.0, 26.0, 5.0};
    d = decide(0, 1.0, c);
    CHECK(d.mode == Mode::comp);
    CHECK(d.serving_cells == std::vector<std::size_t>{0, 1, 2});

    d = decide(0, 30.0, a);
    CHECK(d.mode == Mode::macro);
    CHECK(d.serving_cells == std::vector<std::size_t>{0});

    SchedulerPolicy p;
    p.macro_cell = 2;
    d = decide(0, 60.0, a, p);
    CHECK(d.mode == Mode::macro);
    CHECK(d.serving_cells == std::vector<std::size_t>{2});
}

TEST_CASE("a single cell is always IGNORE")
{
    const std::vector<double> one{-20.0};
    const auto d = decide(0, 0.0, one);
    CHECK(d.mode == Mode::ignore);
    CHECK(d.serving_cells == std::vector<std::size_t>{0});
}

TEST_CASE("ties at the threshold take the coordination-free branch")
{
    const std::vector<double> tie{30.0, 15.0, 0.0};
    CHECK(decide(0, 0.0, tie).mode == Mode::ignore);
    const std::vector<double> below{30.0, 15.0 + 1e-9, 0.0};
    CHECK(decide(0, 0.0, below).mode == Mode::comp);
    const std::vector<double> tie2{30.0, 29.0, 14.0};
    CHECK(decide(0, 0.0, tie2).serving_cells.size() == 2);
}

TEST_CASE("AVOID_ASSIST mutes cells within the threshold of the strongest")
{
    const std::vector<double> s{30.0, 29.0, 28.0, 27.0, 20.0, 15.0, 10.0};
    const auto d = decide(0, 5.0, s);
    CHECK(d.mode == Mode::avoid_assist);
    CHECK(d.serving_cells == std::vector<std::size_t>{0, 1, 2});
    CHECK(d.muted_cells == std::vector<std::size_t>{3, 4});
    CHECK(d.occupied_cells() == std::vector<std::size_t>{0, 1, 2, 3, 4});

    const std::vector<double> four{30.0, 29.0, 28.0, 27.0};
    CHECK(decide(0, 5.0, four).muted_cells == std::vector<std::size_t>{3});
}

TEST_CASE("decisions match the sorted-gap rule on random inputs")
{
    Rng rng(12);
    for (int t = 0; t < 5000; ++t)
    {
        const auto snr = random_snrs(rng, 1 + rng.index(8));
        SchedulerPolicy p;
        p.threshold_db = rng.uniform(0.5, 25.0);
        const auto d = decide(0, 5.0, snr, p);
        const int k = reference_set_size(snr, p.threshold_db);
        if (k == 0)
        {
            CHECK(d.mode == Mode::avoid_assist);
            CHECK(d.serving_cells.size() == 3);
        }
        else
        {
            CHECK(d.serving_cells.size() == static_cast<std::size_t>(k));
            CHECK(d.mode == (k == 1 ? Mode::ignore : Mode::comp));
            CHECK(d.muted_cells.empty());
        }
        for (std::size_t i = 1; i < d.serving_cells.size(); ++i)
            CHECK(snr[d.serving_cells[i - 1]] >= snr[d.serving_cells[i]]);
        for (auto m : d.muted_cells)
        {
            CHECK(snr[d.serving_cells[0]] - snr[m] < p.threshold_db);
            CHECK(std::find(d.serving_cells.begin(), d.serving_cells.end(), m) == d.serving_cells.end());
        }
    }
}

TEST_CASE("permuting cells only relabels the decision")
{
    Rng rng(3);
    for (int t = 0; t < 2000; ++t)
    {
        auto snr = random_snrs(rng, 2 + rng.index(7));
        // Distinct values keep the argmax unique.
        for (std::size_t i = 0; i < snr.size(); ++i)
            snr[i] += 1e-3 * static_cast<double>(i);
        std::vector<std::size_t> perm(snr.size());
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = perm.size() - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.index(i + 1)]);
        std::vector<double> shuffled(snr.size());
        for (std::size_t i = 0; i < snr.size(); ++i)
            shuffled[perm[i]] = snr[i];

        SchedulerPolicy p;
        p.macro_is_candidate = true;
        const auto a = decide(0, 5.0, snr, p);
        const auto b = decide(0, 5.0, shuffled, p);
        CHECK(a.mode == b.mode);
        REQUIRE(a.serving_cells.size() == b.serving_cells.size());
        for (std::size_t i = 0; i < a.serving_cells.size(); ++i)
            CHECK(perm[a.serving_cells[i]] == b.serving_cells[i]);
        REQUIRE(a.muted_cells.size() == b.muted_cells.size());
        for (std::size_t i = 0; i < a.muted_cells.size(); ++i)
            CHECK(perm[a.muted_cells[i]] == b.muted_cells[i]);
    }
}

TEST_CASE("raising the threshold never moves a user into IGNORE")
{
    Rng rng(99);
    for (int t = 0; t < 3000; ++t)
    {
        const auto snr = random_snrs(rng, 1 + rng.index(8));
        std::size_t prev_size = 0;
        bool was_ignore = true;
        for (double th : {1.0, 3.0, 6.0, 10.0, 15.0, 20.0, 30.0})
        {
            SchedulerPolicy p;
            p.threshold_db = th;
            const auto d = decide(0, 5.0, snr, p);
            const bool ignore = d.mode == Mode::ignore;
            CHECK((!ignore || was_ignore));
            CHECK(d.serving_cells.size() >= prev_size);
            was_ignore = ignore;
            prev_size = d.serving_cells.size();
        }
    }
    // The opposite direction does happen: a wide gap stops dominating.
    const std::vector<double> s{30.0, 10.0, 5.0};
    SchedulerPolicy hi;
    hi.threshold_db = 25.0;
    CHECK(decide(0, 5.0, s).mode == Mode::ignore);
    CHECK(decide(0, 5.0, s, hi).mode == Mode::comp);
}

TEST_CASE("macro exclusion")
{
    SchedulerPolicy p;
    p.macro_is_candidate = false;
    const std::vector<double> s{50.0, 20.0, 18.0};
    const auto d = decide(0, 5.0, s, p);
    CHECK(d.mode == Mode::comp);
    CHECK(d.serving_cells == std::vector<std::size_t>{1, 2});
    const std::vector<double> only_macro{10.0};
    CHECK(decide(0, 5.0, only_macro, p).mode == Mode::macro);
}

TEST_CASE("decide argument checks")
{
    CHECK_THROWS_AS(decide(0, 0.0, std::vector<double>{}), std::invalid_argument);
    SchedulerPolicy p;
    p.threshold_db = 0.0;
    CHECK_THROWS_AS(decide(0, 0.0, std::vector<double>{1.0}, p), std::invalid_argument);
    p = {};
    p.macro_cell = 3;
    CHECK_THROWS_AS(decide(0, 0.0, std::vector<double>{1.0, 2.0}, p), std::invalid_argument);
}

TEST_CASE("round robin examples")
{
    std::vector<ServingDecision> one{comp_on(0, {0})};
    CHECK(round_robin(one) == std::vector<double>{1.0});

    std::vector<ServingDecision> four;
    for (std::size_t u = 0; u < 4; ++u)
        four.push_back(comp_on(u, {2}));
    for (double s : round_robin(four))
        CHECK(s == doctest::Approx(0.25));

    std::vector<ServingDecision> pair{comp_on(0, {0, 1}), comp_on(1, {0}), comp_on(2, {1})};
    assign_airtime(pair);
    CHECK(pair[0].airtime_share == doctest::Approx(0.5));
    CHECK(pair[1].airtime_share == doctest::Approx(0.5));
    CHECK(pair[2].airtime_share == doctest::Approx(0.5));
    const auto load = cell_airtime(pair, 2);
    CHECK(load[0] == doctest::Approx(1.0));
    CHECK(load[1] == doctest::Approx(1.0));

    // Cell 1 is crowded; the joint user is capped there and cell 0 hands the rest to its solo user.
    std::vector<ServingDecision> skew{comp_on(0, {0, 1}), comp_on(1, {0}), comp_on(2, {1}), comp_on(3, {1}),
                                      comp_on(4, {1})};
    const auto sh = round_robin(skew);
    CHECK(sh[0] == doctest::Approx(0.25));
    CHECK(sh[1] == doctest::Approx(0.75));
    CHECK(sh[2] == doctest::Approx(0.25));

    std::vector<ServingDecision> empty_cells{ServingDecision{}};
    CHECK_THROWS_AS(round_robin(empty_cells), std::invalid_argument);
}

TEST_CASE("per-cell airtime is conserved on random scenarios")
{
    Rng rng(8);
    for (int t = 0; t < 300; ++t)
    {
        const std::size_t n_cells = 2 + rng.index(10);
        std::vector<ServingDecision> ds;
        for (std::size_t u = 0; u < 1 + rng.index(60); ++u)
        {
            std::vector<double> snr(n_cells);
            for (auto& x : snr)
                x = rng.uniform(-10.0, 40.0);
            ds.push_back(decide(u, rng.uniform() < 0.2 ? 30.0 : 5.0, snr));
        }
        assign_airtime(ds);
        for (double l : cell_airtime(ds, n_cells))
            CHECK(l <= 1.0 + 1e-9);
        for (const auto& d : ds)
        {
            CHECK(d.airtime_share > 0.0);
            CHECK(d.airtime_share <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("decision JSON")
{
    const std::vector<double> s{30.0, 29.0, 28.0, 27.0};
    std::vector<ServingDecision> ds{decide(4, 5.0, s)};
    assign_airtime(ds);
    const auto j = to_json(ds);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["user_id"] == 4);
    CHECK(j[0]["mode"] == "AVOID_ASSIST");
    CHECK(j[0]["serving_cells"].size() == 3);
    CHECK(j[0]["muted_cells"].size() == 1);
    CHECK(j[0]["airtime_share"].get<double>() == doctest::Approx(1.0));
    CHECK(to_string(Mode::macro) == "MACRO");
}
