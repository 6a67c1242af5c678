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

#include "hetsim/csicodec.hpp"
#include "hetsim/fading.hpp"
#include "hetsim/random.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

using namespace hetsim;
using namespace hetsim::csicodec;

namespace {

std::string bit_string(const EncodedCsiStream& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.n_bits; ++i)
        out.push_back(((s.bytes[i / 8] >> (7 - i % 8)) & 1u) ? '1' : '0');
    return out;
}

EncodedCsiStream from_bits(const std::string& bits, std::size_t n_coefficients)
{
    BitWriter w;
    for (char c : bits)
        w.put_bit(c == '1');
    EncodedCsiStream s;
    s.n_bits = w.size();
    s.bytes = std::move(w).take();
    s.n_coefficients = n_coefficients;
    return s;
}

// Independent length oracle for the increment code.
std::size_t expected_bits(const std::vector<int>& v, int q, bool cyclic)
{
    const int n = 1 << q;
    std::size_t bits = static_cast<std::size_t>(q);
    for (std::size_t i = 1; i < v.size(); ++i)
    {
        const int d = v[i] - v[i - 1];
        const int m = cyclic ? ((d % n) + n) % n : d;
        // With two levels a cyclic step is both +1 and -1; the shorter -1 wins.
        const bool down = cyclic ? m == n - 1 : d == -1;
        const bool up = cyclic ? m == 1 : d == 1;
        bits += d == 0 ? 1 : down ? 2 : up ? 3 : 3 + static_cast<std::size_t>(q);
    }
    return bits;
}

} // namespace

TEST_CASE("hand-worked codeword")
{
    const std::vector<int> levels{5, 4, 5, 20};
    const auto s = encode_increments(levels, 6);
    CHECK(s.n_bits == 20);
    CHECK(bit_string(s) == "000101" "10" "110" "111" "010100");
    CHECK(s.stats.same == 0);
    CHECK(s.stats.minus_one == 1);
    CHECK(s.stats.plus_one == 1);
    CHECK(s.stats.refresh == 1);
    CHECK(decode_increments(s, 6) == levels);
}

TEST_CASE("constant sequence costs q + N - 1 bits")
{
    for (int q : {1, 4, 6, 10})
        for (std::size_t n : {1u, 2u, 12u, 500u})
        {
            const std::vector<int> v(n, (1 << q) - 1);
            const auto s = encode_increments(v, q);
            CHECK(s.n_bits == static_cast<std::size_t>(q) + n - 1);
            CHECK(s.stats.same == n - 1);
        }
}

TEST_CASE("cyclic wrap uses the one-step codewords")
{
    const std::vector<int> v{63, 0, 63};
    const auto cyc = encode_increments(v, 6, true);
    CHECK(bit_string(cyc) == "111111" "110" "10");
    CHECK(decode_increments(cyc, 6, true) == v);
    const auto lin = encode_increments(v, 6, false);
    CHECK(lin.stats.refresh == 2);
    CHECK(decode_increments(lin, 6, false) == v);
}

TEST_CASE("random round trips")
{
    Rng rng(77);
    for (int trial = 0; trial < 10000; ++trial)
    {
        const int q = 1 + static_cast<int>(rng.index(8));
        const int n = 1 << q;
        const bool cyclic = rng.uniform() < 0.5;
        const std::size_t len = 1 + rng.index(64);
        const int mode = trial % 3; // 0: random walk, 1: all refresh, 2: uniform
        std::vector<int> v{static_cast<int>(rng.index(static_cast<std::size_t>(n)))};
        while (v.size() < len)
        {
            int next;
            if (mode == 0)
            {
                const int step = static_cast<int>(rng.index(3)) - 1;
                next = cyclic ? (v.back() + step + n) % n : std::clamp(v.back() + step, 0, n - 1);
            }
            else if (mode == 1 && n >= 8)
            {
                do
                    next = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
                while (std::abs(next - v.back()) <= 1 || (cyclic && std::abs(next - v.back()) == n - 1));
            }
            else
                next = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
            v.push_back(next);
        }
        const auto s = encode_increments(v, q, cyclic);
        REQUIRE(decode_increments(s, q, cyclic) == v);
        CHECK(s.n_bits == expected_bits(v, q, cyclic));
        CHECK(s.stats.total() == len - 1);
        CHECK(s.bytes.size() == (s.n_bits + 7) / 8);
        if (mode == 1 && n >= 8)
            CHECK(s.stats.refresh == len - 1);
    }
}

TEST_CASE("increment codewords are prefix free")
{
    const std::vector<std::string> words{"0", "10", "110", "111"};
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j)
            if (i != j)
                CHECK(words[j].rfind(words[i], 0) != 0);
    // Every one of them is what the encoder actually emits after a 1-bit header.
    CHECK(bit_string(encode_increments(std::vector<int>{1, 1}, 1)) == "1" "0");
    CHECK(bit_string(encode_increments(std::vector<int>{1, 0}, 1)) == "1" "10");
    CHECK(bit_string(encode_increments(std::vector<int>{2, 3}, 2)) == "10" "110");
    CHECK(bit_string(encode_increments(std::vector<int>{0, 3}, 2)) == "00" "111" "11");
}

TEST_CASE("malformed streams report the offending bit")
{
    SUBCASE("truncated header")
    {
        try
        {
            decode_increments(from_bits("0001", 2), 6);
            FAIL("expected DecodeError");
        }
        catch (const DecodeError& e)
        {
            CHECK(e.bit_offset() == 0);
        }
    }
    SUBCASE("truncated refresh payload")
    {
        try
        {
            decode_increments(from_bits("000101" "111" "01", 2), 6);
            FAIL("expected DecodeError");
        }
        catch (const DecodeError& e)
        {
            CHECK(e.bit_offset() == 9);
        }
    }
    SUBCASE("step below zero")
    {
        try
        {
            decode_increments(from_bits("000000" "10", 2), 6);
            FAIL("expected DecodeError");
        }
        catch (const DecodeError& e)
        {
            CHECK(e.bit_offset() == 6);
        }
    }
    SUBCASE("refresh to a neighbouring level")
    {
        try
        {
            decode_increments(from_bits("000101" "0" "111" "000110", 3), 6);
            FAIL("expected DecodeError");
        }
        catch (const DecodeError& e)
        {
            CHECK(e.bit_offset() == 7);
        }
    }
    SUBCASE("trailing bits")
    {
        try
        {
            decode_increments(from_bits("000101" "0" "0", 2), 6);
            FAIL("expected DecodeError");
        }
        catch (const DecodeError& e)
        {
            CHECK(e.bit_offset() == 7);
        }
    }
    SUBCASE("bit count larger than the buffer")
    {
        auto s = from_bits("000101", 1);
        s.n_bits = 9;
        CHECK_THROWS_AS(decode_increments(s, 6), DecodeError);
    }
    SUBCASE("no coefficients")
    {
        CHECK_THROWS_AS(decode_increments(from_bits("000101", 0), 6), DecodeError);
    }
}

TEST_CASE("encoder argument checks")
{
    CHECK_THROWS_AS(encode_increments(std::vector<int>{}, 6), std::invalid_argument);
    CHECK_THROWS_AS(encode_increments(std::vector<int>{64}, 6), std::invalid_argument);
    CHECK_THROWS_AS(encode_increments(std::vector<int>{-1}, 6), std::invalid_argument);
    CHECK_THROWS_AS(encode_increments(std::vector<int>{0}, 0), std::invalid_argument);
}

TEST_CASE("quantizer error stays within half a step")
{
    const QuantizerConfig qc;
    const double half_db = qc.magnitude_step_db() / 2.0;
    const double half_phase = std::numbers::pi / qc.levels();
    const double bottom = qc.headroom_db - qc.dynamic_range_db;
    Rng rng(9);
    int in_range = 0;
    for (int i = 0; i < 100000; ++i)
    {
        const auto h = rng.complex_normal();
        const auto csi = quantize(h, qc);
        REQUIRE(csi.cqi_level >= 0);
        REQUIRE(csi.cqi_level < qc.levels());
        REQUIRE(csi.cpi_level >= 0);
        REQUIRE(csi.cpi_level < qc.levels());
        const auto back = dequantize(csi, qc);
        const double p_db = 10.0 * std::log10(std::norm(h));
        if (p_db > bottom && p_db < qc.headroom_db)
        {
            ++in_range;
            CHECK(std::abs(10.0 * std::log10(std::norm(back)) - p_db) <= half_db + 1e-9);
        }
        const double dphi = std::remainder(std::arg(back) - std::arg(h), 2.0 * std::numbers::pi);
        CHECK(std::abs(dphi) <= half_phase + 1e-9);
    }
    CHECK(in_range > 99000);
}

TEST_CASE("quantizer edge cases")
{
    const QuantizerConfig qc;
    CHECK(quantize({1.0, 0.0}, qc).cpi_level == 0);
    CHECK(quantize({0.0, 0.0}, qc) == QuantizedCsi{0, 0, qc.q});
    CHECK(quantize({1e6, 0.0}, qc).cqi_level == qc.levels() - 1);
    CHECK(quantize({1e-9, 0.0}, qc).cqi_level == 0);
    CHECK(quantize({1.0, -1e-9}, qc).cpi_level == qc.levels() - 1);
    QuantizerConfig scaled = qc;
    scaled.mean_power = 100.0;
    CHECK(quantize({10.0, 0.0}, scaled) == quantize({1.0, 0.0}, qc));
    QuantizerConfig bad = qc;
    bad.q = 17;
    CHECK_THROWS_AS(quantize({1.0, 0.0}, bad), std::invalid_argument);
    bad = qc;
    bad.mean_power = 0.0;
    CHECK_THROWS_AS(dequantize({}, bad), std::invalid_argument);
}

TEST_CASE("RB compression")
{
    const std::vector<ComplexGain> same(12, {0.3, -0.7});
    const auto s = rb_compress(same);
    CHECK(s.distortion == doctest::Approx(0.0));
    CHECK(std::abs(s.mean - same[0]) < 1e-12);
    CHECK(s.dc == quantize(same[0]));

    std::vector<ComplexGain> alt;
    for (int i = 0; i < 12; ++i)
        alt.emplace_back(i % 2 ? 1.0 : -1.0, 0.0);
    CHECK(rb_compress(alt).distortion == doctest::Approx(1.0));

    CHECK_THROWS_AS(rb_compress(std::vector<ComplexGain>(11)), std::invalid_argument);
    CHECK_THROWS_AS(rb_compress(std::vector<ComplexGain>(13)), std::invalid_argument);
}

TEST_CASE("feedback rates")
{
    const fading::FadingParams fp(0.9, 5.0);
    const auto ch = fading::generate_process(fp, 50, 120, 4);
    const auto r = rate_report(ch, 100, 2, 0.5);
    CHECK(r.kbps_per_rb_uncompressed == 144.0);
    CHECK(r.total_mbps_uncompressed == doctest::Approx(14.4));
    CHECK(r.kbps_per_rb_compressed <= r.kbps_per_rb_uncompressed);
    CHECK(r.effective_kbps_per_rb == doctest::Approx(r.kbps_per_rb_compressed));
    CHECK(r.total_mbps == doctest::Approx(r.effective_kbps_per_rb * 0.1));
    CHECK(r.cqi_time_stats.total() == 10u * 49u);
    // The first subframe pays two q-bit headers per RB; later ones pay increments only.
    CHECK(r.kbps_per_rb_compressed ==
          doctest::Approx((12.0 + 49.0 * (r.cqi_bits_per_subframe + r.cpi_bits_per_subframe)) / 50.0));

    QuantizerConfig q8;
    q8.q = 8;
    CHECK(rate_report(ch, 1, 1, 1.0, q8).kbps_per_rb_uncompressed == 192.0);

    CHECK_THROWS_AS(rate_report(ch, 1, 1, 1.5), std::invalid_argument);
    const auto narrow = fading::generate_process(fp, 2, 8, 4);
    CHECK_THROWS_AS(rate_report(narrow, 1, 1, 1.0), std::invalid_argument);
}

TEST_CASE("macro overhead scales by the spectral-efficiency ratio")
{
    CHECK(macro_overhead_kbps(1000.0, 1.0, kSeRatioGroundUe500m) == doctest::Approx(183.4));
    CHECK(macro_overhead_kbps(6000.0, 1.0, kSeRatioGroundUe500m) == doctest::Approx(1100.4));
    CHECK(macro_overhead_kbps(1000.0, 5.0, 0.5) == doctest::Approx(100.0));
    CHECK(macro_overhead_kbps(0.0, 1.0, 1.0) == 0.0);
    CHECK_THROWS_AS(macro_overhead_kbps(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(macro_overhead_kbps(-1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("increment probabilities")
{
    const fading::FadingParams fp(0.9, 5.0);
    const auto p = pooled_increment_probabilities(fp, 4, 4, 256, 3);
    CHECK(p.samples == 2u * 4u * 4u * 255u);
    CHECK(p.same + p.plus_minus_one + p.other == doctest::Approx(1.0));
    CHECK(p.same > 0.6);
    CHECK(p.same < 0.9);
    // Less frequency correlation means fewer repeated levels.
    const auto loose = pooled_increment_probabilities(fp.with_freq_corr(0.99), 4, 4, 256, 3);
    CHECK(loose.same < p.same);
    CHECK_THROWS_AS(pooled_increment_probabilities(fp, 0, 1, 1, 0), std::invalid_argument);
}
