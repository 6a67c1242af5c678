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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hetsim::csicodec {

void QuantizerConfig::validate() const
{
    if (q < 1 || q > 16)
        throw std::invalid_argument("QuantizerConfig: q must lie in [1, 16]");
    if (!(dynamic_range_db > 0.0))
        throw std::invalid_argument("QuantizerConfig: dynamic range must be > 0");
    if (!(mean_power > 0.0))
        throw std::invalid_argument("QuantizerConfig: mean power must be > 0");
}

QuantizedCsi quantize(ComplexGain h, const QuantizerConfig& config)
{
    config.validate();
    const int n = config.levels();
    QuantizedCsi out{0, 0, config.q};
    const double p = std::norm(h);
    if (!(p > 0.0))
        return out;

    const double p_db = 10.0 * std::log10(p / config.mean_power);
    const double bottom = config.headroom_db - config.dynamic_range_db;
    const double cqi = std::floor((p_db - bottom) / config.magnitude_step_db());
    out.cqi_level = static_cast<int>(std::clamp(cqi, 0.0, static_cast<double>(n - 1)));

    double phase = std::arg(h);
    if (phase < 0.0)
        phase += 2.0 * std::numbers::pi;
    const int cpi = static_cast<int>(std::floor(phase / (2.0 * std::numbers::pi / n)));
    out.cpi_level = std::clamp(cpi, 0, n - 1);
    return out;
}

ComplexGain dequantize(const QuantizedCsi& csi, const QuantizerConfig& config)
{
    config.validate();
    const double bottom = config.headroom_db - config.dynamic_range_db;
    const double mag_db = bottom + (csi.cqi_level + 0.5) * config.magnitude_step_db();
    const double mag = std::sqrt(config.mean_power * std::pow(10.0, mag_db / 10.0));
    const double phase = (csi.cpi_level + 0.5) * 2.0 * std::numbers::pi / config.levels();
    return std::polar(mag, phase);
}

RbSummary rb_compress(std::span<const ComplexGain> coefficients, const QuantizerConfig& config)
{
    if (coefficients.size() != kSubchannelsPerRb)
        throw std::invalid_argument("rb_compress: expected 12 subchannel coefficients, got " +
                                    std::to_string(coefficients.size()));
    RbSummary out;
    for (const auto& h : coefficients)
        out.mean += h;
    out.mean /= static_cast<double>(kSubchannelsPerRb);
    double d = 0.0;
    for (const auto& h : coefficients)
        d += std::norm(h - out.mean);
    out.distortion = d / static_cast<double>(kSubchannelsPerRb) / config.mean_power;
    out.dc = quantize(out.mean, config);
    return out;
}

IncrementStats& IncrementStats::operator+=(const IncrementStats& o)
{
    same += o.same;
    minus_one += o.minus_one;
    plus_one += o.plus_one;
    refresh += o.refresh;
    return *this;
}

void BitWriter::put_bit(bool bit)
{
    if (n_bits_ % 8 == 0)
        bytes_.push_back(0);
    if (bit)
        bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (n_bits_ % 8));
    ++n_bits_;
}

void BitWriter::put(std::uint32_t value, int n_bits)
{
    for (int b = n_bits - 1; b >= 0; --b)
        put_bit(((value >> b) & 1u) != 0);
}

DecodeError::DecodeError(const std::string& what, std::size_t bit_offset)
    : std::runtime_error(what + " at bit " + std::to_string(bit_offset)), bit_offset_(bit_offset)
{
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::size_t n_bits) : bytes_(bytes), n_bits_(n_bits)
{
    if (n_bits > bytes.size() * 8)
        throw DecodeError("bit count exceeds buffer", bytes.size() * 8);
}

bool BitReader::get_bit()
{
    if (pos_ >= n_bits_)
        throw DecodeError("truncated stream", pos_);
    const bool bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return bit;
}

std::uint32_t BitReader::get(int n_bits)
{
    if (remaining() < static_cast<std::size_t>(n_bits))
        throw DecodeError("truncated stream", pos_);
    std::uint32_t v = 0;
    for (int b = 0; b < n_bits; ++b)
        v = (v << 1) | (get_bit() ? 1u : 0u);
    return v;
}

namespace {

int step_up(int level, int n, bool cyclic) { return cyclic ? (level + 1) % n : level + 1; }
int step_down(int level, int n, bool cyclic) { return cyclic ? (level + n - 1) % n : level - 1; }

} // namespace

EncodedCsiStream encode_increments(std::span<const int> levels, int q, bool cyclic)
{
    if (q < 1 || q > 16)
        throw std::invalid_argument("encode_increments: q must lie in [1, 16]");
    if (levels.empty())
        throw std::invalid_argument("encode_increments: empty sequence");
    const int n = 1 << q;
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (levels[i] < 0 || levels[i] >= n)
            throw std::invalid_argument("encode_increments: level " + std::to_string(levels[i]) +
                                        " out of range at index " + std::to_string(i));

    EncodedCsiStream out;
    out.n_coefficients = levels.size();
    BitWriter w;
    w.put(static_cast<std::uint32_t>(levels[0]), q);
    for (std::size_t i = 1; i < levels.size(); ++i)
    {
        const int prev = levels[i - 1];
        const int cur = levels[i];
        if (cur == prev)
        {
            w.put(0b0, 1);
            ++out.stats.same;
        }
        else if (cur == step_down(prev, n, cyclic))
        {
            w.put(0b10, 2);
            ++out.stats.minus_one;
        }
        else if (cur == step_up(prev, n, cyclic))
        {
            w.put(0b110, 3);
            ++out.stats.plus_one;
        }
        else
        {
            w.put(0b111, 3);
            w.put(static_cast<std::uint32_t>(cur), q);
            ++out.stats.refresh;
        }
    }
    out.n_bits = w.size();
    out.bytes = std::move(w).take();
    return out;
}

std::vector<int> decode_increments(const EncodedCsiStream& stream, int q, bool cyclic)
{
    if (q < 1 || q > 16)
        throw std::invalid_argument("decode_increments: q must lie in [1, 16]");
    if (stream.n_coefficients == 0)
        throw DecodeError("stream declares no coefficients", 0);
    const int n = 1 << q;
    BitReader r(stream.bytes, stream.n_bits);

    std::vector<int> out;
    out.reserve(stream.n_coefficients);
    out.push_back(static_cast<int>(r.get(q)));
    while (out.size() < stream.n_coefficients)
    {
        const std::size_t at = r.position();
        const int prev = out.back();
        int next;
        if (!r.get_bit())
            next = prev;
        else if (!r.get_bit())
            next = step_down(prev, n, cyclic);
        else if (!r.get_bit())
            next = step_up(prev, n, cyclic);
        else
        {
            next = static_cast<int>(r.get(q));
            if (next == prev || next == step_down(prev, n, cyclic) || next == step_up(prev, n, cyclic))
                throw DecodeError("non-canonical refresh codeword", at);
        }
        if (next < 0 || next >= n)
            throw DecodeError("increment leaves the level range", at);
        out.push_back(next);
    }
    if (r.remaining() != 0)
        throw DecodeError("trailing bits after last coefficient", r.position());
    return out;
}

IncrementProbabilities frequency_increment_probabilities(const fading::ChannelProcess& channel,
                                                         const QuantizerConfig& config)
{
    const int n = config.levels();
    std::size_t same = 0, pm1 = 0, total = 0;
    auto classify = [&](int a, int b, bool cyclic) {
        int d = b - a;
        if (cyclic)
        {
            d = ((d % n) + n) % n;
            if (d > n / 2)
                d -= n;
        }
        ++total;
        if (d == 0)
            ++same;
        else if (d == 1 || d == -1)
            ++pm1;
    };
    for (std::size_t t = 0; t < channel.n_subframes(); ++t)
    {
        QuantizedCsi prev = quantize(channel.at(t, 0), config);
        for (std::size_t k = 1; k < channel.n_subchannels(); ++k)
        {
            const QuantizedCsi cur = quantize(channel.at(t, k), config);
            classify(prev.cqi_level, cur.cqi_level, false);
            classify(prev.cpi_level, cur.cpi_level, true);
            prev = cur;
        }
    }
    IncrementProbabilities p;
    p.samples = total;
    if (total > 0)
    {
        p.same = static_cast<double>(same) / static_cast<double>(total);
        p.plus_minus_one = static_cast<double>(pm1) / static_cast<double>(total);
        p.other = 1.0 - p.same - p.plus_minus_one;
    }
    return p;
}

RateReport rate_report(const fading::ChannelProcess& channel, std::size_t n_rbs, std::size_t neighbors,
                       double coordination_fraction, const QuantizerConfig& config)
{
    config.validate();
    if (!(coordination_fraction >= 0.0 && coordination_fraction <= 1.0))
        throw std::invalid_argument("rate_report: coordination fraction must lie in [0, 1]");
    const std::size_t rbs_in_grid = channel.n_subchannels() / kSubchannelsPerRb;
    if (rbs_in_grid == 0)
        throw std::invalid_argument("rate_report: channel grid narrower than one resource block");

    const std::size_t n_sf = channel.n_subframes();
    RateReport r;
    r.kbps_per_rb_uncompressed = static_cast<double>(kSubchannelsPerRb * 2 * config.q) / kSubframeMs;

    double bits = 0.0, cqi_bits = 0.0, cpi_bits = 0.0, distortion = 0.0;
    std::vector<int> cqi(n_sf), cpi(n_sf);
    for (std::size_t rb = 0; rb < rbs_in_grid; ++rb)
    {
        for (std::size_t t = 0; t < n_sf; ++t)
        {
            const auto row = channel.subframe(t).subspan(rb * kSubchannelsPerRb, kSubchannelsPerRb);
            const RbSummary s = rb_compress(row, config);
            cqi[t] = s.dc.cqi_level;
            cpi[t] = s.dc.cpi_level;
            distortion += s.distortion;
        }
        const auto ec = encode_increments(cqi, config.q, false);
        const auto ep = encode_increments(cpi, config.q, true);
        bits += static_cast<double>(ec.n_bits + ep.n_bits);
        cqi_bits += static_cast<double>(ec.n_bits - static_cast<std::size_t>(config.q));
        cpi_bits += static_cast<double>(ep.n_bits - static_cast<std::size_t>(config.q));
        r.cqi_time_stats += ec.stats;
        r.cpi_time_stats += ep.stats;
    }
    const double n_rb_grid = static_cast<double>(rbs_in_grid);
    r.kbps_per_rb_compressed = bits / n_rb_grid / (static_cast<double>(n_sf) * kSubframeMs);
    if (n_sf > 1)
    {
        r.cqi_bits_per_subframe = cqi_bits / n_rb_grid / static_cast<double>(n_sf - 1);
        r.cpi_bits_per_subframe = cpi_bits / n_rb_grid / static_cast<double>(n_sf - 1);
    }
    r.rb_distortion = distortion / (n_rb_grid * static_cast<double>(n_sf));
    r.effective_kbps_per_rb = static_cast<double>(neighbors) * coordination_fraction * r.kbps_per_rb_compressed;
    r.total_mbps = r.effective_kbps_per_rb * static_cast<double>(n_rbs) / 1000.0;
    r.total_mbps_uncompressed = r.kbps_per_rb_uncompressed * static_cast<double>(n_rbs) / 1000.0;
    return r;
}

double macro_overhead_kbps(double swiftc_rate_kbps, double se_smallcell_ue_bps_hz, double se_ground_ue_bps_hz)
{
    if (!(se_smallcell_ue_bps_hz > 0.0) || !(se_ground_ue_bps_hz > 0.0))
        throw std::invalid_argument("macro_overhead_kbps: spectral efficiencies must be > 0");
    if (!(swiftc_rate_kbps >= 0.0))
        throw std::invalid_argument("macro_overhead_kbps: rate must be >= 0");
    return swiftc_rate_kbps * (se_ground_ue_bps_hz / se_smallcell_ue_bps_hz);
}

IncrementProbabilities pooled_increment_probabilities(const fading::FadingParams& params,
                                                      std::size_t n_grids, std::size_t n_subframes,
                                                      std::size_t n_subchannels, std::uint64_t seed,
                                                      const QuantizerConfig& config)
{
    if (n_grids == 0)
        throw std::invalid_argument("pooled_increment_probabilities: need at least one grid");
    double same = 0.0, pm1 = 0.0;
    std::size_t total = 0;
    for (std::size_t g = 0; g < n_grids; ++g)
    {
        const auto ch = fading::generate_process(params, n_subframes, n_subchannels, derive_seed(seed, {g}));
        const auto p = frequency_increment_probabilities(ch, config);
        same += p.same * static_cast<double>(p.samples);
        pm1 += p.plus_minus_one * static_cast<double>(p.samples);
        total += p.samples;
    }
    IncrementProbabilities out;
    out.samples = total;
    out.same = same / static_cast<double>(total);
    out.plus_minus_one = pm1 / static_cast<double>(total);
    out.other = 1.0 - out.same - out.plus_minus_one;
    return out;
}

double calibrate_freq_corr(const fading::FadingParams& base, double target_same, const QuantizerConfig& config,
                           std::size_t n_grids, std::size_t n_subframes, std::size_t n_subchannels,
                           std::uint64_t seed)
{
    if (!(target_same > 0.0 && target_same < 1.0))
        throw std::invalid_argument("calibrate_freq_corr: target must lie in (0, 1)");
    auto same_at = [&](double f) {
        return pooled_increment_probabilities(base.with_freq_corr(f), n_grids, n_subframes, n_subchannels,
                                              seed, config)
            .same;
    };
    // Bisection on log(1 - f): the interesting range is very close to 1.
    double lo = std::log(1e-1), hi = std::log(1e-6); // 1 - f
    for (int it = 0; it < 30; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if (same_at(1.0 - std::exp(mid)) < target_same)
            lo = mid;
        else
            hi = mid;
    }
    return 1.0 - std::exp(0.5 * (lo + hi));
}

} // namespace hetsim::csicodec
