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

#include "hetsim/fading.hpp"
#include "hetsim/random.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hetsim::csicodec {

inline constexpr int kDefaultBits = 6;
inline constexpr std::size_t kSubchannelsPerRb = 12;
inline constexpr double kSubframeMs = 1.0;

/// Quantizer lattice: magnitude uniform in dB over `dynamic_range_db`, whose
/// top edge sits `headroom_db` above the link's mean power; phase uniform
/// over [0, 2 pi).
struct QuantizerConfig
{
    int q = kDefaultBits;
    double dynamic_range_db = 60.0;
    double headroom_db = 10.0;
    double mean_power = 1.0; // sigma_h^2 of the link, linear

    void validate() const;
    int levels() const { return 1 << q; }
    double magnitude_step_db() const { return dynamic_range_db / levels(); }
};

struct QuantizedCsi
{
    int cqi_level = 0;
    int cpi_level = 0;
    int q = kDefaultBits;

    friend bool operator==(const QuantizedCsi&, const QuantizedCsi&) = default;
};

/// Zero magnitude clamps to CQI 0 and CPI 0.
QuantizedCsi quantize(ComplexGain h, const QuantizerConfig& config = {});

/// Reconstruction at the bin centres.
ComplexGain dequantize(const QuantizedCsi& csi, const QuantizerConfig& config = {});

struct RbSummary
{
    QuantizedCsi dc;
    ComplexGain mean;
    /// mean |h_i - mean|^2 relative to the link's mean power
    double distortion = 0.0;
};

/// Represents a resource block by the quantized mean of its 12 subchannel
/// coefficients.
RbSummary rb_compress(std::span<const ComplexGain> coefficients, const QuantizerConfig& config = {});

/// Symbol counts of an increment-coded stream (n - 1 symbols for n levels).
struct IncrementStats
{
    std::size_t same = 0;
    std::size_t minus_one = 0;
    std::size_t plus_one = 0;
    std::size_t refresh = 0;

    std::size_t total() const { return same + minus_one + plus_one + refresh; }
    IncrementStats& operator+=(const IncrementStats& o);
};

/// Increment-coded bitstream. Bits are packed most-significant-bit first
/// within each byte; the last byte is zero padded.
///
/// Codebook after the first level (q raw bits):
///   0         same level
///   10        level - 1
///   110       level + 1
///   111 + q   refresh with the raw level
/// For cyclic fields (phase) the +-1 steps wrap modulo 2^q.
struct EncodedCsiStream
{
    std::vector<std::uint8_t> bytes;
    std::size_t n_bits = 0;
    std::size_t n_coefficients = 0;
    IncrementStats stats;
};

class BitWriter
{
public:
    void put(std::uint32_t value, int n_bits);
    void put_bit(bool bit);
    std::size_t size() const { return n_bits_; }
    std::vector<std::uint8_t> take() && { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t n_bits_ = 0;
};

class DecodeError : public std::runtime_error
{
public:
    DecodeError(const std::string& what, std::size_t bit_offset);
    std::size_t bit_offset() const { return bit_offset_; }

private:
    std::size_t bit_offset_;
};

class BitReader
{
public:
    BitReader(std::span<const std::uint8_t> bytes, std::size_t n_bits);
    bool get_bit();
    std::uint32_t get(int n_bits);
    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return n_bits_ - pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t n_bits_;
    std::size_t pos_ = 0;
};

/// Throws std::invalid_argument for an empty sequence or out-of-range level.
EncodedCsiStream encode_increments(std::span<const int> levels, int q, bool cyclic = false);

/// Exact inverse of encode_increments. Throws DecodeError (with the bit
/// offset of the offending codeword) for truncated or malformed input.
std::vector<int> decode_increments(const EncodedCsiStream& stream, int q, bool cyclic = false);

/// Probabilities of level increments between neighbours, pooled over CQI and CPI.
struct IncrementProbabilities
{
    double same = 0.0;
    double plus_minus_one = 0.0;
    double other = 0.0;
    std::size_t samples = 0;
};

/// Increments across adjacent subchannels within each subframe.
IncrementProbabilities frequency_increment_probabilities(const fading::ChannelProcess& channel,
                                                         const QuantizerConfig& config = {});

struct RateReport
{
    double kbps_per_rb_uncompressed = 0.0;
    double kbps_per_rb_compressed = 0.0;
    double effective_kbps_per_rb = 0.0;
    double total_mbps = 0.0;              // effective rate over n_rbs
    double total_mbps_uncompressed = 0.0; // raw rate over n_rbs
    double cqi_bits_per_subframe = 0.0;   // after the first subframe
    double cpi_bits_per_subframe = 0.0;
    double rb_distortion = 0.0;           // mean rb_compress distortion
    IncrementStats cqi_time_stats;
    IncrementStats cpi_time_stats;
};

/// Control-plane CSI rate for one small cell. Every full resource block of
/// the channel grid is summarized by its quantized DC coefficient; the
/// per-subframe DC sequence of each RB is increment coded in time. The
/// compressed rate is the mean coded bits per 1 ms subframe per RB.
RateReport rate_report(const fading::ChannelProcess& channel, std::size_t n_rbs, std::size_t neighbors,
                       double coordination_fraction, const QuantizerConfig& config = {});

/// Macro uplink throughput displaced by carrying `swiftc_rate_kbps` of control
/// traffic to an elevated small-cell UE radio, valued at the rate a ground
/// UE would have achieved on the same resources.
double macro_overhead_kbps(double swiftc_rate_kbps, double se_smallcell_ue_bps_hz, double se_ground_ue_bps_hz);

/// Ground-UE / small-cell-UE spectral efficiency ratios observed for a
/// small-cell radio at the macro edge (1 km): a ground UE at 500 m, and one at
/// the cell edge.
inline constexpr double kSeRatioGroundUe500m = 0.1834;
inline constexpr double kSeRatioGroundUeEdge = 0.0390;

/// Pools the frequency increment statistics of `n_grids` independently seeded
/// grids. A single grid holds few independent fades when freq_corr is close to
/// one, so single-grid estimates scatter by several percentage points.
IncrementProbabilities pooled_increment_probabilities(const fading::FadingParams& params,
                                                      std::size_t n_grids, std::size_t n_subframes,
                                                      std::size_t n_subchannels, std::uint64_t seed,
                                                      const QuantizerConfig& config = {});

/// Bisection on freq_corr so that the pooled same-level probability matches
/// `target_same`.
double calibrate_freq_corr(const fading::FadingParams& base, double target_same,
                           const QuantizerConfig& config = {}, std::size_t n_grids = 512,
                           std::size_t n_subframes = 10, std::size_t n_subchannels = 512,
                           std::uint64_t seed = 0x5EED);

} // namespace hetsim::csicodec
