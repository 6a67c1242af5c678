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
#include <span>
#include <vector>

namespace hetsim::fading {

/// Adjacent-subchannel correlation that makes quantized CQI/CPI stay on the
/// same level across neighbouring subchannels with probability ~0.73 under
/// the default 6-bit / 60 dB quantizer. Reproduce with
/// csicodec::calibrate_freq_corr().
inline constexpr double kCalibratedFreqCorr = 0.99949;

/// Correlated block-fading parameters.
///
/// The channel is constant over a slot of length coherence_time_ms and
/// decorrelates with coefficient rho from one slot to the next. Latencies
/// that are not a whole number of slots use the exponent rule
/// rho^(L / T_c), which is also how 1 ms subframes are stepped.
class FadingParams
{
public:
    FadingParams(double rho, double coherence_time_ms, double sigma_h_sq = 1.0,
                 double freq_corr = kCalibratedFreqCorr);

    double rho() const { return rho_; }
    double coherence_time_ms() const { return coherence_time_ms_; }
    double sigma_h_sq() const { return sigma_h_sq_; }
    double freq_corr() const { return freq_corr_; }

    FadingParams with_sigma_h_sq(double sigma_h_sq) const;
    FadingParams with_freq_corr(double freq_corr) const;

    /// Coherence time scales inversely with speed: a user moving at
    /// `speed_kmph` decorrelates reference_kmph / speed_kmph times faster than
    /// one at the reference speed these parameters describe.
    FadingParams scaled_to_speed(double speed_kmph, double reference_kmph) const;

private:
    double rho_;
    double coherence_time_ms_;
    double sigma_h_sq_;
    double freq_corr_;
};

struct StalenessReport
{
    double latency_ms = 0.0;
    double rho_l = 1.0;         // rho^(L / T_c)
    double staleness = 0.0;     // 1 - rho_l
    double error_variance = 0.0;
};

/// rho^(L / T_c). Throws std::invalid_argument for negative latency.
double correlation_at(double latency_ms, const FadingParams& params);

/// Error variance left after staleness S: (1 - (1 - S)^2) * sigma_h^2.
double staleness_error_variance(double staleness, double sigma_h_sq);

StalenessReport staleness_report(double latency_ms, const FadingParams& params);

/// h_L = rho_L h0 + sqrt((1 - rho_L^2) sigma_h^2) * w for a given unit-variance
/// innovation w. The deterministic core of evolve().
ComplexGain evolve_with(ComplexGain h0, double latency_ms, const FadingParams& params,
                        ComplexGain unit_innovation);

/// Draws h_L given h0 after latency_ms.
ComplexGain evolve(ComplexGain h0, double latency_ms, const FadingParams& params, Rng& rng);

/// One subframe of frequency-correlated coefficients: a first-order chain
/// with coefficient freq_corr and marginal power sigma_h^2.
std::vector<ComplexGain> frequency_profile(std::size_t n_subchannels, const FadingParams& params,
                                           Rng& rng);

/// Immutable grid of channel coefficients indexed (subframe, subchannel).
class ChannelProcess
{
public:
    ChannelProcess(FadingParams params, std::size_t n_subframes, std::size_t n_subchannels,
                   std::uint64_t seed, std::vector<ComplexGain> coefficients);

    const ComplexGain& at(std::size_t subframe, std::size_t subchannel) const
    {
        return coefficients_[subframe * n_subchannels_ + subchannel];
    }
    std::span<const ComplexGain> subframe(std::size_t subframe) const
    {
        return {coefficients_.data() + subframe * n_subchannels_, n_subchannels_};
    }

    std::size_t n_subframes() const { return n_subframes_; }
    std::size_t n_subchannels() const { return n_subchannels_; }
    const FadingParams& params() const { return params_; }
    std::uint64_t seed() const { return seed_; }
    std::span<const ComplexGain> coefficients() const { return coefficients_; }

private:
    FadingParams params_;
    std::size_t n_subframes_;
    std::size_t n_subchannels_;
    std::uint64_t seed_;
    std::vector<ComplexGain> coefficients_;
};

/// Generates a time/frequency grid at 1 ms subframe granularity. Time follows
/// the slot recursion with per-subframe correlation rho^(1 / T_c); frequency
/// follows a first-order chain with coefficient freq_corr. The field is the
/// separable 2-D AR(1) process, so every entry has power sigma_h^2 and the
/// correlation between (t, k) and (t + dt, k + dk) is
/// rho^(|dt| / T_c) * freq_corr^|dk|.
ChannelProcess generate_process(const FadingParams& params, std::size_t n_subframes,
                                std::size_t n_subchannels, std::uint64_t seed);

} // namespace hetsim::fading
