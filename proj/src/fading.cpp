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

#include "hetsim/fading.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hetsim::fading {

FadingParams::FadingParams(double rho, double coherence_time_ms, double sigma_h_sq, double freq_corr)
    : rho_(rho), coherence_time_ms_(coherence_time_ms), sigma_h_sq_(sigma_h_sq), freq_corr_(freq_corr)
{
    if (!std::isfinite(rho) || std::abs(rho) > 1.0)
        throw std::invalid_argument("FadingParams: |rho| must be <= 1");
    if (!std::isfinite(coherence_time_ms) || coherence_time_ms <= 0.0)
        throw std::invalid_argument("FadingParams: coherence time must be > 0");
    if (!std::isfinite(sigma_h_sq) || sigma_h_sq <= 0.0)
        throw std::invalid_argument("FadingParams: sigma_h^2 must be > 0");
    if (!std::isfinite(freq_corr) || freq_corr < 0.0 || freq_corr > 1.0)
        throw std::invalid_argument("FadingParams: freq_corr must lie in [0, 1]");
}

FadingParams FadingParams::with_sigma_h_sq(double sigma_h_sq) const
{
    return {rho_, coherence_time_ms_, sigma_h_sq, freq_corr_};
}

FadingParams FadingParams::with_freq_corr(double freq_corr) const
{
    return {rho_, coherence_time_ms_, sigma_h_sq_, freq_corr};
}

FadingParams FadingParams::scaled_to_speed(double speed_kmph, double reference_kmph) const
{
    if (!(speed_kmph > 0.0) || !(reference_kmph > 0.0))
        throw std::invalid_argument("FadingParams::scaled_to_speed: speeds must be > 0");
    return {rho_, coherence_time_ms_ * reference_kmph / speed_kmph, sigma_h_sq_, freq_corr_};
}

double correlation_at(double latency_ms, const FadingParams& params)
{
    if (!(latency_ms >= 0.0))
        throw std::invalid_argument("correlation_at: latency must be >= 0, got " +
                                    std::to_string(latency_ms));
    if (latency_ms == 0.0)
        return 1.0;
    return std::pow(params.rho(), latency_ms / params.coherence_time_ms());
}

double staleness_error_variance(double staleness, double sigma_h_sq)
{
    const double c = 1.0 - staleness;
    return (1.0 - c * c) * sigma_h_sq;
}

StalenessReport staleness_report(double latency_ms, const FadingParams& params)
{
    StalenessReport r;
    r.latency_ms = latency_ms;
    r.rho_l = correlation_at(latency_ms, params);
    r.staleness = 1.0 - r.rho_l;
    r.error_variance = staleness_error_variance(r.staleness, params.sigma_h_sq());
    return r;
}

ComplexGain evolve_with(ComplexGain h0, double latency_ms, const FadingParams& params,
                        ComplexGain unit_innovation)
{
    const double rho_l = correlation_at(latency_ms, params);
    const double innovation_var = (1.0 - rho_l * rho_l) * params.sigma_h_sq();
    return rho_l * h0 + std::sqrt(std::max(innovation_var, 0.0)) * unit_innovation;
}

ComplexGain evolve(ComplexGain h0, double latency_ms, const FadingParams& params, Rng& rng)
{
    if (latency_ms == 0.0)
        return h0;
    return evolve_with(h0, latency_ms, params, rng.complex_normal(1.0));
}

std::vector<ComplexGain> frequency_profile(std::size_t n_subchannels, const FadingParams& params,
                                           Rng& rng)
{
    if (n_subchannels == 0)
        throw std::invalid_argument("frequency_profile: need at least one subchannel");
    const double f = params.freq_corr();
    const double var = params.sigma_h_sq();
    const double innov = std::sqrt(1.0 - f * f);
    std::vector<ComplexGain> out(n_subchannels);
    out[0] = rng.complex_normal(var);
    for (std::size_t k = 1; k < n_subchannels; ++k)
        out[k] = f * out[k - 1] + innov * rng.complex_normal(var);
    return out;
}

ChannelProcess::ChannelProcess(FadingParams params, std::size_t n_subframes,
                               std::size_t n_subchannels, std::uint64_t seed,
                               std::vector<ComplexGain> coefficients)
    : params_(params), n_subframes_(n_subframes), n_subchannels_(n_subchannels), seed_(seed),
      coefficients_(std::move(coefficients))
{
    if (n_subframes_ == 0 || n_subchannels_ == 0)
        throw std::invalid_argument("ChannelProcess: dimensions must be >= 1");
    if (coefficients_.size() != n_subframes_ * n_subchannels_)
        throw std::invalid_argument("ChannelProcess: grid size does not match dimensions");
}

ChannelProcess generate_process(const FadingParams& params, std::size_t n_subframes,
                                std::size_t n_subchannels, std::uint64_t seed)
{
    if (n_subframes == 0 || n_subchannels == 0)
        throw std::invalid_argument("generate_process: dimensions must be >= 1");

    Rng rng(seed);
    const double a = correlation_at(1.0, params); // per 1 ms subframe
    const double f = params.freq_corr();
    const double var = params.sigma_h_sq();
    const double gt = std::sqrt(1.0 - a * a);
    const double gf = std::sqrt(1.0 - f * f);

    std::vector<ComplexGain> grid(n_subframes * n_subchannels);
    auto at = [&](std::size_t t, std::size_t k) -> ComplexGain& { return grid[t * n_subchannels + k]; };

    at(0, 0) = rng.complex_normal(var);
    for (std::size_t k = 1; k < n_subchannels; ++k)
        at(0, k) = f * at(0, k - 1) + gf * rng.complex_normal(var);

    for (std::size_t t = 1; t < n_subframes; ++t)
    {
        at(t, 0) = a * at(t - 1, 0) + gt * rng.complex_normal(var);
        for (std::size_t k = 1; k < n_subchannels; ++k)
            at(t, k) = a * at(t - 1, k) + f * at(t, k - 1) - a * f * at(t - 1, k - 1) +
                       gt * gf * rng.complex_normal(var);
    }
    return ChannelProcess(params, n_subframes, n_subchannels, seed, std::move(grid));
}

} // namespace hetsim::fading
