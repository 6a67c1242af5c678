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

#include <Eigen/Dense>

#include <span>
#include <string_view>
#include <vector>

namespace hetsim::comp {

/// Users x cells channel amplitudes for one subchannel and subframe.
/// Entries are linear amplitude gains (large-scale gain and fast fading,
/// without transmit power).
struct ChannelMatrix
{
    Eigen::MatrixXcd entries;
    double timestamp_ms = 0.0;

    Eigen::Index n_users() const { return entries.rows(); }
    Eigen::Index n_cells() const { return entries.cols(); }
};

/// Cells x users complex weights. Column k carries user k's stream; row c is
/// what cell c radiates.
struct Precoder
{
    Eigen::MatrixXcd matrix;
    std::vector<double> per_cell_power_dbm;
    /// The stale channel was rank deficient and maximum regularization
    /// was used instead of the requested one.
    bool rank_fallback = false;

    /// Power radiated by cell c (sum of |B_ck|^2) in dBm.
    double cell_power_dbm(Eigen::Index c) const;
};

/// Per-link power bookkeeping for capacity evaluation, all in mW.
struct CapacityBudget
{
    std::vector<double> cell_power_mw;       // per cell
    std::vector<double> noise_mw;            // per user
    std::vector<double> external_interference_mw; // per user, optional (empty = none)

    double external(std::size_t user) const
    {
        return external_interference_mw.empty() ? 0.0 : external_interference_mw[user];
    }
};

enum class ServingMode
{
    ignore,
    avoid,
    comp,
};

std::string_view to_string(ServingMode mode);

struct CapacityRecord
{
    std::size_t user_id = 0;
    ServingMode mode = ServingMode::comp;
    double sinr_db = 0.0;
    double spectral_efficiency_bps_hz = 0.0; // schedule_share * log2(1 + sinr)
    double schedule_share = 1.0;
    bool precoder_fallback = false;
};

/// Interface for precoder families computed from (stale) channel estimates.
class PrecoderDesign
{
public:
    virtual ~PrecoderDesign() = default;
    virtual Precoder design(const ChannelMatrix& h_stale, std::span<const double> cell_power_dbm,
                            double regularization) const = 0;
};

/// Regularized channel inversion on the power-weighted channel
/// G = H diag(sqrt(P_c)):  W = G^H (G G^H + alpha I)^-1.
/// Columns are normalized (equal per-user power), then the whole matrix is
/// scaled by one factor so the most loaded cell sits exactly at its power
/// limit. A common factor keeps the nulling structure intact.
///
/// alpha is in units of received power (mW) per unit of normalized transmit
/// power, i.e. the noise-to-power ratio after weighting by P_c; see
/// default_regularization(). alpha = 0 is zero forcing.
class RegularizedInversion final : public PrecoderDesign
{
public:
    Precoder design(const ChannelMatrix& h_stale, std::span<const double> cell_power_dbm,
                    double regularization) const override;
};

/// Noise-to-power regularization for RegularizedInversion: the mean user
/// noise power in mW (transmit power is folded into the weighted channel).
double default_regularization(std::span<const double> noise_mw);

/// Convenience wrapper around RegularizedInversion.
/// Throws std::invalid_argument when users outnumber cells.
Precoder precode(const ChannelMatrix& h_stale, std::span<const double> cell_power_dbm,
                 double regularization);

/// Per-user SINR when streams precoded with B reach the users through h_true.
std::vector<double> precoded_sinr(const ChannelMatrix& h_true, const Precoder& b,
                                  const CapacityBudget& budget);

/// Joint transmission from all cells with a precoder computed on h_stale,
/// evaluated on h_true.
std::vector<CapacityRecord> comp_capacity(const ChannelMatrix& h_true, const ChannelMatrix& h_stale,
                                          const CapacityBudget& budget, double regularization,
                                          const PrecoderDesign& design = RegularizedInversion{});

/// Each user k is served by cell k alone at full power; every other cell's
/// transmission is noise.
std::vector<CapacityRecord> ignore_capacity(const ChannelMatrix& h_true, const CapacityBudget& budget);

/// Cells take turns: cell k serves user k alone for 1/K of the time.
std::vector<CapacityRecord> avoid_capacity(const ChannelMatrix& h_true, const CapacityBudget& budget);

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);
double linear_to_db(double x);

} // namespace hetsim::comp
