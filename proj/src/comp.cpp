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

#include "hetsim/comp.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hetsim::comp {

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
double linear_to_db(double x)
{
    return x > 0.0 ? 10.0 * std::log10(x) : -std::numeric_limits<double>::infinity();
}

std::string_view to_string(ServingMode mode)
{
    switch (mode)
    {
    case ServingMode::ignore: return "IGNORE";
    case ServingMode::avoid: return "AVOID";
    case ServingMode::comp: return "COMP";
    }
    return "UNKNOWN";
}

double Precoder::cell_power_dbm(Eigen::Index c) const { return mw_to_dbm(matrix.row(c).squaredNorm()); }

double default_regularization(std::span<const double> noise_mw)
{
    if (noise_mw.empty())
        return 0.0;
    return std::accumulate(noise_mw.begin(), noise_mw.end(), 0.0) / static_cast<double>(noise_mw.size());
}

namespace {

void check_finite(const ChannelMatrix& h, const char* what)
{
    if (!h.entries.allFinite())
        throw std::invalid_argument(std::string(what) + ": non-finite channel entry");
}

} // namespace

Precoder RegularizedInversion::design(const ChannelMatrix& h_stale, std::span<const double> cell_power_dbm,
                                      double regularization) const
{
    const Eigen::Index k = h_stale.n_users();
    const Eigen::Index m = h_stale.n_cells();
    if (k == 0 || m == 0)
        throw std::invalid_argument("precode: empty channel");
    if (k > m)
        throw std::invalid_argument("precode: more users than cells in the joint set");
    if (static_cast<Eigen::Index>(cell_power_dbm.size()) != m)
        throw std::invalid_argument("precode: one power constraint per cell required");
    if (!(regularization >= 0.0))
        throw std::invalid_argument("precode: regularization must be >= 0");
    check_finite(h_stale, "precode");

    Eigen::VectorXd amp(m);
    for (Eigen::Index c = 0; c < m; ++c)
        amp(c) = std::sqrt(dbm_to_mw(cell_power_dbm[static_cast<std::size_t>(c)]));

    const Eigen::MatrixXcd g = h_stale.entries * amp.asDiagonal();
    Eigen::MatrixXcd gram = g * g.adjoint();

    Precoder out;
    out.per_cell_power_dbm.assign(cell_power_dbm.begin(), cell_power_dbm.end());

    double alpha = regularization;
    if (alpha == 0.0)
    {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
        const auto& sv = svd.singularValues();
        const double smax = sv(0);
        const double smin = sv(sv.size() - 1);
        if (!(smax > 0.0) || smin / smax < 1e-10)
        {
            alpha = 1e6 * std::max(gram.trace().real(), std::numeric_limits<double>::min());
            out.rank_fallback = true;
        }
    }
    gram.diagonal().array() += alpha;

    // W = G^H (G G^H + alpha I)^-1, solved as (gram^T ... ) via the adjoint system
    // gram^H W^H = G  (gram is Hermitian).
    const Eigen::MatrixXcd w_h = gram.ldlt().solve(g);
    Eigen::MatrixXcd w = w_h.adjoint(); // cells x users

    for (Eigen::Index u = 0; u < k; ++u)
    {
        const double n = w.col(u).norm();
        if (n > 0.0)
            w.col(u) /= n;
    }

    double max_row = 0.0;
    for (Eigen::Index c = 0; c < m; ++c)
        max_row = std::max(max_row, w.row(c).squaredNorm());
    if (max_row > 0.0)
        w /= std::sqrt(max_row);

    out.matrix = amp.asDiagonal() * w;
    return out;
}

Precoder precode(const ChannelMatrix& h_stale, std::span<const double> cell_power_dbm, double regularization)
{
    return RegularizedInversion{}.design(h_stale, cell_power_dbm, regularization);
}

std::vector<double> precoded_sinr(const ChannelMatrix& h_true, const Precoder& b, const CapacityBudget& budget)
{
    const Eigen::Index k = h_true.n_users();
    if (b.matrix.rows() != h_true.n_cells() || b.matrix.cols() != k)
        throw std::invalid_argument("precoded_sinr: precoder does not match channel");
    if (static_cast<Eigen::Index>(budget.noise_mw.size()) != k)
        throw std::invalid_argument("precoded_sinr: one noise power per user required");

    const Eigen::MatrixXcd rx = h_true.entries * b.matrix; // users x streams
    std::vector<double> sinr(static_cast<std::size_t>(k));
    for (Eigen::Index u = 0; u < k; ++u)
    {
        const double signal = std::norm(rx(u, u));
        const double leak = rx.row(u).squaredNorm() - signal;
        const auto uu = static_cast<std::size_t>(u);
        sinr[uu] = signal / (std::max(leak, 0.0) + budget.noise_mw[uu] + budget.external(uu));
    }
    return sinr;
}

namespace {

void check_budget(const ChannelMatrix& h, const CapacityBudget& budget)
{
    if (static_cast<Eigen::Index>(budget.cell_power_mw.size()) != h.n_cells())
        throw std::invalid_argument("capacity: one transmit power per cell required");
    if (static_cast<Eigen::Index>(budget.noise_mw.size()) != h.n_users())
        throw std::invalid_argument("capacity: one noise power per user required");
    if (!budget.external_interference_mw.empty() &&
        static_cast<Eigen::Index>(budget.external_interference_mw.size()) != h.n_users())
        throw std::invalid_argument("capacity: external interference must be per user");
    if (h.n_users() > h.n_cells())
        throw std::invalid_argument("capacity: more users than cells");
}

CapacityRecord make_record(std::size_t user, ServingMode mode, double sinr, double share)
{
    CapacityRecord r;
    r.user_id = user;
    r.mode = mode;
    r.sinr_db = linear_to_db(sinr);
    r.schedule_share = share;
    r.spectral_efficiency_bps_hz = share * std::log2(1.0 + sinr);
    return r;
}

} // namespace

std::vector<CapacityRecord> comp_capacity(const ChannelMatrix& h_true, const ChannelMatrix& h_stale,
                                          const CapacityBudget& budget, double regularization,
                                          const PrecoderDesign& design)
{
    if (h_true.entries.rows() != h_stale.entries.rows() || h_true.entries.cols() != h_stale.entries.cols())
        throw std::invalid_argument("comp_capacity: true and stale channels differ in shape");
    check_budget(h_true, budget);
    check_finite(h_true, "comp_capacity");

    std::vector<double> power_dbm;
    power_dbm.reserve(budget.cell_power_mw.size());
    for (double p : budget.cell_power_mw)
        power_dbm.push_back(mw_to_dbm(p));

    const Precoder b = design.design(h_stale, power_dbm, regularization);
    const auto sinr = precoded_sinr(h_true, b, budget);

    std::vector<CapacityRecord> out;
    for (std::size_t u = 0; u < sinr.size(); ++u)
    {
        out.push_back(make_record(u, ServingMode::comp, sinr[u], 1.0));
        out.back().precoder_fallback = b.rank_fallback;
    }
    return out;
}

std::vector<CapacityRecord> ignore_capacity(const ChannelMatrix& h_true, const CapacityBudget& budget)
{
    check_budget(h_true, budget);
    const Eigen::Index k = h_true.n_users();
    const Eigen::Index m = h_true.n_cells();
    std::vector<CapacityRecord> out;
    for (Eigen::Index u = 0; u < k; ++u)
    {
        double signal = 0.0, interference = 0.0;
        for (Eigen::Index c = 0; c < m; ++c)
        {
            const double p = std::norm(h_true.entries(u, c)) * budget.cell_power_mw[static_cast<std::size_t>(c)];
            (c == u ? signal : interference) += p;
        }
        const auto uu = static_cast<std::size_t>(u);
        const double sinr = signal / (interference + budget.noise_mw[uu] + budget.external(uu));
        out.push_back(make_record(uu, ServingMode::ignore, sinr, 1.0));
    }
    return out;
}

std::vector<CapacityRecord> avoid_capacity(const ChannelMatrix& h_true, const CapacityBudget& budget)
{
    check_budget(h_true, budget);
    const Eigen::Index k = h_true.n_users();
    const double share = 1.0 / static_cast<double>(k);
    std::vector<CapacityRecord> out;
    for (Eigen::Index u = 0; u < k; ++u)
    {
        const auto uu = static_cast<std::size_t>(u);
        const double signal = std::norm(h_true.entries(u, u)) * budget.cell_power_mw[uu];
        const double sinr = signal / (budget.noise_mw[uu] + budget.external(uu));
        out.push_back(make_record(uu, ServingMode::avoid, sinr, share));
    }
    return out;
}

} // namespace hetsim::comp
