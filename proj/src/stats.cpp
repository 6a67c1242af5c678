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

#include "hetsim/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace hetsim {

Summary summarize(std::span<const double> samples)
{
    Summary s;
    s.count = samples.size();
    if (samples.empty())
        return s;
    double sum = 0.0;
    for (double v : samples)
        sum += v;
    s.mean = sum / static_cast<double>(samples.size());
    if (samples.size() < 2)
        return s;
    double ss = 0.0;
    for (double v : samples)
        ss += (v - s.mean) * (v - s.mean);
    const double var = ss / static_cast<double>(samples.size() - 1);
    s.ci95_half_width = 1.959963984540054 * std::sqrt(var / static_cast<double>(samples.size()));
    return s;
}

double complex_correlation(std::span<const std::complex<double>> x,
                           std::span<const std::complex<double>> y)
{
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("complex_correlation: size mismatch");
    std::complex<double> cross = 0.0;
    double px = 0.0, py = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        cross += x[i] * std::conj(y[i]);
        px += std::norm(x[i]);
        py += std::norm(y[i]);
    }
    return std::abs(cross) / std::sqrt(px * py);
}

} // namespace hetsim
