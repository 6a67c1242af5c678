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

#include <complex>
#include <cstddef>
#include <span>

namespace hetsim {

/// Sample mean with a normal-approximation 95% confidence half-width.
struct Summary
{
    double mean = 0.0;
    double ci95_half_width = 0.0;
    std::size_t count = 0;
};

Summary summarize(std::span<const double> samples);

/// Pearson correlation magnitude |E[x y*]| / sqrt(E|x|^2 E|y|^2) for
/// zero-mean complex samples.
double complex_correlation(std::span<const std::complex<double>> x,
                           std::span<const std::complex<double>> y);

} // namespace hetsim
