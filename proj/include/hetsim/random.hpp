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
#include <cstdint>
#include <initializer_list>
#include <random>

namespace hetsim {

using ComplexGain = std::complex<double>;

/// SplitMix64 finalizer. Used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives a child seed from a base seed and a path of stream indices
/// (experiment id, sweep point, trial, ...). Order of the path matters;
/// the result does not depend on the order in which children are created.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

/// Value-type random stream. Never share one instance across threads;
/// derive a seed per worker instead.
class Rng
{
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    double uniform();                    // [0, 1)
    double uniform(double lo, double hi);
    std::size_t index(std::size_t n);    // [0, n)
    double normal();                     // N(0, 1)

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    ComplexGain complex_normal(double variance = 1.0);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace hetsim
