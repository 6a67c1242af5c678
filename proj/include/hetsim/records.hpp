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

#include "hetsim/config.hpp"
#include "hetsim/stats.hpp"

#include "json.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace hetsim::records {

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr const char* kVersion = "1.0.0";

/// One (coordinate, metric) sample of an experiment. Coordinates are
/// preformatted cells aligned with SweepTable::coord_columns; an empty cell
/// means the coordinate does not apply to this metric.
struct SweepRecord
{
    std::vector<std::string> coords;
    std::string metric;
    double value = 0.0;
    double ci95_half_width = 0.0;
    std::size_t trials = 0;
};

struct SweepTable
{
    std::string experiment;
    std::vector<std::string> coord_columns;
    std::vector<SweepRecord> records;

    void add(std::vector<std::string> coords, std::string metric, const Summary& s);
    void add(std::vector<std::string> coords, std::string metric, double value, double ci95_half_width,
             std::size_t trials);

    /// coord_columns followed by metric, value, ci95_half_width, trials.
    std::vector<std::string> columns() const;

    /// First record matching the coordinates and metric; throws
    /// std::out_of_range when absent.
    const SweepRecord& find(const std::vector<std::string>& coords, const std::string& metric) const;
};

/// %.10g; non-finite values become an empty cell.
std::string format_number(double v);

void write_csv(const SweepTable& table, std::ostream& out);
std::string to_csv(const SweepTable& table);

/// Reads a CSV written by write_csv back. Throws std::runtime_error when the
/// header does not end with the four fixed columns or a row is ragged.
SweepTable parse_csv(std::istream& in, const std::string& experiment);

struct ManifestFile
{
    std::string experiment;
    std::string path; // relative to the manifest
    std::vector<std::string> columns;
    std::size_t rows = 0;
};

nlohmann::json make_manifest(const config::ScenarioConfig& cfg, const std::vector<ManifestFile>& files,
                             const std::vector<std::string>& aux_files);

/// Writes <dir>/<experiment>.csv and returns its manifest entry.
ManifestFile write_table(const SweepTable& table, const std::filesystem::path& dir);

} // namespace hetsim::records
