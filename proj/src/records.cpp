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

#include "hetsim/records.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hetsim::records {

void SweepTable::add(std::vector<std::string> coords, std::string metric, const Summary& s)
{
    add(std::move(coords), std::move(metric), s.mean, s.ci95_half_width, s.count);
}

void SweepTable::add(std::vector<std::string> coords, std::string metric, double value, double ci95_half_width,
                     std::size_t trials)
{
    if (coords.size() != coord_columns.size())
        throw std::invalid_argument("SweepTable::add: " + experiment + " expects " +
                                    std::to_string(coord_columns.size()) + " coordinates");
    records.push_back({std::move(coords), std::move(metric), value, ci95_half_width, trials});
}

std::vector<std::string> SweepTable::columns() const
{
    auto cols = coord_columns;
    for (const char* c : {"metric", "value", "ci95_half_width", "trials"})
        cols.emplace_back(c);
    return cols;
}

const SweepRecord& SweepTable::find(const std::vector<std::string>& coords, const std::string& metric) const
{
    for (const auto& r : records)
        if (r.metric == metric && r.coords == coords)
            return r;
    throw std::out_of_range("no record for metric '" + metric + "' in " + experiment);
}

std::string format_number(double v)
{
    if (!std::isfinite(v))
        return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_csv(const SweepTable& table, std::ostream& out)
{
    const auto cols = table.columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : table.records)
    {
        for (const auto& c : r.coords)
            out << c << ',';
        out << r.metric << ',' << format_number(r.value) << ',' << format_number(r.ci95_half_width) << ','
            << r.trials << '\n';
    }
}

std::string to_csv(const SweepTable& table)
{
    std::ostringstream os;
    write_csv(table, os);
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double parse_value(const std::string& s)
{
    if (s.empty())
        return std::nan("");
    return std::stod(s);
}

} // namespace

SweepTable parse_csv(std::istream& in, const std::string& experiment)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(experiment + ": empty CSV");
    const auto header = split(line);
    static const std::vector<std::string> fixed{"metric", "value", "ci95_half_width", "trials"};
    if (header.size() < fixed.size() || !std::equal(fixed.begin(), fixed.end(), header.end() - 4))
        throw std::runtime_error(experiment + ": header must end with metric,value,ci95_half_width,trials");

    SweepTable t;
    t.experiment = experiment;
    t.coord_columns.assign(header.begin(), header.end() - 4);
    std::size_t row = 1;
    while (std::getline(in, line))
    {
        ++row;
        if (line.empty())
            continue;
        auto cells = split(line);
        if (cells.size() != header.size())
            throw std::runtime_error(experiment + ": row " + std::to_string(row) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()));
        const std::size_t k = t.coord_columns.size();
        std::vector<std::string> coords(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(k));
        t.add(std::move(coords), cells[k], parse_value(cells[k + 1]), parse_value(cells[k + 2]),
              static_cast<std::size_t>(std::stoull(cells[k + 3])));
    }
    return t;
}

nlohmann::json make_manifest(const config::ScenarioConfig& cfg, const std::vector<ManifestFile>& files,
                             const std::vector<std::string>& aux_files)
{
    char hash[24];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config::config_hash(cfg)));
    // Thread count does not change results, so it stays out of the manifest.
    nlohmann::json embedded = config::to_json(cfg);
    embedded.erase("threads");
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& f : files)
        entries.push_back({{"experiment", f.experiment}, {"path", f.path}, {"columns", f.columns}, {"rows", f.rows}});
    return {
        {"schema_version", kManifestSchemaVersion},
        {"generator", "hetsim"},
        {"version", kVersion},
        {"config_schema_version", cfg.schema_version},
        {"config_hash", hash},
        {"seed", cfg.seed},
        {"config", embedded},
        {"files", entries},
        {"aux_files", aux_files},
    };
}

ManifestFile write_table(const SweepTable& table, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    const std::string name = table.experiment + ".csv";
    std::ofstream out(dir / name, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + (dir / name).string());
    write_csv(table, out);
    return {table.experiment, name, table.columns(), table.records.size()};
}

} // namespace hetsim::records
