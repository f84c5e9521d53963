// Copyright 2026 The floquet-tails Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLOQUET_TAILS_CSV_IO_H
#define FLOQUET_TAILS_CSV_IO_H

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "floquet_tails/floquet_sim.h"

namespace ft {

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::uint64_t fnv1a(std::string_view data);
std::string hex64(std::uint64_t v);

/// Numeric CSV with a header row. Lines starting with '#' are comments; "# key=value"
/// comments are collected into `meta`.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
    std::map<std::string, std::string> meta;

    size_t rows() const {
        return columns.empty() ? 0 : columns[0].size();
    }
    bool has(const std::string &name) const;
    /// Throws std::invalid_argument naming the missing column.
    const std::vector<double> &column(const std::string &name) const;
    TimeSeries series(const std::string &name) const;
};

CsvTable read_csv(const std::string &path);

class CsvWriter {
   public:
    explicit CsvWriter(std::ostream &out) : out_(out) {}
    void meta(const std::string &key, const std::string &value);
    void header(const std::vector<std::string> &names);
    void row(const std::vector<double> &values);

   private:
    std::ostream &out_;
};

/// Run CSV: `t,<255 window strings>,Mz,norm`. Global CSV: `t,Ms,J`. Both carry the
/// metadata comments (config_hash, state, num_qubits, window_offset, orbit_average).
void write_run_csv(std::ostream &out, const RunRecord &rec, const std::string &config_hash);
void write_global_csv(std::ostream &out, const RunRecord &rec, const std::string &config_hash);

/// Rebuilds a record from a run CSV (and optionally its global CSV); params are read back
/// from the metadata comments.
RunRecord run_record_from_csv(const CsvTable &run, const CsvTable *global = nullptr);

/// Canonical "key=value;" text of a run configuration, hashed for config_hash.
std::string run_config_text(const FloquetParams &p, InitialStateId state, int window_offset, bool orbit_average);

}  // namespace ft

#endif
