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

#include "floquet_tails/csv_io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ft {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

bool CsvTable::has(const std::string &name) const {
    for (const auto &h : header) {
        if (h == name) {
            return true;
        }
    }
    return false;
}

const std::vector<double> &CsvTable::column(const std::string &name) const {
    for (size_t i = 0; i < header.size(); i++) {
        if (header[i] == name) {
            return columns[i];
        }
    }
    throw std::invalid_argument("column '" + name + "' not found");
}

TimeSeries CsvTable::series(const std::string &name) const {
    TimeSeries s;
    s.t = column("t");
    s.y = column(name);
    s.name = name;
    if (auto it = meta.find("num_qubits"); it != meta.end()) {
        s.num_qubits = std::stoi(it->second);
    }
    if (auto it = meta.find("state"); it != meta.end()) {
        s.state = it->second;
    }
    return s;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

CsvTable read_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    CsvTable table;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        std::string_view lv = trim(line);
        if (lv.empty()) {
            continue;
        }
        if (lv.front() == '#') {
            lv.remove_prefix(1);
            lv = trim(lv);
            auto eq = lv.find('=');
            if (eq != std::string_view::npos) {
                table.meta[std::string(trim(lv.substr(0, eq)))] = std::string(trim(lv.substr(eq + 1)));
            }
            continue;
        }
        auto fields = split(lv);
        if (table.header.empty()) {
            for (auto f : fields) {
                table.header.emplace_back(trim(f));
            }
            table.columns.resize(table.header.size());
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(table.header.size()) + " fields, got " +
                                     std::to_string(fields.size()));
        }
        for (size_t i = 0; i < fields.size(); i++) {
            auto f = trim(fields[i]);
            double v = 0;
            auto res = std::from_chars(f.data(), f.data() + f.size(), v);
            if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": not a number: '" +
                                         std::string(f) + "'");
            }
            table.columns[i].push_back(v);
        }
    }
    if (table.header.empty()) {
        throw std::runtime_error(path + ": no header row");
    }
    return table;
}

void CsvWriter::meta(const std::string &key, const std::string &value) {
    out_ << "# " << key << "=" << value << "\n";
}

void CsvWriter::header(const std::vector<std::string> &names) {
    for (size_t i = 0; i < names.size(); i++) {
        out_ << (i ? "," : "") << names[i];
    }
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double> &values) {
    std::string line;
    for (size_t i = 0; i < values.size(); i++) {
        if (i) {
            line += ',';
        }
        line += format_double(values[i]);
    }
    out_ << line << "\n";
}

namespace {

void write_meta(CsvWriter &w, const RunRecord &rec, const std::string &config_hash) {
    w.meta("config_hash", config_hash);
    w.meta("state", std::string(state_name(rec.state)));
    w.meta("num_qubits", std::to_string(rec.params.num_qubits));
    w.meta("steps", std::to_string(rec.params.steps));
    w.meta("alpha", format_double(rec.params.alpha));
    w.meta("beta", format_double(rec.params.beta));
    w.meta("gamma", format_double(rec.params.gamma));
    w.meta("window_offset", std::to_string(rec.window_offset));
    w.meta("orbit_average", rec.orbit_average ? "1" : "0");
}

}  // namespace

void write_run_csv(std::ostream &out, const RunRecord &rec, const std::string &config_hash) {
    CsvWriter w(out);
    write_meta(w, rec, config_hash);
    std::vector<std::string> names{"t"};
    for (const auto &op : enumerate_range4(0)) {
        names.push_back(op.name());
    }
    names.push_back("Mz");
    names.push_back("norm");
    w.header(names);
    std::vector<double> row(names.size());
    for (size_t i = 0; i < rec.times.size(); i++) {
        row[0] = rec.times[i];
        for (int j = 0; j < kNumWindowOperators; j++) {
            row[1 + j] = rec.values[i][j];
        }
        row[1 + kNumWindowOperators] = rec.magnetization[i];
        row[2 + kNumWindowOperators] = rec.norm[i];
        w.row(row);
    }
}

void write_global_csv(std::ostream &out, const RunRecord &rec, const std::string &config_hash) {
    CsvWriter w(out);
    write_meta(w, rec, config_hash);
    w.header({"t", "Ms", "J"});
    for (size_t i = 0; i < rec.times.size(); i++) {
        w.row({static_cast<double>(rec.times[i]), rec.staggered[i], rec.current[i]});
    }
}

RunRecord run_record_from_csv(const CsvTable &run, const CsvTable *global) {
    RunRecord rec;
    auto get = [&](const char *key) -> std::string {
        auto it = run.meta.find(key);
        if (it == run.meta.end()) {
            throw std::invalid_argument(std::string("run CSV lacks the '# ") + key + "=' metadata line");
        }
        return it->second;
    };
    rec.state = state_from_name(get("state"));
    rec.params.num_qubits = std::stoi(get("num_qubits"));
    if (run.meta.count("steps")) {
        rec.params.steps = std::stoi(get("steps"));
        rec.params.alpha = std::stod(get("alpha"));
        rec.params.beta = std::stod(get("beta"));
        rec.params.gamma = std::stod(get("gamma"));
    }
    if (run.meta.count("window_offset")) {
        rec.window_offset = std::stoi(get("window_offset"));
    }
    if (run.meta.count("orbit_average")) {
        rec.orbit_average = get("orbit_average") == "1";
    }
    const auto ops = enumerate_range4(0);
    std::vector<const std::vector<double> *> cols;
    for (const auto &op : ops) {
        cols.push_back(&run.column(op.name()));
    }
    const auto &t = run.column("t");
    rec.values.resize(t.size());
    for (size_t i = 0; i < t.size(); i++) {
        rec.times.push_back(static_cast<int>(t[i]));
        for (int j = 0; j < kNumWindowOperators; j++) {
            rec.values[i][j] = (*cols[j])[i];
        }
    }
    if (run.has("Mz")) {
        rec.magnetization = run.column("Mz");
    }
    if (run.has("norm")) {
        rec.norm = run.column("norm");
    }
    if (global) {
        if (global->rows() != t.size()) {
            throw std::invalid_argument("global CSV has a different number of rows than the run CSV");
        }
        rec.staggered = global->column("Ms");
        rec.current = global->column("J");
    }
    return rec;
}

std::string run_config_text(const FloquetParams &p, InitialStateId state, int window_offset, bool orbit_average) {
    std::ostringstream s;
    s << "alpha=" << format_double(p.alpha) << ";beta=" << format_double(p.beta)
      << ";gamma=" << format_double(p.gamma) << ";num_qubits=" << p.num_qubits << ";steps=" << p.steps
      << ";state=" << state_name(state) << ";window_offset=" << window_offset
      << ";orbit_average=" << (orbit_average ? 1 : 0) << ";";
    return s.str();
}

}  // namespace ft
