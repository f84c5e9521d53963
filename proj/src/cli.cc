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

#include "floquet_tails/cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "floquet_tails/classifier.h"
#include "floquet_tails/csv_io.h"
#include "floquet_tails/floquet_sim.h"
#include "floquet_tails/hydro.h"
#include "floquet_tails/tailfit.h"

namespace ft {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

class NumericalGuard : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::ofstream open_out(const fs::path &path) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

// File output where "-" means stdout.
struct OutputTarget {
    explicit OutputTarget(const std::string &path) : to_stdout(path == "-") {
        if (!to_stdout) {
            file = open_out(path);
        }
    }
    std::ostream &stream() {
        return to_stdout ? std::cout : file;
    }
    bool to_stdout;
    std::ofstream file;
};

void write_json(const fs::path &path, const json &j) {
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

double floor_scale(int n) {
    return std::pow(2.0, -0.5 * n);
}

json to_json(const TailFitResult &r, const std::vector<std::string> &names) {
    json j;
    j["c0_over_N"] = r.c0_over_n;
    j["c1"] = r.c1;
    j["c2"] = r.c2;
    json alpha = json::object();
    for (size_t i = 0; i < names.size(); i++) {
        alpha[names[i]] = r.alpha[i];
    }
    j["alpha"] = alpha;
    j["residual_rms"] = r.residual_rms;
    j["data_range"] = r.data_range;
    j["window"] = {r.window.t_min, r.window.t_max};
    j["points"] = r.points;
    return j;
}

json to_json(const ExpFitResult &r) {
    return json{{"a", r.a},         {"tau", r.tau}, {"b", r.b}, {"floor", r.floor}, {"residual_rms", r.residual_rms},
                {"degenerate", r.degenerate}};
}

json to_json(const SlopeResult &r) {
    return json{{"slope", r.slope},
                {"slope_stderr", r.slope_stderr},
                {"points", r.points},
                {"masked_fraction", r.masked_fraction}};
}

std::string il_text(const std::optional<int> &il) {
    return il ? std::to_string(*il) : "-";
}

// ---------------------------------------------------------------- evolve

struct EvolveOptions {
    FloquetParams params;
    std::string state = "staggered";
    int offset = 0;
    bool orbit_average = false;
    bool allow_large = false;
    std::string out_dir = ".";
    std::string prefix;
    double drift_tol = 1e-8;
};

int cmd_evolve(const EvolveOptions &o) {
    InitialStateId state = state_from_name(o.state);
    validate_system_size(o.params.num_qubits, state, o.allow_large);
    std::string hash = hex64(fnv1a(run_config_text(o.params, state, o.offset, o.orbit_average)));
    RunRecord rec = run_evolution(o.params, state, o.offset, o.orbit_average, o.allow_large);

    std::string prefix = o.prefix.empty()
                             ? "run_" + std::string(state_name(state)) + "_N" + std::to_string(o.params.num_qubits)
                             : o.prefix;
    fs::path dir(o.out_dir);
    fs::path run_path = dir / (prefix + ".csv");
    fs::path global_path = dir / (prefix + "_global.csv");
    {
        auto out = open_out(run_path);
        write_run_csv(out, rec, hash);
    }
    {
        auto out = open_out(global_path);
        write_global_csv(out, rec, hash);
    }
    double norm_drift = 0, mz_drift = 0;
    for (size_t i = 0; i < rec.times.size(); i++) {
        norm_drift = std::max(norm_drift, std::abs(rec.norm[i] - rec.norm[0]));
        mz_drift = std::max(mz_drift, std::abs(rec.magnetization[i] - rec.magnetization[0]));
    }
    json meta;
    meta["config_hash"] = hash;
    meta["config"] = {{"alpha", o.params.alpha},
                      {"beta", o.params.beta},
                      {"gamma", o.params.gamma},
                      {"num_qubits", o.params.num_qubits},
                      {"steps", o.params.steps},
                      {"state", std::string(state_name(state))},
                      {"window_offset", o.offset},
                      {"orbit_average", o.orbit_average}};
    meta["diagnostics"] = {{"norm_drift", norm_drift},
                           {"mz_drift", mz_drift},
                           {"max_imag_residue", rec.max_imag_residue}};
    meta["conventions"] = {{"basis", "bit k is site k; bit 0 is spin up (Z = +1)"},
                           {"step_order", "ZZ, hopping on odd links, hopping on even links, next-nearest ZZ"},
                           {"boundary", "periodic"},
                           {"column_order", "lexicographic, I < X < Y < Z, leftmost site most significant"}};
    meta["provenance"] = {{"program", "ftails"}, {"version", FTAILS_VERSION}, {"git_rev", FTAILS_GIT_REV}};
    meta["files"] = {run_path.filename().string(), global_path.filename().string()};
    write_json(dir / (prefix + ".json"), meta);

    std::cout << "wrote " << run_path.string() << " (" << rec.times.size() << " rows)\n"
              << "norm drift " << norm_drift << ", Mz drift " << mz_drift << ", max imaginary residue "
              << rec.max_imag_residue << "\n";
    if (norm_drift > o.drift_tol || mz_drift > o.drift_tol * o.params.num_qubits) {
        throw NumericalGuard("conservation drift exceeds " + format_double(o.drift_tol));
    }
    return kExitOk;
}

// ---------------------------------------------------------------- classify

json classification_json(const ClassificationTable &table) {
    json rows = json::array();
    for (const auto &row : table.rows) {
        const auto &c = row.classification;
        json r;
        r["operator"] = row.op.name();
        r["class"] = c.class_id ? json(*c.class_id) : json(nullptr);
        r["R"] = c.r_parity;
        r["I_L"] = c.il_parity ? json(*c.il_parity) : json(nullptr);
        r["leading"] = field_operator_name(c.leading);
        json states;
        for (size_t s = 0; s < kAllInitialStates.size(); s++) {
            const auto &p = row.per_state[s];
            states[std::string(state_name(kAllInitialStates[s]))] = {
                {"verdict", verdict_name(p.verdict)},
                {"leading", field_operator_name(p.leading)},
                {"exponent", p.verdict == Verdict::PowerLaw ? p.exponent.str() : "-"},
                {"identically_zero", p.identically_zero}};
        }
        r["states"] = states;
        rows.push_back(r);
    }
    json j;
    j["exponential_count"] = table.exponential_count;
    json sizes = json::array();
    for (int c = 1; c <= 9; c++) {
        sizes.push_back(table.class_members[c].size());
    }
    j["class_sizes"] = sizes;
    j["rows"] = rows;
    return j;
}

int cmd_classify(const std::string &out_dir) {
    auto table = build_table(0);
    fs::path dir(out_dir);
    {
        auto out = open_out(dir / "classification.csv");
        out << "operator,class,R,I_L,leading";
        for (auto s : kAllInitialStates) {
            std::string n(state_name(s));
            out << "," << n << "_verdict," << n << "_leading," << n << "_exponent," << n << "_zero";
        }
        out << "\n";
        for (const auto &row : table.rows) {
            const auto &c = row.classification;
            out << row.op.name() << "," << (c.class_id ? std::to_string(*c.class_id) : "exp") << "," << c.r_parity
                << "," << il_text(c.il_parity) << "," << field_operator_name(c.leading);
            for (const auto &p : row.per_state) {
                out << "," << verdict_name(p.verdict) << "," << field_operator_name(p.leading) << ","
                    << (p.verdict == Verdict::PowerLaw ? p.exponent.str() : "-") << ","
                    << (p.identically_zero ? 1 : 0);
            }
            out << "\n";
        }
    }
    write_json(dir / "classification.json", classification_json(table));

    std::ostringstream txt;
    txt << "exponential (vanishing symmetrization): " << table.exponential_count << "\n";
    txt << "class  n   R   I_L  leading           staggered             xpol                  current\n";
    for (int cls = 1; cls <= 9; cls++) {
        const TableRow *rep = nullptr;
        for (const auto &row : table.rows) {
            if (row.classification.class_id == cls) {
                rep = &row;
                break;
            }
        }
        if (!rep) {
            continue;
        }
        char line[256];
        std::snprintf(line, sizeof(line), "%-5d  %-2zu  %-2d  %-3s  %-16s", cls, table.class_members[cls].size(),
                      rep->classification.r_parity, il_text(rep->classification.il_parity).c_str(),
                      field_operator_name(rep->classification.leading).c_str());
        txt << line;
        for (const auto &p : rep->per_state) {
            std::string cell = p.verdict == Verdict::PowerLaw
                                   ? field_operator_name(p.leading) + " t^-" + p.exponent.str()
                                   : (p.verdict == Verdict::ExactZero ? "0" : "exp");
            std::snprintf(line, sizeof(line), "  %-20s", cell.c_str());
            txt << line;
        }
        txt << "\n";
    }
    {
        auto out = open_out(dir / "classification.txt");
        out << txt.str();
    }
    std::cout << txt.str() << "total rows " << table.rows.size() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- sigma-delta

struct SigmaOptions {
    std::string run;
    std::string out;
    bool fit = false;
    double t_min = 5;
    double t_max = 1e300;
};

int cmd_sigma_delta(const SigmaOptions &o) {
    auto table = read_csv(o.run);
    auto rec = run_record_from_csv(table);
    auto s = sigma_delta(rec);
    std::string out_path = o.out.empty() ? fs::path(o.run).replace_extension("").string() + "_sigma.csv" : o.out;
    {
        auto out = open_out(out_path);
        CsvWriter w(out);
        w.meta("config_hash", table.meta.count("config_hash") ? table.meta.at("config_hash") : "");
        w.meta("state", s.state);
        w.meta("num_qubits", std::to_string(s.num_qubits));
        w.header({"t", "sigma_delta"});
        for (size_t i = 0; i < s.size(); i++) {
            w.row({s.t[i], s.y[i]});
        }
    }
    std::cout << "wrote " << out_path << "\n";
    if (o.fit) {
        ExpFitOptions opts;
        opts.t_min = o.t_min;
        opts.t_max = o.t_max;
        auto r = fit_exp_floor(s, s.num_qubits, opts);
        json j = to_json(r);
        j["window"] = {o.t_min, std::min(o.t_max, s.t.back())};
        std::cout << j.dump(2) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- fits

struct FitOptions {
    std::string input;
    std::vector<std::string> columns;
    double t_min = 20;
    double t_max = 300;
    int num_qubits = 0;
    std::string out;
};

void emit(const json &j, const std::string &out) {
    std::cout << j.dump(2) << "\n";
    if (!out.empty()) {
        write_json(out, j);
    }
}

int cmd_fit_tail(const FitOptions &o) {
    auto table = read_csv(o.input);
    std::vector<TimeSeries> series;
    for (const auto &c : o.columns) {
        series.push_back(table.series(c));
    }
    auto r = fit_tail_joint(series, {o.t_min, o.t_max});
    emit(to_json(r, o.columns), o.out);
    return kExitOk;
}

int cmd_fit_exp(const FitOptions &o) {
    auto table = read_csv(o.input);
    if (o.columns.size() != 1) {
        throw std::invalid_argument("fit-exp takes exactly one column");
    }
    auto s = table.series(o.columns[0]);
    int n = o.num_qubits ? o.num_qubits : s.num_qubits;
    if (n <= 0) {
        throw std::invalid_argument("system size unknown; pass --N");
    }
    ExpFitOptions opts;
    opts.t_min = o.t_min;
    opts.t_max = o.t_max;
    auto r = fit_exp_floor(s, n, opts);
    emit(to_json(r), o.out);
    return kExitOk;
}

int cmd_slope(const FitOptions &o) {
    auto table = read_csv(o.input);
    json j = json::object();
    for (const auto &c : o.columns) {
        j[c] = to_json(loglog_exponent(table.series(c), {o.t_min, o.t_max}));
    }
    emit(j, o.out);
    return kExitOk;
}

// ---------------------------------------------------------------- hydro

struct SpdeOptions {
    HydroParams params;
    std::string ensemble = "iid";
    double sigma = 1.0;
    double t_min = 1.0;
    double t_max = 100.0;
    int points = 21;
    int profile = 8;
    std::string out = "spde.csv";
};

std::vector<double> log_times(double t_min, double t_max, int points) {
    if (!(t_min > 0) || !(t_max >= t_min) || points < 1) {
        throw std::invalid_argument("need 0 < t-min <= t-max and points >= 1");
    }
    std::vector<double> ts;
    for (int i = 0; i < points; i++) {
        double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        ts.push_back(t_min * std::pow(t_max / t_min, f));
    }
    return ts;
}

int cmd_hydro_spde(const SpdeOptions &o) {
    EnsembleSpec spec{ensemble_from_name(o.ensemble), o.sigma};
    validate(o.params);
    auto times = log_times(o.t_min, o.t_max, o.points);
    std::vector<double> snapped;
    for (double t : times) {
        double s = std::round(t / o.params.dt) * o.params.dt;
        if (snapped.empty() || s > snapped.back()) {
            snapped.push_back(s);
        }
    }
    auto res = spde_ensemble_run(o.params, spec, snapped, o.profile);
    OutputTarget target(o.out);
    std::ostringstream cfg;
    cfg << "D0=" << format_double(o.params.d0) << ";C0=" << format_double(o.params.c0)
        << ";D2=" << format_double(o.params.d2) << ";a=" << format_double(o.params.a)
        << ";dt=" << format_double(o.params.dt) << ";L=" << o.params.length << ";replicas=" << o.params.replicas
        << ";seed=" << o.params.seed << ";ensemble=" << o.ensemble << ";sigma=" << format_double(o.sigma) << ";";
    CsvWriter w(target.stream());
    w.meta("config_hash", hex64(fnv1a(cfg.str())));
    w.meta("config", cfg.str());
    std::vector<std::string> names{"t",         "m2",           "m2_stderr",   "grad2",      "grad2_stderr",
                                   "grad3",     "grad3_stderr", "m2_lattice",  "grad2_lattice", "m2_steady",
                                   "grad2_steady"};
    for (int r = 0; r <= o.profile; r++) {
        names.push_back("c" + std::to_string(r));
        names.push_back("c" + std::to_string(r) + "_stderr");
    }
    w.header(names);
    for (size_t i = 0; i < res.times.size(); i++) {
        auto pred = lattice_prediction(o.params, spec, std::lround(res.times[i] / o.params.dt));
        std::vector<double> row{res.times[i],          res.m2[i].mean,         res.m2[i].stderr_mean,
                                res.grad2[i].mean,     res.grad2[i].stderr_mean, res.grad3[i].mean,
                                res.grad3[i].stderr_mean, pred.m2,            pred.grad2,
                                pred.steady_m2,        pred.steady_grad2};
        for (const auto &e : res.profile[i]) {
            row.push_back(e.mean);
            row.push_back(e.stderr_mean);
        }
        w.row(row);
    }
    (target.to_stdout ? std::cerr : std::cout) << "wrote " << o.out << "; max |sum m| drift "
                                                << res.max_total_drift << "\n";
    if (res.max_total_drift > 1e-9 * o.params.length) {
        throw NumericalGuard("total magnetization drifted by " + format_double(res.max_total_drift));
    }
    return kExitOk;
}

struct AnalyticCliOptions {
    std::string quantity = "correlation";
    std::string c = "gaussian:1";
    std::string c_eta = "zero";
    double d0 = 1.0;
    double x = 0.0;
    double t_min = 1.0;
    double t_max = 100.0;
    int points = 21;
    double k_max = std::numeric_limits<double>::infinity();
    double c1 = 1.0;
    double c2 = 0.0;
    double cutoff = 10.0;
    std::string out = "analytic.csv";
};

int cmd_hydro_analytic(const AnalyticCliOptions &o) {
    if (o.quantity != "correlation" && o.quantity != "gradient" && o.quantity != "threepoint") {
        throw std::invalid_argument("unknown quantity '" + o.quantity + "' (correlation, gradient, threepoint)");
    }
    SpectralModel model{Spectrum::parse(o.c), Spectrum::parse(o.c_eta), o.c1, o.c2};
    AnalyticOptions opts;
    opts.k_max = o.k_max;
    OutputTarget target(o.out);
    CsvWriter w(target.stream());
    std::string cfg = "quantity=" + o.quantity + ";c=" + o.c + ";c_eta=" + o.c_eta + ";D0=" + format_double(o.d0) +
                      ";x=" + format_double(o.x) + ";k_max=" + format_double(o.k_max) + ";c1=" + format_double(o.c1) +
                      ";c2=" + format_double(o.c2) + ";cutoff=" + format_double(o.cutoff) + ";";
    w.meta("config_hash", hex64(fnv1a(cfg)));
    w.meta("config", cfg);
    if (o.quantity == "correlation") {
        w.header({"t", "total", "steady", "excess", "asymptotic_excess", "abserr"});
        for (double t : log_times(o.t_min, o.t_max, o.points)) {
            auto v = equal_time_correlation(model, o.d0, t, o.x, opts);
            w.row({t, v.total, v.steady, v.excess, equal_time_correlation_asymptotic(model, o.d0, t, o.x), v.abserr});
        }
    } else if (o.quantity == "gradient") {
        w.header({"t", "total", "steady", "excess", "abserr"});
        for (double t : log_times(o.t_min, o.t_max, o.points)) {
            auto v = gradient_correlation(model, o.d0, t, opts);
            w.row({t, v.total, v.steady, v.excess, v.abserr});
        }
    } else if (o.quantity == "threepoint") {
        w.header({"t", "value", "closed_form"});
        for (double t : log_times(o.t_min, o.t_max, o.points)) {
            w.row({t, threepoint_gradient_tail(o.c1, o.c2, o.d0, t, o.cutoff),
                   threepoint_gradient_closed_form(o.c1, o.c2, o.d0, t, o.cutoff)});
        }
    }
    if (!target.to_stdout) {
        std::cout << "wrote " << o.out << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
    std::string run;
    std::string global;
    std::string table;
    std::string out;
    double zero_tol = 1e-12;
    double floor_factor = 10.0;
    double floor_t_min = 100.0;
    double slope_t_min = 20.0;
    double slope_t_max = 300.0;
    double slope_tol = 0.5;
};

struct Expected {
    Verdict verdict;
    bool identically_zero;
    double exponent;
    int class_id;
};

Expected expected_from_prediction(const DecayPrediction &p) {
    return {p.verdict, p.identically_zero, p.exponent.to_double(), p.class_id.value_or(0)};
}

std::map<std::string, Expected> load_table(const std::string &path, InitialStateId state) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception &e) {
        throw std::invalid_argument(path + ": not a classification JSON file: " + e.what());
    }
    std::map<std::string, Expected> out;
    try {
        for (const auto &row : j.at("rows")) {
            const auto &s = row.at("states").at(std::string(state_name(state)));
            std::string v = s.at("verdict");
            Expected e{};
            e.verdict = v == "zero" ? Verdict::ExactZero : v == "power" ? Verdict::PowerLaw : Verdict::Exponential;
            e.identically_zero = s.at("identically_zero");
            std::string ex = s.at("exponent");
            if (e.verdict == Verdict::PowerLaw) {
                auto slash = ex.find('/');
                e.exponent = slash == std::string::npos
                                 ? std::stod(ex)
                                 : std::stod(ex.substr(0, slash)) / std::stod(ex.substr(slash + 1));
            }
            e.class_id = row.at("class").is_null() ? 0 : row.at("class").get<int>();
            out[row.at("operator")] = e;
        }
    } catch (const json::exception &e) {
        throw std::invalid_argument(path + ": classification schema mismatch: " + e.what());
    }
    if (out.size() != kNumWindowOperators) {
        throw std::invalid_argument(path + ": expected 255 rows, found " + std::to_string(out.size()));
    }
    return out;
}

int cmd_verify(const VerifyOptions &o) {
    auto run = read_csv(o.run);
    std::string global_path = o.global;
    if (global_path.empty()) {
        auto candidate = fs::path(o.run).replace_extension("").string() + "_global.csv";
        if (fs::exists(candidate)) {
            global_path = candidate;
        }
    }
    std::optional<CsvTable> global;
    if (!global_path.empty()) {
        global = read_csv(global_path);
    }
    auto rec = run_record_from_csv(run, global ? &*global : nullptr);
    const int n = rec.params.num_qubits;
    const double floor_bound = o.floor_factor * floor_scale(n);

    std::map<std::string, Expected> expected;
    if (!o.table.empty()) {
        expected = load_table(o.table, rec.state);
    }
    auto ops = enumerate_range4(0);

    struct Line {
        std::string name;
        int class_id;
        std::string expectation;
        std::string measured;
        std::string status;
    };
    std::vector<Line> lines;
    int pass = 0, flag = 0, fail = 0;

    auto check = [&](const std::string &name, const TimeSeries &s, const Expected &e) {
        Line l{name, e.class_id, "", "", ""};
        double max_abs = 0, late_abs = 0;
        for (size_t i = 0; i < s.size(); i++) {
            max_abs = std::max(max_abs, std::abs(s.y[i]));
            if (s.t[i] > o.floor_t_min) {
                late_abs = std::max(late_abs, std::abs(s.y[i]));
            }
        }
        if (e.identically_zero || e.verdict == Verdict::ExactZero) {
            l.expectation = "zero";
            l.measured = format_double(max_abs);
            l.status = max_abs <= o.zero_tol ? "PASS" : "FAIL";
        } else if (e.verdict == Verdict::Exponential) {
            l.expectation = "floor<=" + format_double(floor_bound);
            l.measured = format_double(late_abs);
            l.status = late_abs <= floor_bound ? "PASS" : "FLAG";
        } else {
            l.expectation = "slope=-" + format_double(e.exponent);
            try {
                auto r = loglog_exponent(s, {o.slope_t_min, o.slope_t_max});
                l.measured = format_double(r.slope);
                l.status = std::abs(r.slope + e.exponent) <= o.slope_tol ? "PASS" : "FLAG";
            } catch (const FitError &err) {
                l.measured = "n/a";
                l.status = "FLAG";
            }
        }
        (l.status == "PASS" ? pass : l.status == "FLAG" ? flag : fail)++;
        lines.push_back(l);
    };

    for (int j = 0; j < kNumWindowOperators; j++) {
        std::string name = ops[j].name();
        Expected e = expected.empty() ? expected_from_prediction(predict_decay(ops[j], rec.state)) : expected.at(name);
        TimeSeries s;
        for (size_t i = 0; i < rec.times.size(); i++) {
            s.t.push_back(rec.times[i]);
            s.y.push_back(rec.values[i][j]);
        }
        s.name = name;
        check(name, s, e);
    }
    if (global) {
        // Ms ~ sum (-1)^k Z_k and J ~ sum (XY - YX) share the predictions of Z and of XY.
        const std::pair<const char *, const char *> globals[] = {{"Ms", "Z111"}, {"J", "XY11"}};
        for (auto [col, proxy] : globals) {
            Expected e = expected_from_prediction(predict_decay(PauliString::from_name(proxy), rec.state));
            check(col, global->series(col), e);
        }
    }

    std::string out_path = o.out.empty() ? fs::path(o.run).replace_extension("").string() + "_verify.csv" : o.out;
    {
        auto out = open_out(out_path);
        out << "# config_hash=" << (run.meta.count("config_hash") ? run.meta.at("config_hash") : "") << "\n";
        out << "operator,class,expected,measured,status\n";
        for (const auto &l : lines) {
            out << l.name << "," << l.class_id << "," << l.expectation << "," << l.measured << "," << l.status << "\n";
        }
    }
    for (const auto &l : lines) {
        if (l.status != "PASS") {
            std::cout << l.status << " " << l.name << " (class " << l.class_id << "): expected " << l.expectation
                      << ", measured " << l.measured << "\n";
        }
    }
    std::cout << "verify " << state_name(rec.state) << " N=" << n << ": " << pass << " PASS, " << flag << " FLAG, "
              << fail << " FAIL; report " << out_path << "\n";
    if (fail > 0) {
        throw NumericalGuard(std::to_string(fail) + " symmetry-forced zeros violated");
    }
    return kExitOk;
}

// ---------------------------------------------------------------- export

struct ExportOptions {
    std::string run;
    std::vector<std::string> ops;
    int class_id = 0;
    std::string out;
};

int cmd_export(const ExportOptions &o) {
    auto run = read_csv(o.run);
    std::vector<std::string> names = o.ops;
    if (o.class_id) {
        if (o.class_id < 1 || o.class_id > 9) {
            throw std::invalid_argument("--class must lie in 1..9");
        }
        auto table = build_table(0);
        for (const auto &m : table.class_members[o.class_id]) {
            names.push_back(m);
        }
    }
    if (names.empty()) {
        for (const auto &op : enumerate_range4(0)) {
            names.push_back(op.name());
        }
    }
    std::ofstream file;
    std::ostream *out = &std::cout;
    if (!o.out.empty() && o.out != "-") {
        file = open_out(o.out);
        out = &file;
    }
    const auto &t = run.column("t");
    *out << "# config_hash=" << (run.meta.count("config_hash") ? run.meta.at("config_hash") : "") << "\n";
    *out << "t,operator,class,value\n";
    for (const auto &name : names) {
        const auto &col = run.column(name);
        std::string cls = "-";
        if (name.size() == 4 && name.find_first_not_of("1XYZ") == std::string::npos && name != "1111") {
            auto c = classify(PauliString::from_name(name));
            cls = c.class_id ? std::to_string(*c.class_id) : "exp";
        }
        for (size_t i = 0; i < t.size(); i++) {
            *out << format_double(t[i]) << "," << name << "," << cls << "," << format_double(col[i]) << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char *const *argv) {
    CLI::App app{"Floquet long-time-tail toolkit: simulation, operator classification, fits, hydrodynamics"};
    app.name("ftails");
    app.set_config("--config", "", "INI/TOML file; options of a subcommand go in a [subcommand] section");
    app.require_subcommand(1);
    std::function<int()> action;

    EvolveOptions ev;
    auto *evolve = app.add_subcommand("evolve", "Evolve an initial state and record all 255 window observables");
    evolve->add_option("-N,--num-qubits", ev.params.num_qubits, "Chain length")->capture_default_str();
    evolve->add_option("--state", ev.state, "staggered | xpol | current")->capture_default_str();
    evolve->add_option("--steps", ev.params.steps, "Floquet steps")->capture_default_str()->check(CLI::NonNegativeNumber);
    evolve->add_option("--alpha", ev.params.alpha)->capture_default_str();
    evolve->add_option("--beta", ev.params.beta)->capture_default_str();
    evolve->add_option("--gamma", ev.params.gamma)->capture_default_str();
    evolve->add_option("--offset", ev.offset, "First site of the 4-site window")->capture_default_str();
    evolve->add_flag("--orbit-average", ev.orbit_average, "Average over one period of window placements");
    evolve->add_flag("--allow-large", ev.allow_large, "Acknowledge the memory needed for N > 20");
    evolve->add_option("-o,--out-dir", ev.out_dir)->capture_default_str();
    evolve->add_option("--prefix", ev.prefix, "File prefix (default run_<state>_N<N>)");
    evolve->add_option("--drift-tol", ev.drift_tol, "Norm drift that triggers exit code 2")->capture_default_str();
    evolve->callback([&] { action = [&] { return cmd_evolve(ev); }; });

    std::string classify_dir = ".";
    auto *cls = app.add_subcommand("classify", "Write the 255-operator classification table");
    cls->add_option("-o,--out-dir", classify_dir)->capture_default_str();
    cls->callback([&] { action = [&] { return cmd_classify(classify_dir); }; });

    SigmaOptions sg;
    auto *sig = app.add_subcommand("sigma-delta", "Distance of the window state from its symmetrized projection");
    sig->add_option("--run", sg.run, "Run CSV from evolve")->required();
    sig->add_option("-o,--out", sg.out, "Output CSV (default <run>_sigma.csv)");
    sig->add_flag("--fit", sg.fit, "Fit a exp(-t/tau) + b 2^-N/2");
    sig->add_option("--t-min", sg.t_min)->capture_default_str();
    sig->add_option("--t-max", sg.t_max);
    sig->callback([&] { action = [&] { return cmd_sigma_delta(sg); }; });

    FitOptions ft_opts, fe_opts, sl_opts;
    auto *fit_tail = app.add_subcommand("fit-tail", "Joint c0/N + c1/sqrt(t) + c2/t + alpha_n/t^1.5 fit");
    fit_tail->add_option("--input,--run", ft_opts.input)->required();
    fit_tail->add_option("--columns,--ops", ft_opts.columns)->required()->delimiter(',');
    fit_tail->add_option("--t-min", ft_opts.t_min)->capture_default_str();
    fit_tail->add_option("--t-max", ft_opts.t_max)->capture_default_str();
    fit_tail->add_option("-o,--out", ft_opts.out, "Also write the JSON here");
    fit_tail->callback([&] { action = [&] { return cmd_fit_tail(ft_opts); }; });

    fe_opts.t_min = 0;
    fe_opts.t_max = 1e300;
    auto *fit_exp = app.add_subcommand("fit-exp", "Fit a exp(-t/tau) + b 2^-N/2 to one column");
    fit_exp->add_option("--input,--run", fe_opts.input)->required();
    fit_exp->add_option("--column", fe_opts.columns)->required()->expected(1);
    fit_exp->add_option("-N,--num-qubits", fe_opts.num_qubits, "System size (default: from the file)");
    fit_exp->add_option("--t-min", fe_opts.t_min)->capture_default_str();
    fit_exp->add_option("--t-max", fe_opts.t_max);
    fit_exp->add_option("-o,--out", fe_opts.out);
    fit_exp->callback([&] { action = [&] { return cmd_fit_exp(fe_opts); }; });

    auto *slope = app.add_subcommand("slope", "Log-log slope of |y| over a window");
    slope->add_option("--input,--run", sl_opts.input)->required();
    slope->add_option("--columns,--ops", sl_opts.columns)->required()->delimiter(',');
    slope->add_option("--t-min", sl_opts.t_min)->capture_default_str();
    slope->add_option("--t-max", sl_opts.t_max)->capture_default_str();
    slope->add_option("-o,--out", sl_opts.out);
    slope->callback([&] { action = [&] { return cmd_slope(sl_opts); }; });

    SpdeOptions sp;
    auto *spde = app.add_subcommand("hydro-spde", "Ensemble runs of the conserved-noise lattice diffusion equation");
    spde->add_option("--D0", sp.params.d0)->capture_default_str();
    spde->add_option("--C0", sp.params.c0)->capture_default_str();
    spde->add_option("--D2", sp.params.d2)->capture_default_str();
    spde->add_option("--a", sp.params.a)->capture_default_str();
    spde->add_option("--dt", sp.params.dt)->capture_default_str();
    spde->add_option("-L,--length", sp.params.length)->capture_default_str();
    spde->add_option("--replicas", sp.params.replicas)->capture_default_str();
    spde->add_option("--seed", sp.params.seed)->capture_default_str();
    spde->add_option("--threads", sp.params.threads)->capture_default_str();
    spde->add_option("--ensemble", sp.ensemble, "iid | staggered | matched | dipole")->capture_default_str();
    spde->add_option("--sigma", sp.sigma)->capture_default_str();
    spde->add_option("--t-min", sp.t_min)->capture_default_str();
    spde->add_option("--t-max", sp.t_max)->capture_default_str();
    spde->add_option("--points", sp.points)->capture_default_str();
    spde->add_option("--profile", sp.profile, "Largest separation in the two-point profile")->capture_default_str();
    spde->add_option("-o,--out", sp.out)->capture_default_str();
    spde->callback([&] { action = [&] { return cmd_hydro_spde(sp); }; });

    AnalyticCliOptions an;
    auto *ana = app.add_subcommand("hydro-analytic", "Quadrature for correlation, gradient and three-point tails");
    ana->add_option("--quantity", an.quantity, "correlation | gradient | threepoint")->capture_default_str();
    ana->add_option("--C", an.c, "Initial spectrum")->capture_default_str();
    ana->add_option("--C-eta", an.c_eta, "Noise spectrum")->capture_default_str();
    ana->add_option("--D0", an.d0)->capture_default_str();
    ana->add_option("--x", an.x, "Separation")->capture_default_str();
    ana->add_option("--t-min", an.t_min)->capture_default_str();
    ana->add_option("--t-max", an.t_max)->capture_default_str();
    ana->add_option("--points", an.points)->capture_default_str();
    ana->add_option("--k-max", an.k_max, "Momentum cut (pi/a on a lattice)");
    ana->add_option("--c1", an.c1)->capture_default_str();
    ana->add_option("--c2", an.c2)->capture_default_str();
    ana->add_option("--cutoff", an.cutoff, "Gaussian UV regulator scale")->capture_default_str();
    ana->add_option("-o,--out", an.out)->capture_default_str();
    ana->callback([&] { action = [&] { return cmd_hydro_analytic(an); }; });

    VerifyOptions vf;
    auto *ver = app.add_subcommand("verify", "Check a run against the predicted decay of every operator");
    ver->add_option("--run", vf.run)->required();
    ver->add_option("--global", vf.global, "Global CSV (default <run>_global.csv when present)");
    ver->add_option("--table", vf.table, "classification.json (default: computed)");
    ver->add_option("-o,--out", vf.out, "Report CSV (default <run>_verify.csv)");
    ver->add_option("--zero-tol", vf.zero_tol)->capture_default_str();
    ver->add_option("--floor-factor", vf.floor_factor)->capture_default_str();
    ver->add_option("--floor-t-min", vf.floor_t_min)->capture_default_str();
    ver->add_option("--slope-t-min", vf.slope_t_min)->capture_default_str();
    ver->add_option("--slope-t-max", vf.slope_t_max)->capture_default_str();
    ver->add_option("--slope-tol", vf.slope_tol)->capture_default_str();
    ver->callback([&] { action = [&] { return cmd_verify(vf); }; });

    ExportOptions ex;
    auto *exp = app.add_subcommand("export", "Long-format t,operator,class,value export of selected columns");
    exp->add_option("--run", ex.run)->required();
    exp->add_option("--ops", ex.ops)->delimiter(',');
    exp->add_option("--class", ex.class_id, "All members of a class (1..9)");
    exp->add_option("-o,--out", ex.out, "Output file (default stdout)");
    exp->callback([&] { action = [&] { return cmd_export(ex); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }
    try {
        return action ? action() : kExitUsage;
    } catch (const NumericalGuard &e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const FitError &e) {
        std::cerr << "fit failed: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const QuadratureError &e) {
        std::cerr << e.what() << "\n";
        return kExitNumerical;
    } catch (const SpdeDivergence &e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace ft
