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

#include "floquet_tails/floquet_sim.h"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ft {

std::string_view state_name(InitialStateId id) {
    switch (id) {
        case InitialStateId::Staggered:
            return "staggered";
        case InitialStateId::XPolarized:
            return "xpol";
        case InitialStateId::CurrentCarrying:
            return "current";
    }
    return "?";
}

InitialStateId state_from_name(std::string_view name) {
    if (name == "staggered" || name == "1" || name == "psi1") {
        return InitialStateId::Staggered;
    }
    if (name == "xpol" || name == "2" || name == "psi2") {
        return InitialStateId::XPolarized;
    }
    if (name == "current" || name == "3" || name == "psi3") {
        return InitialStateId::CurrentCarrying;
    }
    throw std::invalid_argument("unknown initial state '" + std::string(name) +
                                "' (expected staggered, xpol or current)");
}

int state_period(InitialStateId id) {
    return id == InitialStateId::CurrentCarrying ? 4 : 2;
}

void validate_system_size(int num_qubits, InitialStateId state, bool allow_large) {
    if (num_qubits < kWindowSize) {
        throw std::invalid_argument("N=" + std::to_string(num_qubits) + " is smaller than the 4-site window");
    }
    if (num_qubits % 2 != 0) {
        throw std::invalid_argument("N=" + std::to_string(num_qubits) +
                                    " is odd; the odd/even link layers need an even number of qubits");
    }
    if (state == InitialStateId::CurrentCarrying && num_qubits % 4 != 0) {
        throw std::invalid_argument("N=" + std::to_string(num_qubits) +
                                    " is not a multiple of 4, which the current-carrying state requires");
    }
    if (num_qubits > kHardMaxQubits) {
        throw std::invalid_argument("N=" + std::to_string(num_qubits) + " exceeds the supported maximum of " +
                                    std::to_string(kHardMaxQubits));
    }
    if (num_qubits > kDefaultMaxQubits && !allow_large) {
        double gib = std::ldexp(16.0, num_qubits) / std::ldexp(1.0, 30);
        throw std::invalid_argument("N=" + std::to_string(num_qubits) + " needs " + std::to_string(gib) +
                                    " GiB of amplitudes; pass the large-memory acknowledgment to proceed");
    }
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits), amps_(size_t{1} << num_qubits) {
}

double StateVector::norm_squared() const {
    double s = 0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

double StateVector::total_magnetization() const {
    double s = 0;
    for (size_t x = 0; x < amps_.size(); x++) {
        s += std::norm(amps_[x]) * (num_qubits_ - 2 * std::popcount(x));
    }
    return s;
}

StateVector prepare_initial(InitialStateId state, int num_qubits) {
    validate_system_size(num_qubits, state, true);
    StateVector psi(num_qubits);
    const double r = 1.0 / std::sqrt(2.0);
    switch (state) {
        case InitialStateId::Staggered: {
            size_t x = 0;
            for (int k = 1; k < num_qubits; k += 2) {
                x |= size_t{1} << k;
            }
            psi[x] = 1.0;
            break;
        }
        case InitialStateId::XPolarized: {
            const double amp = std::ldexp(1.0, -num_qubits / 2);
            for (auto &a : psi.amplitudes()) {
                a = amp;
            }
            break;
        }
        case InitialStateId::CurrentCarrying: {
            // Amplitude of |down> relative to |up> for +x, +y, -x, -y.
            const Amplitude down[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            for (size_t x = 0; x < psi.dim(); x++) {
                Amplitude a = 1.0;
                for (int k = 0; k < num_qubits; k++) {
                    a *= ((x >> k) & 1) ? down[k % 4] * r : Amplitude(r, 0);
                }
                psi[x] = a;
            }
            break;
        }
    }
    return psi;
}

namespace {

inline size_t rotate_right(size_t x, int shift, int n) {
    size_t low = x & ((size_t{1} << shift) - 1);
    return (x >> shift) | (low << (n - shift));
}

}  // namespace

FloquetStepper::FloquetStepper(const FloquetParams &params, int num_qubits)
    : num_qubits_(num_qubits),
      cos_2beta_(std::cos(2 * params.beta)),
      sin_2beta_(std::sin(2 * params.beta)),
      alpha_phase_(num_qubits + 1),
      gamma_phase_(num_qubits + 1) {
    for (int d = 0; d <= num_qubits; d++) {
        // sum over bonds of Z Z equals N - 2 * (number of anti-aligned bonds)
        double zz = num_qubits - 2.0 * d;
        alpha_phase_[d] = std::polar(1.0, params.alpha * zz);
        gamma_phase_[d] = std::polar(1.0, params.gamma * zz);
    }
}

void FloquetStepper::apply_zz_phases(StateVector &state) const {
    const int n = num_qubits_;
    auto amps = state.amplitudes();
    for (size_t x = 0; x < amps.size(); x++) {
        amps[x] *= alpha_phase_[std::popcount(x ^ rotate_right(x, 1, n))];
    }
}

void FloquetStepper::apply_next_nearest_phases(StateVector &state) const {
    const int n = num_qubits_;
    auto amps = state.amplitudes();
    for (size_t x = 0; x < amps.size(); x++) {
        amps[x] *= gamma_phase_[std::popcount(x ^ rotate_right(x, 2, n))];
    }
}

void FloquetStepper::apply_hopping_layer(StateVector &state, int parity) const {
    const int n = num_qubits_;
    auto amps = state.amplitudes();
    const size_t dim = amps.size();
    const Amplitude c(cos_2beta_, 0);
    const Amplitude is(0, sin_2beta_);
    for (int k = parity; k < n; k += 2) {
        const size_t left = size_t{1} << k;
        const size_t right = size_t{1} << ((k + 1) % n);
        const size_t mask = left | right;
        // Acts only on the {|01>, |10>} block of the link.
        for (size_t x = 0; x < dim; x = ((x | mask) + 1) & ~mask) {
            Amplitude &a = amps[x | left];
            Amplitude &b = amps[x | right];
            Amplitude na = c * a + is * b;
            Amplitude nb = is * a + c * b;
            a = na;
            b = nb;
        }
    }
}

void FloquetStepper::step(StateVector &state) const {
    apply_zz_phases(state);
    apply_hopping_layer(state, 1);
    apply_hopping_layer(state, 0);
    apply_next_nearest_phases(state);
}

void apply_floquet_step(StateVector &state, const FloquetParams &params) {
    FloquetStepper(params, state.num_qubits()).step(state);
}

Expectation expectation(const StateVector &state, const PauliString &op) {
    const int n = state.num_qubits();
    if (op.offset < 0 || op.offset + static_cast<int>(op.size()) > n) {
        throw std::out_of_range("operator " + op.name() + " at offset " + std::to_string(op.offset) +
                                " is not supported within [0, " + std::to_string(n) + ")");
    }
    size_t flip = 0;
    size_t sign_mask = 0;
    int num_y = 0;
    for (size_t j = 0; j < op.size(); j++) {
        size_t bit = size_t{1} << (op.offset + j);
        switch (op.letters[j]) {
            case PauliLetter::X:
                flip |= bit;
                break;
            case PauliLetter::Y:
                flip |= bit;
                sign_mask |= bit;
                num_y++;
                break;
            case PauliLetter::Z:
                sign_mask |= bit;
                break;
            case PauliLetter::I:
                break;
        }
    }
    auto amps = state.amplitudes();
    Amplitude acc = 0;
    for (size_t x = 0; x < amps.size(); x++) {
        Amplitude term = std::conj(amps[x ^ flip]) * amps[x];
        acc += (std::popcount(x & sign_mask) & 1) ? -term : term;
    }
    // Y|b> = i (-1)^b |1-b>
    static const Amplitude i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    acc *= i_pow[num_y % 4];
    return {acc.real(), acc.imag()};
}

Expectation expectation(const StateVector &state, const OperatorSum &op) {
    Expectation total;
    for (const auto &[p, c] : op.terms()) {
        auto e = expectation(state, p);
        total.value += c.to_double() * e.value;
        total.imag_residue += c.to_double() * e.imag_residue;
    }
    return total;
}

WindowDensityMatrix window_density_matrix(const StateVector &state, int window_offset) {
    const int n = state.num_qubits();
    size_t offsets[16];
    for (int a = 0; a < 16; a++) {
        size_t off = 0;
        for (int j = 0; j < kWindowSize; j++) {
            if ((a >> j) & 1) {
                off |= size_t{1} << (((window_offset + j) % n + n) % n);
            }
        }
        offsets[a] = off;
    }
    const size_t mask = offsets[15];
    auto amps = state.amplitudes();
    WindowDensityMatrix rho{};
    Amplitude v[16];
    for (size_t x = 0; x < amps.size(); x = ((x | mask) + 1) & ~mask) {
        for (int a = 0; a < 16; a++) {
            v[a] = amps[x | offsets[a]];
        }
        for (int a = 0; a < 16; a++) {
            for (int b = 0; b <= a; b++) {
                rho[a][b] += v[a] * std::conj(v[b]);
            }
        }
    }
    for (int a = 0; a < 16; a++) {
        for (int b = a + 1; b < 16; b++) {
            rho[a][b] = std::conj(rho[b][a]);
        }
    }
    return rho;
}

std::array<double, kNumWindowOperators> window_expectations(const WindowDensityMatrix &rho,
                                                            double *imag_residue) {
    static const Amplitude i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::array<double, kNumWindowOperators> out{};
    double worst = 0;
    auto ops = enumerate_range4(0);
    for (int idx = 0; idx < kNumWindowOperators; idx++) {
        const auto &op = ops[idx];
        int flip = 0;
        int sign_mask = 0;
        int num_y = 0;
        for (int j = 0; j < kWindowSize; j++) {
            int bit = 1 << j;
            switch (op.letters[j]) {
                case PauliLetter::X:
                    flip |= bit;
                    break;
                case PauliLetter::Y:
                    flip |= bit;
                    sign_mask |= bit;
                    num_y++;
                    break;
                case PauliLetter::Z:
                    sign_mask |= bit;
                    break;
                case PauliLetter::I:
                    break;
            }
        }
        // <B> = sum_a phase(a) rho[a][a ^ flip]
        Amplitude acc = 0;
        for (int a = 0; a < 16; a++) {
            Amplitude term = rho[a][a ^ flip];
            acc += (std::popcount(static_cast<unsigned>(a & sign_mask)) & 1) ? -term : term;
        }
        acc *= i_pow[num_y % 4];
        out[idx] = acc.real();
        worst = std::max(worst, std::abs(acc.imag()));
    }
    if (imag_residue != nullptr) {
        *imag_residue = worst;
    }
    return out;
}

double link_current(const StateVector &state, int site_i, int site_j) {
    const int n = state.num_qubits();
    const size_t bi = size_t{1} << ((site_i % n + n) % n);
    const size_t bj = size_t{1} << ((site_j % n + n) % n);
    const size_t mask = bi | bj;
    auto amps = state.amplitudes();
    // X_i Y_j - Y_i X_j = 2i (s+_i s-_j - s-_i s+_j), with s+ = |up><down| = |0><1|.
    Amplitude hop = 0;
    for (size_t x = 0; x < amps.size(); x = ((x | mask) + 1) & ~mask) {
        hop += std::conj(amps[x | bj]) * amps[x | bi];
    }
    return -4.0 * hop.imag();
}

double staggered_magnetization(const StateVector &state) {
    const int n = state.num_qubits();
    size_t odd_sites = 0;
    for (int k = 1; k < n; k += 2) {
        odd_sites |= size_t{1} << k;
    }
    auto amps = state.amplitudes();
    double s = 0;
    for (size_t x = 0; x < amps.size(); x++) {
        // sum_k (-1)^k Z_k = (#up on even - #down on even) - (#up on odd - #down on odd)
        int down_even = std::popcount(x & ~odd_sites);
        int down_odd = std::popcount(x & odd_sites);
        double val = (n / 2 - 2.0 * down_even) - (n / 2 - 2.0 * down_odd);
        s += std::norm(amps[x]) * val;
    }
    return s / n;
}

double spin_current(const StateVector &state) {
    const int n = state.num_qubits();
    double s = 0;
    for (int k = 0; k < n; k++) {
        s += link_current(state, k, k + 1);
    }
    return s / n;
}

std::vector<double> RunRecord::column(int op_index) const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto &row : values) {
        out.push_back(row[op_index]);
    }
    return out;
}

namespace {

std::array<double, kNumWindowOperators> measure_window(const StateVector &psi, int offset, int placements,
                                                       double &imag_residue) {
    std::array<double, kNumWindowOperators> acc{};
    for (int p = 0; p < placements; p++) {
        double res = 0;
        auto vals = window_expectations(window_density_matrix(psi, offset + p), &res);
        imag_residue = std::max(imag_residue, res);
        for (int j = 0; j < kNumWindowOperators; j++) {
            acc[j] += vals[j];
        }
    }
    if (placements > 1) {
        for (auto &v : acc) {
            v /= placements;
        }
    }
    return acc;
}

}  // namespace

RunRecord run_evolution(const FloquetParams &params, InitialStateId state, int window_offset, bool orbit_average,
                        bool allow_large) {
    const int n = params.num_qubits;
    validate_system_size(n, state, allow_large);
    if (params.steps < 0) {
        throw std::invalid_argument("steps must be non-negative");
    }
    RunRecord rec;
    rec.params = params;
    rec.state = state;
    rec.window_offset = window_offset;
    rec.orbit_average = orbit_average;
    const int placements = orbit_average ? state_period(state) : 1;

    StateVector psi = prepare_initial(state, n);
    FloquetStepper stepper(params, n);
    for (int t = 0; t <= params.steps; t++) {
        if (t > 0) {
            stepper.step(psi);
        }
        rec.times.push_back(t);
        rec.values.push_back(measure_window(psi, window_offset, placements, rec.max_imag_residue));
        rec.magnetization.push_back(psi.total_magnetization());
        rec.norm.push_back(psi.norm_squared());
        rec.staggered.push_back(staggered_magnetization(psi));
        rec.current.push_back(spin_current(psi));
    }
    return rec;
}

const std::vector<std::vector<std::pair<int, double>>> &window_symmetrization_table() {
    static const auto table = [] {
        std::vector<std::vector<std::pair<int, double>>> t;
        for (const auto &op : enumerate_range4(0)) {
            std::vector<std::pair<int, double>> row;
            const auto sym = symmetrize(op);
            for (const auto &[term, coef] : sym.terms()) {
                row.emplace_back(window_index(term), coef.to_double());
            }
            t.push_back(std::move(row));
        }
        return t;
    }();
    return table;
}

TimeSeries sigma_delta(const RunRecord &record) {
    const auto &table = window_symmetrization_table();
    TimeSeries out;
    out.num_qubits = record.params.num_qubits;
    out.state = std::string(state_name(record.state));
    out.name = "sigma_delta";
    for (size_t r = 0; r < record.values.size(); r++) {
        const auto &row = record.values[r];
        double sum = 0;
        for (int j = 0; j < kNumWindowOperators; j++) {
            double sym = 0;
            for (const auto &[k, c] : table[j]) {
                sym += c * row[k];
            }
            double d = row[j] - sym;
            sum += d * d;
        }
        out.t.push_back(record.times[r]);
        out.y.push_back(std::sqrt(sum / 16.0));
    }
    return out;
}

StateProfile measure_state_profile(InitialStateId state, int num_qubits) {
    auto psi = prepare_initial(state, num_qubits);
    auto z_string = [&](std::initializer_list<int> sites) {
        PauliString p;
        p.letters.assign(num_qubits, PauliLetter::I);
        for (int s : sites) {
            p.letters[s] = PauliLetter::Z;
        }
        return expectation(psi, p).value;
    };
    constexpr double tol = 1e-12;
    StateProfile prof;
    prof.state = state;
    prof.two_point_matches_infinite_temperature = true;
    for (int i = 0; i < num_qubits; i++) {
        for (int j = i + 1; j < num_qubits; j++) {
            if (std::abs(z_string({i, j})) > tol) {
                prof.two_point_matches_infinite_temperature = false;
            }
        }
    }
    prof.four_point_matches_infinite_temperature = true;
    for (int i = 0; i < num_qubits; i++) {
        for (int j = i + 1; j < num_qubits; j++) {
            for (int k = j + 1; k < num_qubits; k++) {
                for (int l = k + 1; l < num_qubits; l++) {
                    if (std::abs(z_string({i, j, k, l})) > tol) {
                        prof.four_point_matches_infinite_temperature = false;
                    }
                }
            }
        }
    }
    return prof;
}

}  // namespace ft
