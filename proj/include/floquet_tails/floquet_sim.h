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

#ifndef FLOQUET_TAILS_FLOQUET_SIM_H
#define FLOQUET_TAILS_FLOQUET_SIM_H

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "floquet_tails/initial_state.h"
#include "floquet_tails/pauli.h"
#include "floquet_tails/time_series.h"

namespace ft {

using Amplitude = std::complex<double>;

/// Couplings of the four-layer Floquet step and the run length.
///
/// One step applies, in order:
///   1. exp(+i alpha Z_k Z_{k+1}) on every nearest-neighbour link,
///   2. exp(+i beta (XX + YY)) on links (k, k+1) with k odd,
///   3. the same gate on links with k even,
///   4. exp(+i gamma Z_k Z_{k+2}) on every next-nearest pair.
/// Sites are 0-based and periodic. Layer 2 therefore contains the wrap-around
/// link (N-1, 0).
struct FloquetParams {
    double alpha = 2.0;
    double beta = 0.25;
    double gamma = 1.0;
    int num_qubits = 20;
    int steps = 300;
};

/// Largest system size the simulator will allocate without an explicit acknowledgment.
constexpr int kDefaultMaxQubits = 20;
constexpr int kHardMaxQubits = 30;

/// Throws std::invalid_argument when N is odd, out of range, or not a multiple of the
/// state's period.
void validate_system_size(int num_qubits, InitialStateId state, bool allow_large = false);

/// 2^N amplitudes. Basis index bit k holds site k; a 0 bit is spin up (Z = +1).
class StateVector {
   public:
    explicit StateVector(int num_qubits);

    int num_qubits() const {
        return num_qubits_;
    }
    size_t dim() const {
        return amps_.size();
    }
    std::span<Amplitude> amplitudes() {
        return amps_;
    }
    std::span<const Amplitude> amplitudes() const {
        return amps_;
    }
    Amplitude &operator[](size_t i) {
        return amps_[i];
    }
    const Amplitude &operator[](size_t i) const {
        return amps_[i];
    }

    double norm_squared() const;
    /// <sum_k Z_k>.
    double total_magnetization() const;

   private:
    int num_qubits_;
    std::vector<Amplitude> amps_;
};

StateVector prepare_initial(InitialStateId state, int num_qubits);

/// Applies U_FL in place. Phase tables are rebuilt per call; use FloquetStepper in loops.
void apply_floquet_step(StateVector &state, const FloquetParams &params);

class FloquetStepper {
   public:
    FloquetStepper(const FloquetParams &params, int num_qubits);
    void step(StateVector &state) const;

    void apply_zz_phases(StateVector &state) const;
    void apply_hopping_layer(StateVector &state, int parity) const;
    void apply_next_nearest_phases(StateVector &state) const;

   private:
    int num_qubits_;
    double cos_2beta_;
    double sin_2beta_;
    std::vector<Amplitude> alpha_phase_;  // indexed by number of anti-aligned bonds
    std::vector<Amplitude> gamma_phase_;
};

struct Expectation {
    double value = 0.0;
    /// Imaginary part of <psi|A|psi>; nonzero only through rounding for Hermitian A.
    double imag_residue = 0.0;
};

/// <psi|A|psi> without copying the state. Throws std::out_of_range if the string
/// reaches past site N-1 (window offsets are taken literally, without wrapping).
Expectation expectation(const StateVector &state, const PauliString &op);
Expectation expectation(const StateVector &state, const OperatorSum &op);

/// Reduced density matrix of the four sites offset..offset+3 (periodic wrap).
/// rho[a][b] with local index bit j on site offset + j.
using WindowDensityMatrix = std::array<std::array<Amplitude, 16>, 16>;
WindowDensityMatrix window_density_matrix(const StateVector &state, int window_offset);

/// Expectations of all 255 window strings, in enumerate_range4 order, from a
/// reduced density matrix. `imag_residue` receives the largest imaginary part.
std::array<double, kNumWindowOperators> window_expectations(const WindowDensityMatrix &rho,
                                                            double *imag_residue = nullptr);

/// <X_i Y_j - Y_i X_j>, the spin current on link (i, j).
double link_current(const StateVector &state, int site_i, int site_j);

/// (1/N) sum_k (-1)^k <Z_k>.
double staggered_magnetization(const StateVector &state);
/// (1/N) sum_k <X_k Y_{k+1} - Y_k X_{k+1}>, periodic.
double spin_current(const StateVector &state);

struct RunRecord {
    FloquetParams params;
    InitialStateId state = InitialStateId::Staggered;
    int window_offset = 0;
    bool orbit_average = false;
    std::vector<int> times;
    /// values[t][j] is the expectation of enumerate_range4()[j] after t steps.
    std::vector<std::array<double, kNumWindowOperators>> values;
    std::vector<double> magnetization;
    std::vector<double> norm;
    std::vector<double> staggered;
    std::vector<double> current;
    double max_imag_residue = 0.0;

    std::vector<double> column(int op_index) const;
};

/// Evolves from the chosen initial state and records all 255 window observables after
/// every step, t = 0 included. With orbit_average the values are averaged over the
/// window placements offset, offset+1, ..., offset+period-1, i.e. over one period of
/// the state's translation orbit.
RunRecord run_evolution(const FloquetParams &params, InitialStateId state, int window_offset = 0,
                        bool orbit_average = false, bool allow_large = false);

/// sigma_Delta(t) = sqrt(sum_i <B_i - B_i|sym>^2 / 16).
TimeSeries sigma_delta(const RunRecord &record);

/// Symmetrized form of each window string, expressed as indices into the window order.
/// Entry j lists (index, coefficient) pairs of symmetrize(enumerate_range4()[j]).
const std::vector<std::vector<std::pair<int, double>>> &window_symmetrization_table();

/// Initial-state magnetization statistics measured on a small chain.
struct StateProfile {
    InitialStateId state = InitialStateId::Staggered;
    /// <Z_i Z_j> = delta_ij for all i, j at t = 0.
    bool two_point_matches_infinite_temperature = false;
    /// <Z_i Z_j Z_k Z_l> = 0 for all distinct i, j, k, l at t = 0.
    bool four_point_matches_infinite_temperature = false;
};
StateProfile measure_state_profile(InitialStateId state, int num_qubits = 8);

}  // namespace ft

#endif
