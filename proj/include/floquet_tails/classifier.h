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

#ifndef FLOQUET_TAILS_CLASSIFIER_H
#define FLOQUET_TAILS_CLASSIFIER_H

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "floquet_tails/floquet_sim.h"
#include "floquet_tails/initial_state.h"
#include "floquet_tails/pauli.h"

namespace ft {

/// Reduced fraction; used for power-counting exponents.
struct Rational {
    int num = 0;
    int den = 1;

    static Rational make(int num, int den);
    double to_double() const {
        return static_cast<double>(num) / den;
    }
    Rational operator+(const Rational &o) const;
    bool operator==(const Rational &o) const = default;
    auto operator<=>(const Rational &o) const {
        return static_cast<long>(num) * o.den <=> static_cast<long>(o.num) * den;
    }
    std::string str() const;
};

/// Closed vocabulary of hydrodynamic operators appearing in the decay table.
enum class FieldOperator {
    None,
    M,            // m
    M2,           // m^2
    M3,           // m^3
    M4,           // m^4
    GradM,        // grad m
    GradM2,       // (grad m)^2
    MGradM,       // m grad m
    GradM3,       // (grad m)^3
    M2GradMLapM,  // m^2 (grad m) (lap m)
};

struct FieldOperatorInfo {
    FieldOperator op;
    const char *name;
    int m_power;
    int gradients;
    bool total_derivative;
};

const FieldOperatorInfo &field_operator_info(FieldOperator op);
const std::vector<FieldOperatorInfo> &field_operator_vocabulary();
std::string field_operator_name(FieldOperator op);

/// Power of 1/t from m ~ t^-1/4 and grad ~ t^-1/2.
Rational scaling_exponent(FieldOperator op);

struct Classification {
    /// 1..9 for the symmetric classes; nullopt for operators with vanishing symmetrization.
    std::optional<int> class_id;
    bool exponential = false;
    int r_parity = 1;
    std::optional<int> il_parity;
    FieldOperator leading = FieldOperator::None;
    OperatorSum symmetrized;
};

/// Symmetrization, pi-x parity, link-inversion parity, and the
/// infinite-temperature constraint on pure powers of m. Throws on the identity string.
Classification classify(const PauliString &op);

enum class Verdict { ExactZero, Exponential, PowerLaw };
std::string verdict_name(Verdict v);

struct DecayPrediction {
    Verdict verdict = Verdict::Exponential;
    FieldOperator leading = FieldOperator::None;
    Rational exponent;  // PowerLaw only
    std::optional<int> class_id;
    /// True whenever the expectation value must vanish at every time step, including
    /// exponential operators that a symmetry of the state removes exactly.
    bool identically_zero = false;
};

/// Symmetry of an initial state shared with the circuit, as it acts on observables.
/// Site map: i -> center - i when `reflect`, identity otherwise. Letter map: pi rotation
/// about x if `rx`, then `rz_quarter_turns` applications of rz_quarter.
struct StateSymmetry {
    bool rx = false;
    int rz_quarter_turns = 0;
    bool reflect = false;
    int center = 0;
};

struct StateSymmetrySet {
    InitialStateId state;
    /// Continuous rotations about z leave the state invariant.
    bool u1 = false;
    /// Translation period of the state jointly with the circuit.
    int period = 2;
    std::vector<StateSymmetry> elements;
    /// Field-level view: which of (R_pi_x, I_L) enter each symmetry. Rotations about z
    /// act trivially on symmetrized operators.
    std::vector<std::pair<bool, bool>> field_constraints;
};

const StateSymmetrySet &state_symmetries(InitialStateId state);

/// Image of a string under a state symmetry, as a signed string.
OperatorSum apply_state_symmetry(const StateSymmetry &sym, const PauliString &op);

/// True if some symmetry of the state maps the string (placed where it is) to minus
/// itself, modulo the state's translation period.
bool vanishes_by_state_symmetry(const PauliString &op, InitialStateId state);

/// State-dependent verdict on top of classify(): symmetry-forced zeros, total-derivative
/// removal, and the extra power of 1/t when the state's initial correlations already match
/// infinite temperature (read from the measured profile).
DecayPrediction predict_decay(const PauliString &op, const StateProfile &profile);
DecayPrediction predict_decay(const PauliString &op, InitialStateId state);

/// Cached measure_state_profile for each state.
const StateProfile &cached_state_profile(InitialStateId state);

struct TableRow {
    PauliString op;
    Classification classification;
    std::array<DecayPrediction, 3> per_state;
};

struct ClassificationTable {
    std::vector<TableRow> rows;  // enumerate_range4 order
    /// class_members[c] lists the names of class c (1..9); index 0 is unused.
    std::array<std::vector<std::string>, 10> class_members;
    int exponential_count = 0;
};

ClassificationTable build_table(int window_offset = 0);

}  // namespace ft

#endif
