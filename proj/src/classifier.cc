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

#include "floquet_tails/classifier.h"

#include <numeric>
#include <stdexcept>

namespace ft {

Rational Rational::make(int num, int den) {
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    int g = std::gcd(num, den);
    if (g == 0) {
        g = 1;
    }
    return {num / g, den / g};
}

Rational Rational::operator+(const Rational &o) const {
    return make(num * o.den + o.num * den, den * o.den);
}

std::string Rational::str() const {
    if (den == 1) {
        return std::to_string(num);
    }
    return std::to_string(num) + "/" + std::to_string(den);
}

const std::vector<FieldOperatorInfo> &field_operator_vocabulary() {
    static const std::vector<FieldOperatorInfo> vocab = {
        {FieldOperator::M, "m", 1, 0, false},
        {FieldOperator::M2, "m^2", 2, 0, false},
        {FieldOperator::M3, "m^3", 3, 0, false},
        {FieldOperator::M4, "m^4", 4, 0, false},
        {FieldOperator::GradM, "grad m", 1, 1, true},
        {FieldOperator::GradM2, "(grad m)^2", 2, 2, false},
        {FieldOperator::MGradM, "m grad m", 2, 1, true},
        {FieldOperator::GradM3, "(grad m)^3", 3, 3, false},
        {FieldOperator::M2GradMLapM, "m^2 grad m lap m", 4, 3, false},
    };
    return vocab;
}

const FieldOperatorInfo &field_operator_info(FieldOperator op) {
    static const FieldOperatorInfo none{FieldOperator::None, "-", 0, 0, false};
    for (const auto &info : field_operator_vocabulary()) {
        if (info.op == op) {
            return info;
        }
    }
    return none;
}

std::string field_operator_name(FieldOperator op) {
    return field_operator_info(op).name;
}

Rational scaling_exponent(FieldOperator op) {
    const auto &info = field_operator_info(op);
    return Rational::make(info.m_power + 2 * info.gradients, 4);
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ExactZero:
            return "zero";
        case Verdict::Exponential:
            return "exponential";
        case Verdict::PowerLaw:
            return "power";
    }
    return "?";
}

namespace {

bool is_pure_z(const PauliString &op) {
    return op.count(PauliLetter::X) == 0 && op.count(PauliLetter::Y) == 0;
}

bool parity_matches(int count, int parity) {
    return (count % 2 == 0) == (parity == 1);
}

FieldOperator pure_power(int n) {
    switch (n) {
        case 1:
            return FieldOperator::M;
        case 2:
            return FieldOperator::M2;
        case 3:
            return FieldOperator::M3;
        case 4:
            return FieldOperator::M4;
        default:
            return FieldOperator::None;
    }
}

// Lowest power-counting candidate satisfying every filter; ties go to vocabulary order.
template <typename Pred>
FieldOperator lowest_candidate(Pred allowed) {
    FieldOperator best = FieldOperator::None;
    Rational best_exp;
    for (const auto &info : field_operator_vocabulary()) {
        if (!allowed(info)) {
            continue;
        }
        Rational e = scaling_exponent(info.op);
        if (best == FieldOperator::None || e < best_exp) {
            best = info.op;
            best_exp = e;
        }
    }
    return best;
}

}  // namespace

Classification classify(const PauliString &op) {
    if (op.is_identity()) {
        throw std::invalid_argument("classify: the identity string has no decay class");
    }
    Classification c;
    c.symmetrized = symmetrize(op);
    c.r_parity = rpx_parity(op);
    if (c.symmetrized.is_zero()) {
        c.exponential = true;
        return c;
    }
    c.il_parity = il_parity_mod_translation(c.symmetrized, 2);
    // Even parity is read off the string pattern itself: AABB and ABAB strings stay "-"
    // even though their symmetrized sums happen to be reflection-even.
    if (c.il_parity == 1 && il_parity_mod_translation(OperatorSum(op), 2) != 1) {
        c.il_parity.reset();
    }

    if (is_pure_z(op)) {
        int nz = op.count(PauliLetter::Z);
        c.leading = pure_power(nz);
        switch (nz) {
            case 1:
                c.class_id = 1;
                break;
            case 2:
                c.class_id = c.il_parity == 1 ? 2 : 3;
                break;
            case 3:
                c.class_id = 4;
                break;
            case 4:
                c.class_id = 5;
                break;
        }
        return c;
    }

    // Strings with an X or Y have no pure m^n component at infinite temperature.
    c.leading = lowest_candidate([&](const FieldOperatorInfo &info) {
        return info.gradients > 0 && parity_matches(info.m_power, c.r_parity) &&
               (!c.il_parity || parity_matches(info.gradients, *c.il_parity));
    });
    if (c.r_parity == 1 && c.il_parity == 1) {
        c.class_id = 6;
    } else if (c.r_parity == 1 && !c.il_parity) {
        c.class_id = 7;
    } else if (c.r_parity == -1 && c.il_parity == -1) {
        c.class_id = 8;
    } else if (c.r_parity == -1 && !c.il_parity) {
        c.class_id = 9;
    }
    return c;
}

const StateSymmetrySet &state_symmetries(InitialStateId state) {
    // Letter maps act on observables: <A> = <image of A> in the state.
    static const StateSymmetrySet staggered{
        InitialStateId::Staggered, true, 2, {{true, 0, true, 3}}, {{true, true}}};
    static const StateSymmetrySet xpol{InitialStateId::XPolarized,
                                       false,
                                       2,
                                       {{true, 0, false, 0}, {false, 0, true, 3}, {true, 0, true, 3}},
                                       {{true, false}, {false, true}}};
    // The +x,+y,-x,-y pattern is fixed by rx, a quarter turn about z, and a mirror about
    // the link (0,1); composing with the translation by two sites (which is a half turn
    // about z on this state) moves the mirror to link (2,3).
    static const StateSymmetrySet current{
        InitialStateId::CurrentCarrying, false, 4, {{true, 1, true, 1}, {true, 3, true, 3}}, {{true, true}}};
    switch (state) {
        case InitialStateId::Staggered:
            return staggered;
        case InitialStateId::XPolarized:
            return xpol;
        case InitialStateId::CurrentCarrying:
            return current;
    }
    throw std::invalid_argument("unknown state");
}

OperatorSum apply_state_symmetry(const StateSymmetry &sym, const PauliString &op) {
    OperatorSum s(op);
    if (sym.rx) {
        s = rx_half(s);
    }
    for (int q = 0; q < ((sym.rz_quarter_turns % 4) + 4) % 4; q++) {
        s = rz_quarter(s);
    }
    if (sym.reflect) {
        s = reflect_sites(s, sym.center);
    }
    return s;
}

bool vanishes_by_state_symmetry(const PauliString &op, InitialStateId state) {
    const auto &syms = state_symmetries(state);
    if (syms.u1 && symmetrize(op).is_zero()) {
        return true;
    }
    auto base = canonical_translation(OperatorSum(op), syms.period);
    for (const auto &el : syms.elements) {
        auto image = canonical_translation(apply_state_symmetry(el, op), syms.period);
        if (image == -base) {
            return true;
        }
    }
    return false;
}

const StateProfile &cached_state_profile(InitialStateId state) {
    static const std::array<StateProfile, 3> profiles = {
        measure_state_profile(InitialStateId::Staggered),
        measure_state_profile(InitialStateId::XPolarized),
        measure_state_profile(InitialStateId::CurrentCarrying),
    };
    return profiles[static_cast<int>(state)];
}

DecayPrediction predict_decay(const PauliString &op, InitialStateId state) {
    return predict_decay(op, cached_state_profile(state));
}

DecayPrediction predict_decay(const PauliString &op, const StateProfile &profile) {
    auto c = classify(op);
    const auto &syms = state_symmetries(profile.state);
    DecayPrediction pred;
    pred.class_id = c.class_id;

    if (c.exponential) {
        pred.verdict = Verdict::Exponential;
        pred.identically_zero = vanishes_by_state_symmetry(op, profile.state);
        return pred;
    }

    // A shared symmetry that negates the symmetrized operator forces it to zero.
    for (const auto &[uses_r, uses_il] : syms.field_constraints) {
        if (uses_il && !c.il_parity) {
            continue;
        }
        int parity = (uses_r ? c.r_parity : 1) * (uses_il ? *c.il_parity : 1);
        if (parity == -1) {
            pred.verdict = Verdict::ExactZero;
            pred.identically_zero = true;
            return pred;
        }
    }
    if (vanishes_by_state_symmetry(op, profile.state)) {
        pred.verdict = Verdict::ExactZero;
        pred.identically_zero = true;
        return pred;
    }

    // Total derivatives drop out after projection to zero momentum; the state's
    // symmetries restrict which parities of m and of gradients can survive.
    const bool pure_z = is_pure_z(op);
    const int nz = op.count(PauliLetter::Z);
    pred.leading = lowest_candidate([&](const FieldOperatorInfo &info) {
        if (info.total_derivative || !parity_matches(info.m_power, c.r_parity)) {
            return false;
        }
        if (c.il_parity && !parity_matches(info.gradients, *c.il_parity)) {
            return false;
        }
        if (info.gradients == 0 && (!pure_z || info.m_power != nz)) {
            return false;
        }
        for (const auto &[uses_r, uses_il] : syms.field_constraints) {
            int odd = (uses_r ? info.m_power : 0) + (uses_il ? info.gradients : 0);
            if (odd % 2 != 0) {
                return false;
            }
        }
        return true;
    });
    if (pred.leading == FieldOperator::None) {
        throw std::logic_error("no admissible field operator for " + op.name());
    }

    const auto &info = field_operator_info(pred.leading);
    pred.verdict = Verdict::PowerLaw;
    if (info.m_power % 2 == 0) {
        // Fluctuations already at their infinite-temperature values cancel the
        // leading tail and leave one extra power of 1/t.
        bool matched = info.m_power >= 4 ? (profile.two_point_matches_infinite_temperature &&
                                            profile.four_point_matches_infinite_temperature)
                                         : profile.two_point_matches_infinite_temperature;
        pred.exponent = scaling_exponent(pred.leading) + Rational::make(matched ? 1 : 0, 1);
    } else {
        // Odd powers of m are fed only by the initial odd cumulant, whose lowest allowed
        // momentum power is 3; propagating it over m_power - 1 free momenta gives
        // t^-(gradients + 3 + m_power - 1) / 2.
        pred.exponent = Rational::make(info.gradients + 3 + info.m_power - 1, 2);
    }
    return pred;
}

ClassificationTable build_table(int window_offset) {
    ClassificationTable table;
    for (const auto &op : enumerate_range4(window_offset)) {
        TableRow row;
        row.op = op;
        row.classification = classify(op);
        for (size_t s = 0; s < kAllInitialStates.size(); s++) {
            row.per_state[s] = predict_decay(op, kAllInitialStates[s]);
        }
        if (row.classification.exponential) {
            table.exponential_count++;
        }
        if (row.classification.class_id) {
            table.class_members[*row.classification.class_id].push_back(op.name());
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace ft
