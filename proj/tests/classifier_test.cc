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

#include <algorithm>

#include "expected_table.h"
#include "gtest/gtest.h"

using namespace ft;

namespace {

PauliString P(const char *name, int offset = 0) {
    return PauliString::from_name(name, offset);
}

const ClassificationTable &table() {
    static const ClassificationTable t = build_table(0);
    return t;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}


}  // namespace

TEST(rational, reduces_and_orders) {
    EXPECT_EQ(Rational::make(2, 4), Rational::make(1, 2));
    EXPECT_EQ(Rational::make(3, -6).str(), "-1/2");
    EXPECT_EQ((Rational::make(1, 2) + Rational::make(3, 2)).str(), "2");
    EXPECT_LT(Rational::make(1, 2), Rational::make(3, 4));
    EXPECT_THROW(Rational::make(1, 0), std::invalid_argument);
}

TEST(power_counting, scaling_exponents) {
    EXPECT_EQ(scaling_exponent(FieldOperator::M), Rational::make(1, 4));
    EXPECT_EQ(scaling_exponent(FieldOperator::M2), Rational::make(1, 2));
    EXPECT_EQ(scaling_exponent(FieldOperator::M4), Rational::make(1, 1));
    EXPECT_EQ(scaling_exponent(FieldOperator::GradM), Rational::make(3, 4));
    EXPECT_EQ(scaling_exponent(FieldOperator::GradM2), Rational::make(3, 2));
    EXPECT_EQ(scaling_exponent(FieldOperator::GradM3), Rational::make(9, 4));
}

TEST(classify, identity_throws) {
    EXPECT_THROW(classify(P("1111")), std::invalid_argument);
}

TEST(classify, class_sizes) {
    const auto &t = table();
    EXPECT_EQ(t.rows.size(), 255u);
    EXPECT_EQ(t.exponential_count, 128);
    size_t total = 0;
    for (int c = 1; c <= 9; c++) {
        EXPECT_EQ(t.class_members[c].size(), size_t(expected::table_one()[c].size)) << "class " << c;
        total += t.class_members[c].size();
    }
    EXPECT_EQ(total, 127u);
}

TEST(classify, pure_z_members) {
    const auto &t = table();
    using V = std::vector<std::string>;
    EXPECT_EQ(sorted(t.class_members[1]), sorted(V{"Z111", "1Z11", "11Z1", "111Z"}));
    EXPECT_EQ(sorted(t.class_members[2]), sorted(V{"ZZ11", "1ZZ1", "11ZZ", "Z11Z"}));
    EXPECT_EQ(sorted(t.class_members[3]), sorted(V{"Z1Z1", "1Z1Z"}));
    EXPECT_EQ(sorted(t.class_members[4]), sorted(V{"ZZZ1", "1ZZZ", "ZZ1Z", "Z1ZZ"}));
    EXPECT_EQ(t.class_members[5], V{"ZZZZ"});
}

TEST(classify, parities_and_leading_operators) {
    auto z1z2 = classify(P("ZZ"));
    EXPECT_EQ(z1z2.class_id, 2);
    EXPECT_EQ(z1z2.r_parity, 1);
    EXPECT_EQ(z1z2.il_parity, 1);
    EXPECT_EQ(z1z2.leading, FieldOperator::M2);

    auto xx = classify(P("XX11"));
    EXPECT_EQ(xx.class_id, 6);
    EXPECT_EQ(xx.leading, FieldOperator::GradM2);

    auto xy = classify(P("1XY1"));
    EXPECT_EQ(xy.class_id, 8);
    EXPECT_EQ(xy.il_parity, -1);
    EXPECT_EQ(xy.leading, FieldOperator::GradM);

    auto xz = classify(P("XZ"));
    EXPECT_TRUE(xz.exponential);
    EXPECT_FALSE(xz.class_id.has_value());

    // Symmetrized sums that are mirror-even only through the other letter pattern stay
    // without a definite link parity.
    for (const char *name : {"XXYY", "YYXX", "XYXY", "YXYX"}) {
        auto c = classify(P(name));
        EXPECT_EQ(c.class_id, 7) << name;
        EXPECT_FALSE(c.il_parity.has_value()) << name;
        EXPECT_EQ(c.leading, FieldOperator::MGradM) << name;
    }
}

TEST(predict, table_rows_per_state) {
    const auto &ref = expected::table_one();
    for (const auto &row : table().rows) {
        const auto &c = row.classification;
        if (c.exponential) {
            for (const auto &pred : row.per_state) {
                EXPECT_EQ(pred.verdict, Verdict::Exponential) << row.op.name();
            }
            continue;
        }
        const auto &want = ref[*c.class_id];
        EXPECT_EQ(c.r_parity, want.r) << row.op.name();
        EXPECT_EQ(c.il_parity.value_or(0), want.il) << row.op.name();
        EXPECT_EQ(c.leading, want.leading) << row.op.name();
        for (int s = 0; s < 3; s++) {
            const auto &pred = row.per_state[s];
            EXPECT_EQ(pred.class_id, c.class_id);
            if (want.zero[s]) {
                EXPECT_EQ(pred.verdict, Verdict::ExactZero) << row.op.name() << " state " << s;
                EXPECT_TRUE(pred.identically_zero);
                continue;
            }
            ASSERT_EQ(pred.verdict, Verdict::PowerLaw) << row.op.name() << " state " << s;
            EXPECT_EQ(pred.leading, want.state_leading[s]) << row.op.name() << " state " << s;
            EXPECT_EQ(pred.exponent, want.exponent[s]) << row.op.name() << " state " << s;
        }
    }
}

TEST(predict, identically_zero_counts) {
    int zero[3] = {0, 0, 0};
    int exp_zero[3] = {0, 0, 0};
    for (const auto &row : table().rows) {
        for (int s = 0; s < 3; s++) {
            zero[s] += row.per_state[s].identically_zero;
            exp_zero[s] += row.per_state[s].identically_zero && row.classification.exponential;
        }
    }
    // The Neel state lies in one charge sector; the x-polarized state is even under the
    // pi-x rotation, which removes every odd-R string.
    EXPECT_EQ(exp_zero[0], 128);
    EXPECT_EQ(exp_zero[1], 64);
    EXPECT_EQ(exp_zero[2], 0);
    EXPECT_EQ(zero[0], 128);
    EXPECT_EQ(zero[1], 64 + 4 + 4 + 12 + 44);
    EXPECT_EQ(zero[2], 0);
}

TEST(predict, matched_profile_adds_one_power) {
    StateProfile unmatched{InitialStateId::XPolarized, false, false};
    StateProfile matched{InitialStateId::XPolarized, true, true};
    EXPECT_EQ(predict_decay(P("ZZ"), unmatched).exponent, Rational::make(1, 2));
    EXPECT_EQ(predict_decay(P("ZZ"), matched).exponent, Rational::make(3, 2));
    EXPECT_EQ(predict_decay(P("ZZZZ"), unmatched).exponent, Rational::make(1, 1));
    StateProfile two_only{InitialStateId::XPolarized, true, false};
    EXPECT_EQ(predict_decay(P("ZZZZ"), two_only).exponent, Rational::make(1, 1));
}

TEST(state_symmetry, images_of_examples) {
    const auto &neel = state_symmetries(InitialStateId::Staggered);
    EXPECT_TRUE(neel.u1);
    EXPECT_EQ(neel.period, 2);
    // rx and the mirror about link (1,2) send Z on site 0 to -Z on site 3.
    EXPECT_EQ(apply_state_symmetry(neel.elements[0], P("Z")), -OperatorSum(P("Z", 3)));
    EXPECT_TRUE(vanishes_by_state_symmetry(P("XZ"), InitialStateId::Staggered));
    EXPECT_FALSE(vanishes_by_state_symmetry(P("Z"), InitialStateId::Staggered));
    EXPECT_TRUE(vanishes_by_state_symmetry(P("Z"), InitialStateId::XPolarized));
    EXPECT_FALSE(vanishes_by_state_symmetry(P("X"), InitialStateId::XPolarized));
    EXPECT_EQ(state_symmetries(InitialStateId::CurrentCarrying).period, 4);
}

TEST(names, verdicts_and_fields) {
    EXPECT_EQ(verdict_name(Verdict::ExactZero), "zero");
    EXPECT_EQ(verdict_name(Verdict::Exponential), "exponential");
    EXPECT_EQ(verdict_name(Verdict::PowerLaw), "power");
    EXPECT_EQ(field_operator_name(FieldOperator::GradM2), "(grad m)^2");
    EXPECT_EQ(field_operator_name(FieldOperator::None), "-");
}
