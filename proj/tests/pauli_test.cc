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

#include "floquet_tails/pauli.h"

#include "gtest/gtest.h"

#include "oracle.h"

using namespace ft;

namespace {

PauliString P(const char *name, int offset = 0) {
    return PauliString::from_name(name, offset);
}

}  // namespace

TEST(dyadic, arithmetic_is_exact) {
    auto half = Dyadic::ratio(1, 1);
    EXPECT_EQ(half + half, Dyadic(1));
    EXPECT_EQ(Dyadic::ratio(3, 3) * Dyadic(8), Dyadic(3));
    EXPECT_EQ(Dyadic::ratio(2, 2), Dyadic::ratio(1, 1));
    EXPECT_TRUE((half - half).is_zero());
    EXPECT_DOUBLE_EQ(Dyadic::ratio(-3, 3).to_double(), -0.375);
}

TEST(pauli_string, names_round_trip) {
    auto p = P("ZZ1Z", 5);
    EXPECT_EQ(p.name(), "ZZ1Z");
    EXPECT_EQ(p.offset, 5);
    EXPECT_EQ(p.count(PauliLetter::Z), 3);
    EXPECT_EQ(p.at_site(7), PauliLetter::I);
    EXPECT_EQ(p.at_site(8), PauliLetter::Z);
    auto t = P("1XY1", 2).trimmed();
    EXPECT_EQ(t.name(), "XY");
    EXPECT_EQ(t.offset, 3);
}

TEST(enumerate, order_and_size) {
    auto ops = enumerate_range4(0);
    ASSERT_EQ(ops.size(), 255u);
    EXPECT_EQ(ops.front().name(), "111X");
    EXPECT_EQ(ops[1].name(), "111Y");
    EXPECT_EQ(ops[2].name(), "111Z");
    EXPECT_EQ(ops[3].name(), "11X1");
    EXPECT_EQ(ops.back().name(), "ZZZZ");
    for (int i = 0; i < 255; i++) {
        EXPECT_EQ(window_index(ops[i]), i);
        EXPECT_FALSE(ops[i].is_identity());
    }
    for (const auto &op : enumerate_range4(3)) {
        EXPECT_EQ(op.offset, 3);
    }
}

TEST(symmetrize, examples) {
    EXPECT_EQ(symmetrize(P("Z1")), OperatorSum(P("Z1")));
    EXPECT_TRUE(symmetrize(P("X1")).is_zero());
    EXPECT_TRUE(symmetrize(P("XZ")).is_zero());
    OperatorSum xx;
    xx.add(P("XX"), Dyadic::ratio(1, 1));
    xx.add(P("YY"), Dyadic::ratio(1, 1));
    EXPECT_EQ(symmetrize(P("XX")), xx);
    EXPECT_EQ(symmetrize(P("YY")), xx);
    OperatorSum xy;
    xy.add(P("XY"), Dyadic::ratio(1, 1));
    xy.add(P("YX"), Dyadic::ratio(-1, 1));
    EXPECT_EQ(symmetrize(P("XY")), xy);
    EXPECT_EQ(symmetrize(P("YX")), -xy);
}

TEST(symmetrize, zero_exactly_for_odd_charge) {
    int zeros = 0;
    for (const auto &op : enumerate_range4(0)) {
        int flips = op.count(PauliLetter::X) + op.count(PauliLetter::Y);
        bool zero = symmetrize(op).is_zero();
        EXPECT_EQ(zero, flips % 2 == 1) << op.name();
        zeros += zero;
    }
    EXPECT_EQ(zeros, 128);
}

TEST(symmetrize, idempotent) {
    for (const auto &op : enumerate_range4(0)) {
        auto s = symmetrize(op);
        EXPECT_EQ(symmetrize(s), s) << op.name();
    }
}

TEST(symmetrize, matches_charge_projection_oracle) {
    double worst = 0;
    for (const auto &op : enumerate_range4(0)) {
        auto projected = oracle::charge_projection(oracle::string_matrix(op, 4));
        auto algebraic = oracle::sum_matrix(symmetrize(op), 4);
        worst = std::max(worst, (projected - algebraic).cwiseAbs().maxCoeff());
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(parity, rpx_examples) {
    EXPECT_EQ(rpx_parity(P("Z")), -1);
    EXPECT_EQ(rpx_parity(P("ZZ")), 1);
    EXPECT_EQ(rpx_parity(P("XX")), 1);
    EXPECT_EQ(rpx_parity(P("XY")), -1);
    EXPECT_EQ(rpx_parity(P("X")), 1);
}

TEST(parity, rpx_matches_rotation) {
    for (const auto &op : enumerate_range4(0)) {
        auto img = rx_half(OperatorSum(op));
        EXPECT_EQ(img, OperatorSum(op).scaled(rpx_parity(op))) << op.name();
    }
}

TEST(link_inversion, examples) {
    EXPECT_EQ(link_invert(OperatorSum(P("XX11"))), OperatorSum(P("11XX")));
    EXPECT_EQ(link_invert(OperatorSum(P("Z1Z1"))), OperatorSum(P("1Z1Z")));
    EXPECT_EQ(link_invert(OperatorSum(P("XY11"), 1), 0), OperatorSum(P("11YX")));
    EXPECT_EQ(il_parity(symmetrize(P("XY11"))), std::nullopt);
    EXPECT_EQ(il_parity(symmetrize(P("1XY1"))), -1);
    EXPECT_EQ(il_parity(symmetrize(P("X11X"))), 1);
    EXPECT_EQ(il_parity(OperatorSum(P("Z1Z1"))), std::nullopt);
}

TEST(link_inversion, involution) {
    for (int w : {0, 3}) {
        for (const auto &op : enumerate_range4(w)) {
            OperatorSum s(op);
            EXPECT_EQ(link_invert(link_invert(s, w), w), s);
        }
    }
}

TEST(link_inversion, modulo_translation) {
    EXPECT_EQ(il_parity_mod_translation(OperatorSum(P("ZZ11")), 2), 1);
    EXPECT_EQ(il_parity_mod_translation(OperatorSum(P("Z1Z1")), 2), std::nullopt);
    EXPECT_EQ(il_parity_mod_translation(symmetrize(P("XY11")), 2), -1);
    EXPECT_EQ(il_parity_mod_translation(symmetrize(P("X1Y1")), 2), std::nullopt);
}

TEST(rotations, rz_quarter_examples) {
    EXPECT_EQ(rz_quarter(OperatorSum(P("X"))), OperatorSum(P("Y")));
    EXPECT_EQ(rz_quarter(OperatorSum(P("Y"))), -OperatorSum(P("X")));
    EXPECT_EQ(rz_quarter(OperatorSum(P("Z"))), OperatorSum(P("Z")));
    auto xx = symmetrize(P("XX"));
    EXPECT_EQ(rz_quarter(xx), xx);
    auto xy = symmetrize(P("XY"));
    EXPECT_EQ(rz_quarter(xy), xy);
    auto x = OperatorSum(P("XZY1"));
    EXPECT_EQ(rz_quarter(rz_quarter(rz_quarter(rz_quarter(x)))), x);
}

TEST(rotations, rz_quarter_matches_conjugation) {
    // U = exp(i pi/4 sum Z) acting as U^dag A U gives X -> Y, Y -> -X.
    const int n = 4;
    oracle::Matrix mz = oracle::Matrix::Zero(16, 16);
    for (int k = 0; k < n; k++) {
        PauliString z;
        z.offset = k;
        z.letters = {PauliLetter::Z};
        mz += oracle::string_matrix(z, n);
    }
    oracle::Matrix u = oracle::exp_i_hermitian(std::numbers::pi / 4 * mz);
    for (const auto &op : enumerate_range4(0)) {
        oracle::Matrix lhs = u.adjoint() * oracle::string_matrix(op, n) * u;
        oracle::Matrix rhs = oracle::sum_matrix(rz_quarter(OperatorSum(op)), n);
        EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12) << op.name();
    }
}

TEST(reflection, sites_and_letters) {
    auto r = reflect_sites(OperatorSum(P("XYZ", 0)), 3);
    EXPECT_EQ(r, OperatorSum(P("ZYX", 1)));
    EXPECT_EQ(canonical_translation(OperatorSum(P("ZZ", 5)), 2), OperatorSum(P("ZZ", 1)));
}
