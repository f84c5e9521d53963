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

#include <cmath>

#include "floquet_tails/classifier.h"
#include "gtest/gtest.h"
#include "oracle.h"

using namespace ft;

namespace {

PauliString P(const char *name, int offset = 0) {
    return PauliString::from_name(name, offset);
}

FloquetParams params_for(int n, int steps) {
    FloquetParams p;
    p.num_qubits = n;
    p.steps = steps;
    return p;
}

double max_amplitude_error(const StateVector &s, const oracle::Vector &v) {
    return (oracle::to_vector(s) - v).cwiseAbs().maxCoeff();
}

// 16x16 reduced density matrix of sites 0..3 from a dense vector.
oracle::Matrix dense_window_rdm(const oracle::Vector &psi, int n) {
    oracle::Matrix rho = oracle::Matrix::Zero(16, 16);
    for (size_t rest = 0; rest < (size_t{1} << (n - 4)); rest++) {
        for (size_t a = 0; a < 16; a++) {
            for (size_t b = 0; b < 16; b++) {
                rho(a, b) += psi(a | (rest << 4)) * std::conj(psi(b | (rest << 4)));
            }
        }
    }
    return rho;
}

}  // namespace

TEST(initial_state, single_site_expectations) {
    auto neel = prepare_initial(InitialStateId::Staggered, 8);
    EXPECT_DOUBLE_EQ(expectation(neel, P("Z", 0)).value, 1.0);
    EXPECT_DOUBLE_EQ(expectation(neel, P("Z", 1)).value, -1.0);
    EXPECT_DOUBLE_EQ(staggered_magnetization(neel), 1.0);
    EXPECT_DOUBLE_EQ(neel.total_magnetization(), 0.0);

    auto xpol = prepare_initial(InitialStateId::XPolarized, 8);
    for (int k = 0; k < 8; k++) {
        EXPECT_NEAR(expectation(xpol, P("X", k)).value, 1.0, 1e-14);
    }
    EXPECT_NEAR(spin_current(xpol), 0.0, 1e-14);

    auto cur = prepare_initial(InitialStateId::CurrentCarrying, 8);
    EXPECT_NEAR(expectation(cur, P("X", 0)).value, 1.0, 1e-14);
    EXPECT_NEAR(expectation(cur, P("Y", 1)).value, 1.0, 1e-14);
    EXPECT_NEAR(expectation(cur, P("X", 2)).value, -1.0, 1e-14);
    EXPECT_NEAR(expectation(cur, P("Y", 3)).value, -1.0, 1e-14);
    EXPECT_NEAR(link_current(cur, 0, 1), 1.0, 1e-14);
    EXPECT_NEAR(spin_current(cur), 1.0, 1e-14);
    EXPECT_NEAR(cur.norm_squared(), 1.0, 1e-14);
}

TEST(validation, rejects_bad_sizes) {
    EXPECT_THROW(validate_system_size(7, InitialStateId::Staggered), std::invalid_argument);
    EXPECT_THROW(validate_system_size(2, InitialStateId::Staggered), std::invalid_argument);
    EXPECT_THROW(validate_system_size(6, InitialStateId::CurrentCarrying), std::invalid_argument);
    EXPECT_THROW(validate_system_size(14, InitialStateId::CurrentCarrying), std::invalid_argument);
    EXPECT_THROW(validate_system_size(22, InitialStateId::XPolarized), std::invalid_argument);
    EXPECT_THROW(validate_system_size(32, InitialStateId::XPolarized, true), std::invalid_argument);
    EXPECT_NO_THROW(validate_system_size(6, InitialStateId::XPolarized));
    EXPECT_NO_THROW(validate_system_size(20, InitialStateId::CurrentCarrying));
    EXPECT_THROW(run_evolution(params_for(6, -1), InitialStateId::Staggered), std::invalid_argument);
}

TEST(floquet_step, layers_match_hamiltonian_exponentials) {
    const int n = 6;
    FloquetParams p = params_for(n, 0);
    FloquetStepper stepper(p, n);
    using L = PauliLetter;
    oracle::Matrix zz = oracle::Matrix::Zero(64, 64), zz2 = zz, hop[2] = {zz, zz};
    for (int k = 0; k < n; k++) {
        zz += oracle::string_matrix(oracle::two_site(L::Z, k, L::Z, (k + 1) % n), n);
        zz2 += oracle::string_matrix(oracle::two_site(L::Z, k, L::Z, (k + 2) % n), n);
        hop[k % 2] += oracle::string_matrix(oracle::two_site(L::X, k, L::X, (k + 1) % n), n) +
                      oracle::string_matrix(oracle::two_site(L::Y, k, L::Y, (k + 1) % n), n);
    }
    auto base = prepare_initial(InitialStateId::XPolarized, n);
    // Break the translation symmetry so each layer is tested on a generic vector.
    for (size_t i = 0; i < base.dim(); i++) {
        base[i] *= std::polar(1.0 + 0.01 * i, 0.37 * i);
    }
    auto v0 = oracle::to_vector(base);

    auto s = base;
    stepper.apply_zz_phases(s);
    EXPECT_LE(max_amplitude_error(s, oracle::exp_i_hermitian(p.alpha * zz) * v0), 1e-12);
    s = base;
    stepper.apply_hopping_layer(s, 1);
    EXPECT_LE(max_amplitude_error(s, oracle::exp_i_hermitian(p.beta * hop[1]) * v0), 1e-12);
    s = base;
    stepper.apply_hopping_layer(s, 0);
    EXPECT_LE(max_amplitude_error(s, oracle::exp_i_hermitian(p.beta * hop[0]) * v0), 1e-12);
    s = base;
    stepper.apply_next_nearest_phases(s);
    EXPECT_LE(max_amplitude_error(s, oracle::exp_i_hermitian(p.gamma * zz2) * v0), 1e-12);
}

class DenseEvolution : public ::testing::TestWithParam<std::pair<InitialStateId, int>> {};

TEST_P(DenseEvolution, matches_dense_unitary_for_50_steps) {
    auto [state, n] = GetParam();
    FloquetParams p = params_for(n, 50);
    oracle::Matrix u = oracle::floquet_unitary(p, n);
    auto psi = prepare_initial(state, n);
    oracle::Vector v = oracle::to_vector(psi);
    FloquetStepper stepper(p, n);
    double worst = 0;
    for (int t = 0; t < p.steps; t++) {
        stepper.step(psi);
        v = u * v;
        worst = std::max(worst, max_amplitude_error(psi, v));
    }
    EXPECT_LE(worst, 1e-12);
    EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-12);
}

TEST_P(DenseEvolution, step_helper_matches_stepper) {
    auto [state, n] = GetParam();
    FloquetParams p = params_for(n, 3);
    auto a = prepare_initial(state, n);
    auto b = a;
    FloquetStepper stepper(p, n);
    for (int t = 0; t < 3; t++) {
        stepper.step(a);
        apply_floquet_step(b, p);
    }
    EXPECT_EQ(max_amplitude_error(a, oracle::to_vector(b)), 0.0);
}

INSTANTIATE_TEST_SUITE_P(states, DenseEvolution,
                         ::testing::Values(std::pair{InitialStateId::Staggered, 6},
                                           std::pair{InitialStateId::XPolarized, 6},
                                           std::pair{InitialStateId::CurrentCarrying, 8}));

TEST(measurement, expectation_matches_dense_matrix) {
    const int n = 8;
    auto psi = prepare_initial(InitialStateId::CurrentCarrying, n);
    FloquetStepper stepper(params_for(n, 0), n);
    for (int t = 0; t < 4; t++) {
        stepper.step(psi);
    }
    auto v = oracle::to_vector(psi);
    for (const auto &op : enumerate_range4(2)) {
        std::complex<double> ref = v.dot(oracle::string_matrix(op, n) * v);
        auto e = expectation(psi, op);
        EXPECT_NEAR(e.value, ref.real(), 1e-12) << op.name();
        EXPECT_LE(std::abs(e.imag_residue), 1e-12);
    }
    auto sum = symmetrize(P("XYZX", 1));
    std::complex<double> ref = v.dot(oracle::sum_matrix(sum, n) * v);
    EXPECT_NEAR(expectation(psi, sum).value, ref.real(), 1e-12);
    EXPECT_THROW(expectation(psi, P("ZZZZ", 6)), std::out_of_range);
}

TEST(measurement, window_expectations_match_direct_and_wrap) {
    const int n = 8;
    auto psi = prepare_initial(InitialStateId::XPolarized, n);
    FloquetStepper stepper(params_for(n, 0), n);
    for (int t = 0; t < 5; t++) {
        stepper.step(psi);
    }
    auto v = oracle::to_vector(psi);
    for (int offset : {0, 3, 6, 7}) {
        double imag = 0;
        auto vals = window_expectations(window_density_matrix(psi, offset), &imag);
        auto ops = enumerate_range4(offset);
        for (int j = 0; j < kNumWindowOperators; j++) {
            std::complex<double> ref = v.dot(oracle::string_matrix(ops[j], n) * v);
            EXPECT_NEAR(vals[j], ref.real(), 1e-12) << ops[j].name() << " at " << offset;
        }
        EXPECT_LE(imag, 1e-12);
    }
}

TEST(measurement, currents_and_magnetizations) {
    const int n = 8;
    auto psi = prepare_initial(InitialStateId::CurrentCarrying, n);
    FloquetStepper stepper(params_for(n, 0), n);
    for (int t = 0; t < 3; t++) {
        stepper.step(psi);
    }
    OperatorSum j01(P("XY"));
    j01.add(P("YX"), -1);
    EXPECT_NEAR(link_current(psi, 0, 1), expectation(psi, j01).value, 1e-13);
    double total = 0, stag = 0;
    for (int k = 0; k < n; k++) {
        int k1 = (k + 1) % n;
        total += link_current(psi, k, k1);
        stag += (k % 2 ? -1 : 1) * expectation(psi, P("Z", k)).value;
    }
    EXPECT_NEAR(spin_current(psi), total / n, 1e-13);
    EXPECT_NEAR(staggered_magnetization(psi), stag / n, 1e-13);
}

TEST(run_evolution, records_conserved_quantities) {
    auto rec = run_evolution(params_for(8, 20), InitialStateId::Staggered);
    ASSERT_EQ(rec.times.size(), 21u);
    ASSERT_EQ(rec.values.size(), 21u);
    EXPECT_EQ(rec.times.front(), 0);
    for (size_t t = 0; t < rec.times.size(); t++) {
        EXPECT_NEAR(rec.norm[t], 1.0, 1e-12);
        EXPECT_NEAR(rec.magnetization[t], 0.0, 1e-12);
    }
    EXPECT_LE(rec.max_imag_residue, 1e-12);
    // Z at site 0 of the window starts at +1.
    EXPECT_DOUBLE_EQ(rec.column(window_index(P("Z111")))[0], 1.0);
}

TEST(run_evolution, orbit_average_is_mean_over_placements) {
    auto p = params_for(8, 6);
    auto avg = run_evolution(p, InitialStateId::Staggered, 0, true);
    auto r0 = run_evolution(p, InitialStateId::Staggered, 0);
    auto r1 = run_evolution(p, InitialStateId::Staggered, 1);
    for (size_t t = 0; t < avg.values.size(); t++) {
        for (int j = 0; j < kNumWindowOperators; j++) {
            EXPECT_NEAR(avg.values[t][j], 0.5 * (r0.values[t][j] + r1.values[t][j]), 1e-14);
        }
    }
}

TEST(sigma_delta, matches_frobenius_distance_to_charge_blocks) {
    const int n = 6;
    auto p = params_for(n, 10);
    auto rec = run_evolution(p, InitialStateId::XPolarized);
    auto sd = sigma_delta(rec);
    ASSERT_EQ(sd.size(), 11u);
    oracle::Matrix u = oracle::floquet_unitary(p, n);
    oracle::Vector v = oracle::to_vector(prepare_initial(InitialStateId::XPolarized, n));
    for (int t = 0; t <= p.steps; t++) {
        oracle::Matrix rho = dense_window_rdm(v, n);
        double ref = (rho - oracle::charge_projection(rho)).norm();
        EXPECT_NEAR(sd.y[t], ref, 1e-12) << "t=" << t;
        v = u * v;
    }
    // The x-polarized product state is far from any charge sector at t = 0.
    EXPECT_GT(sd.y[0], 0.5);
    auto neel = sigma_delta(run_evolution(p, InitialStateId::Staggered));
    for (double y : neel.y) {
        EXPECT_LE(y, 1e-13);
    }
}

TEST(state_profile, infinite_temperature_matching) {
    auto a = measure_state_profile(InitialStateId::Staggered);
    EXPECT_FALSE(a.two_point_matches_infinite_temperature);
    EXPECT_FALSE(a.four_point_matches_infinite_temperature);
    auto b = measure_state_profile(InitialStateId::XPolarized);
    EXPECT_TRUE(b.two_point_matches_infinite_temperature);
    EXPECT_TRUE(b.four_point_matches_infinite_temperature);
    auto c = measure_state_profile(InitialStateId::CurrentCarrying);
    EXPECT_TRUE(c.two_point_matches_infinite_temperature);
    EXPECT_TRUE(c.four_point_matches_infinite_temperature);
}

class StateSymmetryTest : public ::testing::TestWithParam<InitialStateId> {};

TEST_P(StateSymmetryTest, images_have_equal_expectations) {
    const InitialStateId state = GetParam();
    const int n = 12;
    const auto &syms = state_symmetries(state);
    auto psi = prepare_initial(state, n);
    FloquetStepper stepper(params_for(n, 0), n);
    double worst = 0;
    for (int t = 0; t <= 5; t++) {
        if (t > 0) {
            stepper.step(psi);
        }
        for (const auto &op : enumerate_range4(0)) {
            double a = expectation(psi, op).value;
            for (const auto &el : syms.elements) {
                auto img = canonical_translation(apply_state_symmetry(el, op), syms.period).shifted(4);
                worst = std::max(worst, std::abs(a - expectation(psi, img).value));
            }
        }
    }
    EXPECT_LE(worst, 1e-12);
}

TEST_P(StateSymmetryTest, zero_predictions_hold_dynamically) {
    const InitialStateId state = GetParam();
    auto rec = run_evolution(params_for(8, 30), state);
    auto ops = enumerate_range4(0);
    int zeros = 0;
    for (int j = 0; j < kNumWindowOperators; j++) {
        auto pred = predict_decay(ops[j], state);
        if (!pred.identically_zero) {
            continue;
        }
        zeros++;
        for (const auto &row : rec.values) {
            EXPECT_LE(std::abs(row[j]), 1e-12) << ops[j].name();
        }
    }
    EXPECT_GT(zeros, state == InitialStateId::CurrentCarrying ? -1 : 127);
}

INSTANTIATE_TEST_SUITE_P(states, StateSymmetryTest,
                         ::testing::Values(InitialStateId::Staggered, InitialStateId::XPolarized,
                                           InitialStateId::CurrentCarrying));
