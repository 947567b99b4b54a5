// Copyright 2026 The Biphoton Authors
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

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "biphoton/errors.hpp"
#include "biphoton/optics.hpp"
#include "oracles.hpp"

using namespace biphoton;

namespace {

double max_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    const auto diff = a + b.scaled(-1.0);
    for (const auto& [s, amp] : diff.terms()) worst = std::max(worst, std::abs(amp));
    return worst;
}

}  // namespace

TEST_CASE("beam splitter matrix") {
    const auto bs = beamsplitter_5050();
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(bs(0, 0) - Complex{s, 0}) < 1e-15);
    CHECK(std::abs(bs(0, 1) - Complex{0, s}) < 1e-15);
    CHECK(std::abs(bs(1, 0) - Complex{0, s}) < 1e-15);
    CHECK(std::abs(bs(1, 1) - Complex{s, 0}) < 1e-15);
    CHECK(bs.is_unitary());
}

TEST_CASE("element unitarity over a phase grid") {
    for (int i = 0; i <= 64; i++) {
        const double phi = -7.0 + 14.0 * i / 64.0;
        CHECK(phase_retarder(phi).is_unitary());
        CHECK(arm_phases(phi, 0.3 * phi).is_unitary());
        CHECK(mz_transfer(phi, -phi).is_unitary());
    }
}

TEST_CASE("mz_transfer equals explicit product") {
    const double p2 = 0.7, p3 = -1.9;
    Eigen::Matrix2cd bs;
    const double s = 1.0 / std::sqrt(2.0);
    bs << s, Complex{0, s}, Complex{0, s}, s;
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    d(0, 0) = std::polar(1.0, p2);
    d(1, 1) = std::polar(1.0, p3);
    const Eigen::Matrix2cd expected = bs * d * bs;
    CHECK((mz_transfer(p2, p3).matrix() - expected).norm() < 1e-14);
}

TEST_CASE("compose matches sequential evolution") {
    std::mt19937_64 rng(3);
    const auto a = ModeUnitary(testing::random_unitary(3, rng));
    const auto b = ModeUnitary(testing::random_unitary(3, rng));
    const auto psi = testing::random_state(3, 3, 5, rng);
    const auto seq = lift_and_evolve(lift_and_evolve(psi, b), a);
    const auto once = lift_and_evolve(psi, compose(a, b));
    CHECK(max_diff(seq, once) < 1e-12);
    CHECK_THROWS_AS(compose(beamsplitter_5050(Mode{0}, Mode{1}), beamsplitter_5050(Mode{1}, Mode{2})), ConfigError);
}

TEST_CASE("lift_and_evolve agrees with permanent oracle") {
    std::mt19937_64 rng(17);
    for (int modes = 2; modes <= 4; modes++) {
        for (int trial = 0; trial < 6; trial++) {
            const Eigen::MatrixXcd u = testing::random_unitary(modes, rng);
            const auto psi = testing::random_state(modes, 4, 4, rng);
            const auto fast = lift_and_evolve(psi, ModeUnitary(u));
            const auto slow = testing::permanent_evolve(psi, u);
            CHECK(max_diff(fast, slow) < 1e-12);
            CHECK(std::abs(fast.norm_squared() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("unitary on a subset of modes") {
    std::mt19937_64 rng(23);
    const Eigen::MatrixXcd u2 = testing::random_unitary(2, rng);
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(3, 3);
    // Acting modes {2, 0}: matrix row/column 0 is mode 2, row/column 1 is mode 0.
    full(2, 2) = u2(0, 0);
    full(2, 0) = u2(0, 1);
    full(0, 2) = u2(1, 0);
    full(0, 0) = u2(1, 1);
    const auto psi = testing::random_state(3, 3, 6, rng);
    const auto fast = lift_and_evolve(psi, ModeUnitary(u2, {2, 0}));
    CHECK(max_diff(fast, testing::permanent_evolve(psi, full)) < 1e-12);

    CHECK_THROWS_AS(ModeUnitary(u2, {1, 1}), ConfigError);
    CHECK_THROWS_AS(ModeUnitary(u2, {0}), ConfigError);
    CHECK_THROWS_AS(lift_and_evolve(StateVector::vacuum(2), ModeUnitary(u2, {1, 2})), ConfigError);
}

TEST_CASE("Hong-Ou-Mandel bunching at the beam splitter") {
    const auto out = lift_and_evolve(StateVector::basis({1, 1}), beamsplitter_5050());
    CHECK(std::abs(out.amplitude({1, 1})) < 1e-15);
    CHECK(std::norm(out.amplitude({2, 0})) == doctest::Approx(0.5));
    CHECK(std::norm(out.amplitude({0, 2})) == doctest::Approx(0.5));
}

TEST_CASE("only the arm phase difference matters") {
    const auto psi = StateVector::basis({1, 1});
    for (double common : {0.4, 2.0, -3.1}) {
        const auto a = lift_and_evolve(psi, mz_transfer(1.1 + common, 0.2 + common));
        const auto b = lift_and_evolve(psi, mz_transfer(1.1, 0.2));
        for (const auto& s : enumerate_basis(2, 2)) {
            CHECK(std::norm(a.amplitude(s)) == doctest::Approx(std::norm(b.amplitude(s))).epsilon(1e-12));
        }
    }
}

TEST_CASE("basis cap during evolution") {
    std::mt19937_64 rng(1);
    const auto u = ModeUnitary(testing::random_unitary(4, rng));
    CHECK_THROWS_AS(lift_and_evolve(StateVector::basis({2, 2, 0, 0}), u, 5), BasisOverflow);
}

TEST_CASE("path phase") {
    CHECK(PathPhase{430.8, 861.6}.phase() == doctest::Approx(std::numbers::pi));
    CHECK(PathPhase{-861.6, 861.6}.phase() == doctest::Approx(-2.0 * std::numbers::pi));
}
