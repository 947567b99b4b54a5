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
#include <random>

#include <doctest.h>

#include "biphoton/errors.hpp"
#include "biphoton/fock.hpp"
#include "oracles.hpp"

using namespace biphoton;

namespace {

StateVector make(std::size_t modes, std::initializer_list<std::pair<FockState, Complex>> terms) {
    StateVector::Terms t;
    for (const auto& [s, a] : terms) t[s] = a;
    return StateVector(modes, std::move(t));
}

bool close(const StateVector& a, const StateVector& b, double tol) {
    auto diff = a + b.scaled(-1.0);
    for (const auto& [s, amp] : diff.terms()) {
        if (std::abs(amp) > tol) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("enumerate_basis small cases") {
    CHECK(enumerate_basis(2, 0) == std::vector<FockState>{{0, 0}});
    CHECK(enumerate_basis(2, 2) == std::vector<FockState>{{0, 2}, {1, 1}, {2, 0}});
    // 21 = C(7, 5), frozen from brute-force enumeration.
    CHECK(testing::brute_force_basis(6, 2).size() == 21);
    CHECK(enumerate_basis(6, 2).size() == 21);
}

TEST_CASE("enumerate_basis matches brute force for M <= 6, N <= 4") {
    for (std::size_t m = 1; m <= 6; m++) {
        for (unsigned n = 0; n <= 4; n++) {
            const auto basis = enumerate_basis(m, n);
            const auto brute = testing::brute_force_basis(m, n);
            CHECK(basis.size() == brute.size());
            CHECK(basis.size() == basis_size(m, n));
            CHECK(std::is_sorted(basis.begin(), basis.end()));
            CHECK(std::adjacent_find(basis.begin(), basis.end()) == basis.end());
            for (const auto& s : basis) CHECK(s.total_photons() == n);
        }
    }
}

TEST_CASE("enumerate_basis cap") {
    CHECK_THROWS_AS(enumerate_basis(20, 10, 1000), BasisOverflow);
    CHECK_THROWS_AS(enumerate_basis(0, 1), ConfigError);
}

TEST_CASE("ladder operators") {
    const auto vac = StateVector::vacuum(2);
    CHECK(apply_creation(vac, Mode{0}).amplitude({1, 0}) == Complex{1.0, 0.0});

    const auto two = apply_creation(StateVector::basis({1, 0}), Mode{0});
    CHECK(two.amplitude({2, 0}).real() == doctest::Approx(std::sqrt(2.0)));

    // a1^dagger (|1,0> + |0,1>)/sqrt2 = (|1,1> + sqrt2 |0,2>)/sqrt2
    const double s = 1.0 / std::sqrt(2.0);
    const auto plus = make(2, {{{1, 0}, s}, {{0, 1}, s}});
    const auto expected = make(2, {{{1, 1}, s}, {{0, 2}, 1.0}});
    CHECK(close(apply_creation(plus, Mode{1}), expected, 1e-15));

    CHECK(apply_annihilation(StateVector::basis({0, 1}), Mode{0}).is_zero());
    CHECK(apply_annihilation(StateVector::basis({2, 0}), Mode{0}).amplitude({1, 0}).real() ==
          doctest::Approx(std::sqrt(2.0)));

    const auto pair = StateVector::basis({1, 1});
    const auto n0 = inner_product(pair, apply_creation(apply_annihilation(pair, Mode{0}), Mode{0}));
    CHECK(n0.real() == doctest::Approx(1.0));

    CHECK_THROWS_AS(apply_creation(vac, Mode{2}), ConfigError);
}

TEST_CASE("inner product") {
    CHECK(inner_product(StateVector::basis({1, 1}), StateVector::basis({1, 1})) == Complex{1.0, 0.0});
    CHECK(inner_product(StateVector::basis({2, 0}), StateVector::basis({0, 2})) == Complex{});
    const double s = 1.0 / std::sqrt(2.0);
    const auto noon = make(2, {{{2, 0}, s}, {{0, 2}, s}});
    CHECK(inner_product(noon, noon).real() == doctest::Approx(1.0).epsilon(1e-15));

    // Conjugate-linear in the bra.
    const Complex c{0.3, -1.2};
    const auto x = make(2, {{{1, 0}, Complex{0.2, 0.4}}, {{0, 1}, 0.7}});
    const auto y = make(2, {{{1, 0}, 0.5}, {{0, 1}, Complex{0.0, 1.0}}});
    const auto lhs = inner_product(x.scaled(c), y);
    const auto rhs = std::conj(c) * inner_product(x, y);
    CHECK(std::abs(lhs - rhs) < 1e-15);

    CHECK_THROWS_AS(inner_product(StateVector::vacuum(2), StateVector::vacuum(3)), ConfigError);
}

TEST_CASE("pruning drops tiny amplitudes") {
    const auto v = make(2, {{{1, 0}, 1.0}, {{0, 1}, 1e-16}});
    CHECK(v.size() == 1);
    StateVector::Terms t{{FockState{1, 0}, 1.0}, {FockState{0, 1}, 1e-16}};
    CHECK(StateVector(2, t, 0.0).size() == 2);
    CHECK_THROWS_AS(StateVector(3, t), ConfigError);
}

TEST_CASE("coherent input") {
    const auto vac = coherent_input({0.0, 10}, Mode{0}, 2);
    CHECK(vac.state.size() == 1);
    CHECK(vac.state.amplitude({0, 0}).real() == doctest::Approx(1.0));

    const auto one = coherent_input({1.0, 20}, Mode{0}, 2);
    double mean = 0.0;
    for (const auto& [s, amp] : one.state.terms()) mean += s[0] * std::norm(amp);
    CHECK(std::abs(mean - 1.0) < 1e-10);
    CHECK(one.renormalization >= 1.0);

    // |2> coefficient of |alpha = 0.5>: e^{-|a|^2/2} a^2 / sqrt(2!).
    const auto half = coherent_input(CoherentParams::with_default_truncation(0.5), Mode{1}, 2);
    const double expected = std::exp(-0.125) * 0.25 / std::sqrt(2.0);
    CHECK(std::abs(half.state.amplitude({0, 2}).real() - expected * half.renormalization) < 1e-15);
    CHECK(std::abs(half.state.amplitude({0, 2}).real() - expected) < 1e-10);
    CHECK(std::abs(half.state.norm_squared() - 1.0) < 1e-12);

    CHECK(CoherentParams::default_truncation(1.0) == 13);
    CHECK_THROWS_AS(coherent_input({3.0, 8}, Mode{0}, 1), ConfigError);
    CHECK_THROWS_AS(coherent_input({0.5, 20}, Mode{2}, 2), ConfigError);
}

TEST_CASE("commutator [a, a^dagger] = 1 on random states") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; trial++) {
        const auto psi = testing::random_state(3, 4, 6, rng);
        for (std::size_t m = 0; m < 3; m++) {
            const auto aad = apply_annihilation(apply_creation(psi, Mode{m}), Mode{m});
            const auto ada = apply_creation(apply_annihilation(psi, Mode{m}), Mode{m});
            CHECK(close(aad + ada.scaled(-1.0), psi, 1e-12));
        }
    }
}

TEST_CASE("number operator via ladders equals sum n |c_n|^2") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; trial++) {
        const auto psi = testing::random_state(2, 5, 5, rng);
        for (std::size_t m = 0; m < 2; m++) {
            double direct = 0.0;
            for (const auto& [s, amp] : psi.terms()) direct += s[m] * std::norm(amp);
            const auto lowered = apply_annihilation(psi, Mode{m});
            CHECK(inner_product(lowered, lowered).real() == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("dump format") {
    const auto v = make(2, {{{0, 2}, Complex{0.5, -0.25}}, {{1, 1}, 0.1}});
    CHECK(dump(v) == "0,2\t0.5\t-0.25\n1,1\t0.10000000000000001\t0\n");
}
