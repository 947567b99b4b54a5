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

#include "biphoton/detection.hpp"

#include <cmath>

#include <fmt/format.h>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

void require_normalized(const StateVector& state) {
    const double n2 = state.norm_squared();
    if (std::abs(n2 - 1.0) > kNormalizationTolerance) {
        throw ConfigError(fmt::format("rate requires a normalized state, got <psi|psi> = {:.12g}", n2));
    }
}

double hermitian_expectation(const StateVector& state, const StateVector& op_state) {
    const Complex value = inner_product(state, op_state);
    if (std::abs(value.imag()) > kHermiticityTolerance) {
        throw NumericalError(fmt::format("expectation value has imaginary part {:.3g}", value.imag()));
    }
    return value.real();
}

}  // namespace

double rate_one_photon(const StateVector& state, Mode mode) {
    require_normalized(state);
    return hermitian_expectation(state, apply_creation(apply_annihilation(state, mode), mode));
}

double rate_two_photon_same_port(const StateVector& state, Mode mode) {
    require_normalized(state);
    auto lowered = apply_annihilation(apply_annihilation(state, mode), mode);
    return hermitian_expectation(state, apply_creation(apply_creation(lowered, mode), mode));
}

double rate_coincidence(const StateVector& state, Mode mode_a, Mode mode_b) {
    if (mode_a == mode_b) {
        throw ConfigError("coincidence needs two distinct modes; use rate_two_photon_same_port for one port");
    }
    require_normalized(state);
    auto lowered = apply_annihilation(apply_annihilation(state, mode_a), mode_b);
    return hermitian_expectation(state, apply_creation(apply_creation(lowered, mode_b), mode_a));
}

RateTriple measure_rates(const StateVector& state, Mode port4, Mode port5) {
    return {rate_one_photon(state, port5), rate_two_photon_same_port(state, port5),
            rate_coincidence(state, port4, port5)};
}

RateTriple distinguishable_pair_rates(const ModeUnitary& u) {
    if (u.size() != 2) throw ConfigError("pair rates need a two-mode unitary");
    const auto out_a = lift_and_evolve(StateVector::basis({1, 0}), u);
    const auto out_b = lift_and_evolve(StateVector::basis({0, 1}), u);
    const double a4 = rate_one_photon(out_a, Mode{0});
    const double a5 = rate_one_photon(out_a, Mode{1});
    const double b4 = rate_one_photon(out_b, Mode{0});
    const double b5 = rate_one_photon(out_b, Mode{1});
    return {a5 + b5, 2.0 * a5 * b5, a4 * b5 + a5 * b4};
}

RateTriple pair_rates(const ModeUnitary& u, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(fmt::format("distinguishability {} outside [0, 1]", p));
    if (u.size() != 2) throw ConfigError("pair rates need a two-mode unitary");
    const auto q = measure_rates(lift_and_evolve(StateVector::basis({1, 1}), u));
    const auto d = distinguishable_pair_rates(u);
    return {p * q.r5 + (1 - p) * d.r5, p * q.r55 + (1 - p) * d.r55, p * q.r45 + (1 - p) * d.r45};
}

std::string_view formula_name(AnalyticFormula formula) {
    switch (formula) {
        case AnalyticFormula::kR55Fock: return "r55_fock";
        case AnalyticFormula::kR45Fock: return "r45_fock";
        case AnalyticFormula::kR5Single: return "r5_single";
        case AnalyticFormula::kR55Coherent: return "r55_coherent";
        case AnalyticFormula::kR45Coherent: return "r45_coherent";
    }
    return "unknown";
}

bool is_coherent_formula(AnalyticFormula formula) {
    return formula == AnalyticFormula::kR55Coherent || formula == AnalyticFormula::kR45Coherent;
}

double analytic_rate(AnalyticFormula formula, double phi, std::optional<Complex> alpha) {
    if (is_coherent_formula(formula) != alpha.has_value()) {
        throw ConfigError(fmt::format("{} {} a coherent amplitude", formula_name(formula),
                                      alpha ? "does not take" : "requires"));
    }
    switch (formula) {
        case AnalyticFormula::kR55Fock: return 0.5 * (1.0 - std::cos(2.0 * phi));
        case AnalyticFormula::kR45Fock: return 0.5 * (1.0 + std::cos(2.0 * phi));
        case AnalyticFormula::kR5Single: return 0.5 * (1.0 - std::cos(phi));
        case AnalyticFormula::kR55Coherent: {
            const double a4 = std::pow(std::norm(*alpha), 2);
            const double d = 1.0 - std::cos(phi);
            return a4 / 4.0 * d * d;
        }
        case AnalyticFormula::kR45Coherent: {
            const double a4 = std::pow(std::norm(*alpha), 2);
            return a4 / 8.0 * (1.0 - std::cos(2.0 * phi));
        }
    }
    throw ConfigError("unknown analytic formula");
}

}  // namespace biphoton
