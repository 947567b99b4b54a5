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

#include "biphoton/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

std::vector<std::size_t> iota_modes(Eigen::Index n) {
    std::vector<std::size_t> modes(static_cast<std::size_t>(n));
    std::iota(modes.begin(), modes.end(), std::size_t{0});
    return modes;
}

Eigen::MatrixXcd two_by_two(Complex a, Complex b, Complex c, Complex d) {
    Eigen::MatrixXcd m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

ModeUnitary::ModeUnitary(Eigen::MatrixXcd matrix, std::vector<std::size_t> acting_modes)
    : matrix_(std::move(matrix)), acting_modes_(std::move(acting_modes)) {
    if (matrix_.rows() != matrix_.cols()) throw ConfigError("mode unitary must be square");
    if (static_cast<std::size_t>(matrix_.rows()) != acting_modes_.size()) {
        throw ConfigError(fmt::format("{}x{} matrix given {} acting modes", matrix_.rows(), matrix_.cols(),
                                      acting_modes_.size()));
    }
    auto sorted = acting_modes_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ConfigError("acting modes must be distinct");
    }
}

ModeUnitary::ModeUnitary(Eigen::MatrixXcd matrix) : ModeUnitary(matrix, iota_modes(matrix.rows())) {}

bool ModeUnitary::is_unitary(double tol) const {
    const auto n = matrix_.rows();
    Eigen::MatrixXcd err = matrix_ * matrix_.adjoint() - Eigen::MatrixXcd::Identity(n, n);
    return err.cwiseAbs().maxCoeff() <= tol;
}

ModeUnitary ModeUnitary::adjoint() const { return ModeUnitary(matrix_.adjoint(), acting_modes_); }

ModeUnitary compose(const ModeUnitary& after, const ModeUnitary& before) {
    if (after.acting_modes() != before.acting_modes()) {
        throw ConfigError("composed unitaries must act on the same modes");
    }
    return ModeUnitary(after.matrix() * before.matrix(), after.acting_modes());
}

ModeUnitary beamsplitter_5050(Mode a, Mode b) {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, 1.0};
    return ModeUnitary(two_by_two(s, i * s, i * s, s), {a.index, b.index});
}

ModeUnitary phase_retarder(double phi, Mode a, Mode b) { return arm_phases(phi, 0.0, a, b); }

ModeUnitary arm_phases(double phi_a, double phi_b, Mode a, Mode b) {
    return ModeUnitary(two_by_two(std::polar(1.0, phi_a), 0.0, 0.0, std::polar(1.0, phi_b)), {a.index, b.index});
}

ModeUnitary mz_transfer(double phi2, double phi3, Mode a, Mode b) {
    const auto bs = beamsplitter_5050(a, b);
    return compose(bs, compose(arm_phases(phi2, phi3, a, b), bs));
}

double PathPhase::phase() const { return units::path_phase(delta_l_nm, wavelength_nm); }

StateVector lift_and_evolve(const StateVector& state, const ModeUnitary& u, std::size_t cap, double prune) {
    const auto& acting = u.acting_modes();
    for (auto m : acting) {
        if (m >= state.modes()) {
            throw ConfigError(fmt::format("unitary acts on mode {} of a {}-mode state", m, state.modes()));
        }
    }

    // Monomials of output creation operators, keyed by exponent vector.
    using Poly = std::map<std::vector<unsigned>, Complex>;
    StateVector::Terms out;

    for (const auto& [basis_state, amp] : state.terms()) {
        std::vector<unsigned> seed = basis_state.occupations();
        double norm = 1.0;
        for (auto m : acting) {
            norm *= std::tgamma(seed[m] + 1.0);
            seed[m] = 0;
        }
        Poly poly{{seed, amp / std::sqrt(norm)}};

        for (std::size_t j = 0; j < acting.size(); j++) {
            for (unsigned r = 0; r < basis_state[acting[j]]; r++) {
                Poly next;
                for (const auto& [mono, coeff] : poly) {
                    for (std::size_t k = 0; k < acting.size(); k++) {
                        const Complex t = u(k, j);
                        if (t == Complex{}) continue;
                        auto grown = mono;
                        grown[acting[k]]++;
                        next[grown] += coeff * t;
                    }
                }
                if (next.size() > cap) {
                    throw BasisOverflow(fmt::format("evolution produced more than {} terms", cap));
                }
                poly = std::move(next);
            }
        }

        for (const auto& [mono, coeff] : poly) {
            double factorials = 1.0;
            for (auto m : acting) factorials *= std::tgamma(mono[m] + 1.0);
            out[FockState(mono)] += coeff * std::sqrt(factorials);
        }
        if (out.size() > cap) throw BasisOverflow(fmt::format("evolved state exceeds {} terms", cap));
    }
    return StateVector(state.modes(), std::move(out), prune);
}

}  // namespace biphoton
