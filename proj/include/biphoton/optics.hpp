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

// Passive linear optics on mode operators and their lift to Fock space.
//
// Convention: a ModeUnitary U maps input annihilation operators to output
// ones, a_out[k] = sum_j U(k, j) a_in[j]. Creation operators transform with
// the conjugate transpose, so an input photon in mode j leaves as
// sum_k U(k, j) a_out[k]^dagger. The 50/50 beam splitter is symmetric with a
// factor i on reflection.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "biphoton/fock.hpp"

namespace biphoton {

class ModeUnitary {
   public:
    /// `matrix` acts on `acting_modes` (distinct mode indices, in matrix
    /// row/column order). Throws ConfigError on shape mismatch or repeated
    /// modes. Unitarity is not enforced here; see is_unitary().
    ModeUnitary(Eigen::MatrixXcd matrix, std::vector<std::size_t> acting_modes);
    /// Acting on modes 0..n-1.
    explicit ModeUnitary(Eigen::MatrixXcd matrix);

    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const std::vector<std::size_t>& acting_modes() const { return acting_modes_; }
    std::size_t size() const { return acting_modes_.size(); }
    Complex operator()(std::size_t row, std::size_t col) const { return matrix_(row, col); }

    bool is_unitary(double tol = 1e-12) const;
    ModeUnitary adjoint() const;

   private:
    Eigen::MatrixXcd matrix_;
    std::vector<std::size_t> acting_modes_;
};

/// `after` * `before`: first apply `before`, then `after`. Both must act on
/// the same modes in the same order.
ModeUnitary compose(const ModeUnitary& after, const ModeUnitary& before);

/// (1/sqrt2) [[1, i], [i, 1]] on modes (a, b).
ModeUnitary beamsplitter_5050(Mode a = Mode{0}, Mode b = Mode{1});

/// diag(e^{i phi}, 1) on modes (a, b). Only the phase difference between two
/// arms is observable, so one arm carries the whole retardation.
ModeUnitary phase_retarder(double phi, Mode a = Mode{0}, Mode b = Mode{1});

/// diag(e^{i phi_a}, e^{i phi_b}).
ModeUnitary arm_phases(double phi_a, double phi_b, Mode a = Mode{0}, Mode b = Mode{1});

/// Balanced Mach-Zehnder transfer matrix, BS * diag(e^{i phi2}, e^{i phi3}) * BS.
/// Row 0 is output port 4, row 1 output port 5; columns are input ports 0, 1.
ModeUnitary mz_transfer(double phi2, double phi3, Mode a = Mode{0}, Mode b = Mode{1});

/// Arm path-length difference and the wavelength it is probed at.
struct PathPhase {
    double delta_l_nm = 0.0;  // may be negative
    double wavelength_nm = 0.0;

    /// 2*pi*dL/lambda.
    double phase() const;
};

/// Evolves `state` through `u` by rewriting every basis term as a monomial of
/// input creation operators, substituting the transformed operators and
/// re-expanding. Modes outside u.acting_modes() pass through untouched.
/// Exact for any photon number; cost grows with the number of output terms,
/// which is checked against `cap` (BasisOverflow).
StateVector lift_and_evolve(const StateVector& state, const ModeUnitary& u, std::size_t cap = kDefaultBasisCap,
                            double prune = kDefaultPruneThreshold);

}  // namespace biphoton
