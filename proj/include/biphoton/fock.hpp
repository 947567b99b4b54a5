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

// Multimode bosonic Fock space: occupation-number basis states, sparse state
// vectors, ladder operators and coherent-state inputs.

#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace biphoton {

using Complex = std::complex<double>;

/// Amplitudes with modulus below this are dropped after every operation.
inline constexpr double kDefaultPruneThreshold = 1e-15;
/// Largest basis (or evolved-state term count) any operation will build.
inline constexpr std::size_t kDefaultBasisCap = 1'000'000;

/// Spatial path index. Modes of an M-mode space are 0..M-1.
struct Mode {
    std::size_t index = 0;

    constexpr explicit Mode(std::size_t i) : index(i) {}
    constexpr auto operator<=>(const Mode&) const = default;
};

/// Occupation-number vector |n_0, n_1, ..., n_{M-1}>. Ordered
/// lexicographically, which is the canonical basis order everywhere.
class FockState {
   public:
    FockState() = default;
    explicit FockState(std::vector<unsigned> occupations) : occupations_(std::move(occupations)) {}
    FockState(std::initializer_list<unsigned> occupations) : occupations_(occupations) {}

    std::size_t modes() const { return occupations_.size(); }
    unsigned operator[](std::size_t mode) const { return occupations_[mode]; }
    const std::vector<unsigned>& occupations() const { return occupations_; }
    unsigned total_photons() const;

    /// Copy with mode `mode` holding `n` photons.
    FockState with(std::size_t mode, unsigned n) const;

    /// "n0,n1,...".
    std::string to_string() const;

    auto operator<=>(const FockState&) const = default;
    bool operator==(const FockState&) const = default;

   private:
    std::vector<unsigned> occupations_;
};

/// Sparse superposition over Fock basis states of a fixed number of modes.
/// Terms may span several photon-number sectors (coherent inputs).
/// Immutable after construction; every operation returns a new vector.
class StateVector {
   public:
    using Terms = std::map<FockState, Complex>;

    /// The zero vector on `modes` modes.
    explicit StateVector(std::size_t modes) : modes_(modes) {}
    /// Throws ConfigError if a term has the wrong number of modes.
    StateVector(std::size_t modes, Terms terms, double prune = kDefaultPruneThreshold);

    static StateVector vacuum(std::size_t modes);
    static StateVector basis(const FockState& state);

    std::size_t modes() const { return modes_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Zero for states not present.
    Complex amplitude(const FockState& state) const;
    double norm_squared() const;

    StateVector scaled(Complex factor) const;
    StateVector normalized() const;
    StateVector operator+(const StateVector& other) const;

   private:
    std::size_t modes_;
    Terms terms_;
};

/// Number of occupation vectors of `modes` modes holding `photons` photons,
/// i.e. C(photons + modes - 1, modes - 1). Saturates at SIZE_MAX.
std::size_t basis_size(std::size_t modes, unsigned photons);

/// All occupation vectors summing to `total_photons`, in ascending
/// lexicographic order. Throws BasisOverflow beyond `cap` states.
std::vector<FockState> enumerate_basis(std::size_t modes, unsigned total_photons,
                                       std::size_t cap = kDefaultBasisCap);

/// a^dagger on `mode`: |..n..> -> sqrt(n+1)|..n+1..>.
StateVector apply_creation(const StateVector& state, Mode mode, double prune = kDefaultPruneThreshold);
/// a on `mode`: |..n..> -> sqrt(n)|..n-1..>; n = 0 terms vanish.
StateVector apply_annihilation(const StateVector& state, Mode mode, double prune = kDefaultPruneThreshold);

/// <bra|ket>, conjugate-linear in the bra.
Complex inner_product(const StateVector& bra, const StateVector& ket);

/// Coherent amplitude and Fock cutoff for a single-mode coherent input.
struct CoherentParams {
    Complex alpha{0.0, 0.0};
    unsigned truncation = 0;

    /// ceil(|alpha|^2 + 6|alpha| + 6); keeps the discarded Poisson tail far below 1e-10.
    static unsigned default_truncation(Complex alpha);
    static CoherentParams with_default_truncation(Complex alpha) { return {alpha, default_truncation(alpha)}; }
};

/// Largest Poisson tail weight a truncated coherent state may discard.
inline constexpr double kCoherentTailThreshold = 1e-10;

struct CoherentInput {
    StateVector state;
    /// Factor applied to the truncated series to restore unit norm (>= 1).
    double renormalization = 1.0;
    /// Poisson weight beyond the truncation.
    double tail_weight = 0.0;
};

/// e^{-|a|^2/2} sum_n a^n/sqrt(n!) |n> in `mode`, vacuum elsewhere, truncated
/// at params.truncation photons and renormalized. Throws ConfigError when the
/// discarded tail exceeds kCoherentTailThreshold.
CoherentInput coherent_input(const CoherentParams& params, Mode mode, std::size_t modes);

/// Debug dump: one line per term, "occupations<TAB>re<TAB>im", canonical
/// order, 17 significant digits.
void write_dump(std::ostream& out, const StateVector& state);
std::string dump(const StateVector& state);

}  // namespace biphoton
