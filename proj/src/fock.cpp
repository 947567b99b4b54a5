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

#include "biphoton/fock.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "biphoton/errors.hpp"

namespace biphoton {

unsigned FockState::total_photons() const {
    return std::accumulate(occupations_.begin(), occupations_.end(), 0u);
}

FockState FockState::with(std::size_t mode, unsigned n) const {
    auto occ = occupations_;
    occ.at(mode) = n;
    return FockState(std::move(occ));
}

std::string FockState::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < occupations_.size(); i++) {
        if (i) out += ',';
        out += std::to_string(occupations_[i]);
    }
    return out;
}

namespace {

void prune_terms(StateVector::Terms& terms, double threshold) {
    std::erase_if(terms, [threshold](const auto& kv) { return std::abs(kv.second) < threshold; });
}

void check_mode(const StateVector& state, Mode mode) {
    if (mode.index >= state.modes()) {
        throw ConfigError(fmt::format("mode {} out of range for a {}-mode state", mode.index, state.modes()));
    }
}

}  // namespace

StateVector::StateVector(std::size_t modes, Terms terms, double prune) : modes_(modes), terms_(std::move(terms)) {
    for (const auto& [basis_state, amp] : terms_) {
        if (basis_state.modes() != modes_) {
            throw ConfigError(
                fmt::format("basis state ({}) does not have {} modes", basis_state.to_string(), modes_));
        }
    }
    prune_terms(terms_, prune);
}

StateVector StateVector::vacuum(std::size_t modes) {
    return StateVector(modes, {{FockState(std::vector<unsigned>(modes, 0)), Complex{1.0, 0.0}}});
}

StateVector StateVector::basis(const FockState& state) {
    return StateVector(state.modes(), {{state, Complex{1.0, 0.0}}});
}

Complex StateVector::amplitude(const FockState& state) const {
    auto it = terms_.find(state);
    return it == terms_.end() ? Complex{} : it->second;
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const auto& [s, amp] : terms_) acc += std::norm(amp);
    return acc;
}

StateVector StateVector::scaled(Complex factor) const {
    Terms out;
    for (const auto& [s, amp] : terms_) out.emplace(s, amp * factor);
    return StateVector(modes_, std::move(out));
}

StateVector StateVector::normalized() const {
    double n2 = norm_squared();
    if (n2 == 0.0) throw NumericalError("cannot normalize the zero vector");
    return scaled(1.0 / std::sqrt(n2));
}

StateVector StateVector::operator+(const StateVector& other) const {
    if (other.modes_ != modes_) throw ConfigError("adding states with different mode counts");
    Terms out = terms_;
    for (const auto& [s, amp] : other.terms_) out[s] += amp;
    return StateVector(modes_, std::move(out));
}

std::size_t basis_size(std::size_t modes, unsigned photons) {
    // C(photons + modes - 1, photons), built incrementally so every
    // intermediate is itself a binomial coefficient.
    if (modes == 0) return photons == 0 ? 1 : 0;
    std::size_t result = 1;
    for (unsigned k = 1; k <= photons; k++) {
        std::size_t num = modes - 1 + k;
        if (result > std::numeric_limits<std::size_t>::max() / num) return std::numeric_limits<std::size_t>::max();
        result = result * num / k;
    }
    return result;
}

namespace {

void enumerate_into(std::vector<unsigned>& prefix, std::size_t modes, unsigned remaining,
                    std::vector<FockState>& out) {
    if (prefix.size() + 1 == modes) {
        prefix.push_back(remaining);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (unsigned n = 0; n <= remaining; n++) {
        prefix.push_back(n);
        enumerate_into(prefix, modes, remaining - n, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<FockState> enumerate_basis(std::size_t modes, unsigned total_photons, std::size_t cap) {
    if (modes == 0) throw ConfigError("enumerate_basis needs at least one mode");
    std::size_t count = basis_size(modes, total_photons);
    if (count > cap) {
        throw BasisOverflow(fmt::format("basis of {} modes with {} photons has {} states, cap is {}", modes,
                                        total_photons, count, cap));
    }
    std::vector<FockState> out;
    out.reserve(count);
    std::vector<unsigned> prefix;
    prefix.reserve(modes);
    enumerate_into(prefix, modes, total_photons, out);
    return out;
}

StateVector apply_creation(const StateVector& state, Mode mode, double prune) {
    check_mode(state, mode);
    StateVector::Terms out;
    for (const auto& [s, amp] : state.terms()) {
        unsigned n = s[mode.index];
        out.emplace(s.with(mode.index, n + 1), amp * std::sqrt(static_cast<double>(n + 1)));
    }
    return StateVector(state.modes(), std::move(out), prune);
}

StateVector apply_annihilation(const StateVector& state, Mode mode, double prune) {
    check_mode(state, mode);
    StateVector::Terms out;
    for (const auto& [s, amp] : state.terms()) {
        unsigned n = s[mode.index];
        if (n == 0) continue;
        out.emplace(s.with(mode.index, n - 1), amp * std::sqrt(static_cast<double>(n)));
    }
    return StateVector(state.modes(), std::move(out), prune);
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
    if (bra.modes() != ket.modes()) {
        throw ConfigError(fmt::format("inner product of {}-mode and {}-mode states", bra.modes(), ket.modes()));
    }
    // Walk the smaller map, look up in the larger.
    const auto& small = bra.size() <= ket.size() ? bra : ket;
    const auto& large = bra.size() <= ket.size() ? ket : bra;
    Complex acc{};
    for (const auto& [s, amp] : small.terms()) {
        auto it = large.terms().find(s);
        if (it == large.terms().end()) continue;
        const Complex& b = (&small == &bra) ? amp : it->second;
        const Complex& k = (&small == &bra) ? it->second : amp;
        acc += std::conj(b) * k;
    }
    return acc;
}

unsigned CoherentParams::default_truncation(Complex alpha) {
    double a = std::abs(alpha);
    return static_cast<unsigned>(std::ceil(a * a + 6.0 * a + 6.0));
}

CoherentInput coherent_input(const CoherentParams& params, Mode mode, std::size_t modes) {
    if (mode.index >= modes) {
        throw ConfigError(fmt::format("mode {} out of range for {} modes", mode.index, modes));
    }
    const double mean = std::norm(params.alpha);

    // Poisson weights p_n = e^{-m} m^n / n!, accumulated by recurrence.
    double kept = 0.0;
    double p = std::exp(-mean);
    std::vector<Complex> coeffs;
    Complex c = std::exp(-0.5 * mean);
    for (unsigned n = 0; n <= params.truncation; n++) {
        if (n > 0) {
            c *= params.alpha / std::sqrt(static_cast<double>(n));
            p *= mean / n;
        }
        coeffs.push_back(c);
        kept += p;
    }
    // Summing the tail directly avoids cancellation in 1 - kept.
    double tail = 0.0;
    if (mean > 0.0) {
        for (unsigned n = params.truncation + 1;; n++) {
            p *= mean / n;
            tail += p;
            if (p < 1e-300 || (n > mean && p < tail * 1e-17)) break;
        }
    }
    if (tail > kCoherentTailThreshold) {
        throw ConfigError(fmt::format("coherent truncation {} too small for |alpha| = {}: tail weight {:.3g} > {:.0e}",
                                      params.truncation, std::abs(params.alpha), tail, kCoherentTailThreshold));
    }

    const double renorm = 1.0 / std::sqrt(kept);
    StateVector::Terms terms;
    std::vector<unsigned> occ(modes, 0);
    for (unsigned n = 0; n < coeffs.size(); n++) {
        occ[mode.index] = n;
        terms.emplace(FockState(occ), coeffs[n] * renorm);
    }
    return {StateVector(modes, std::move(terms)), renorm, tail};
}

void write_dump(std::ostream& out, const StateVector& state) {
    for (const auto& [s, amp] : state.terms()) {
        out << fmt::format("{}\t{:.17g}\t{:.17g}\n", s.to_string(), amp.real(), amp.imag());
    }
}

std::string dump(const StateVector& state) {
    std::ostringstream ss;
    write_dump(ss, state);
    return ss.str();
}

}  // namespace biphoton
