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

// Photon-counting observables at the interferometer outputs, their
// single-frequency closed forms, and fringe fitting.
//
// Rates are quantum expectation values per trial, not counts per second.

#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "biphoton/fock.hpp"
#include "biphoton/optics.hpp"
#include "biphoton/scan.hpp"

namespace biphoton {

/// Largest |<psi|psi> - 1| a rate function accepts.
inline constexpr double kNormalizationTolerance = 1e-9;
/// Largest imaginary part tolerated in an expectation value of a Hermitian operator.
inline constexpr double kHermiticityTolerance = 1e-12;

/// Rates at output ports 4 and 5: one-photon R5, same-port pair R55 and
/// cross-port coincidence R45.
struct RateTriple {
    double r5 = 0.0;
    double r55 = 0.0;
    double r45 = 0.0;
};

/// <a^dagger a> at `mode`.
double rate_one_photon(const StateVector& state, Mode mode);
/// <a^dagger a^dagger a a> = <n(n-1)> at `mode`.
double rate_two_photon_same_port(const StateVector& state, Mode mode);
/// <a^dagger b^dagger b a> = <n_a n_b>. Throws ConfigError if the modes coincide.
double rate_coincidence(const StateVector& state, Mode mode_a, Mode mode_b);

/// All three rates with port 4 = `port4` and port 5 = `port5`.
RateTriple measure_rates(const StateVector& state, Mode port4 = Mode{0}, Mode port5 = Mode{1});

/// Rates for two photons entering ports 0 and 1 of the two-mode unitary `u`
/// that never interfere with each other: each photon is propagated on its
/// own and the detection probabilities are combined classically.
RateTriple distinguishable_pair_rates(const ModeUnitary& u);

/// p * (indistinguishable |1,1> rates) + (1 - p) * distinguishable_pair_rates.
/// Throws ConfigError unless 0 <= p <= 1.
RateTriple pair_rates(const ModeUnitary& u, double p);

/// Single-frequency closed forms of the Mach-Zehnder rates versus the arm
/// phase difference phi.
enum class AnalyticFormula {
    kR55Fock,      // |1,1>:     (1 - cos 2phi) / 2
    kR45Fock,      // |1,1>:     (1 + cos 2phi) / 2
    kR5Single,     // |0,1>:     (1 - cos phi) / 2
    kR55Coherent,  // |0,alpha>: |alpha|^4 / 4 (1 - cos phi)^2
    kR45Coherent,  // |0,alpha>: |alpha|^4 / 8 (1 - cos 2phi)
};

std::string_view formula_name(AnalyticFormula formula);
bool is_coherent_formula(AnalyticFormula formula);

/// Throws ConfigError when `alpha` is given for a Fock formula or missing for
/// a coherent one.
double analytic_rate(AnalyticFormula formula, double phi, std::optional<Complex> alpha = std::nullopt);

/// Fitted A (1 + V cos(2 pi x / T + theta)).
struct FringeSummary {
    double visibility = 0.0;  // V, clamped to [0, 1]
    double period_nm = 0.0;   // T
    double phase_offset = 0.0;
    double mean = 0.0;      // A
    double residual = 0.0;  // RMS of data - model
};

struct FringeFitOptions {
    /// Optional multiplicative envelope e(x_nm) applied to the sinusoid model.
    std::function<double(double)> envelope;
    /// Restricts the period search to [hint / 1.5, hint * 1.5] and requires at
    /// least two samples per hinted period.
    std::optional<double> period_hint_nm;
    /// Residual RMS / |mean| above which the fit is rejected (FitError).
    double max_relative_residual = 0.25;
};

/// Least-squares sinusoid fit. The period is seeded by a dense periodogram
/// peak, then refined by one-dimensional minimization of the residual with
/// the linear coefficients solved exactly at each trial period.
///
/// A flat scan is a valid input and yields visibility 0 and a period equal to
/// the scan span. Throws ConfigError for unusable sampling, FitError when
/// the best fit leaves too large a residual.
FringeSummary fit_fringe(const ScanResult& scan, const FringeFitOptions& options = {});

}  // namespace biphoton
