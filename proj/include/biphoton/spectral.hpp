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

// Multi-frequency biphoton model.
//
// A pair from a pump at sum frequency 2*nu0 is described by its signal
// detuning delta and its sum-frequency offset eps:
//     nu_s = nu0 + delta + eps/2,   nu_i = nu0 - delta + eps/2.
// A monochromatic pump pins eps = 0, making the joint amplitude a function
// of delta alone. A finite pump linewidth adds a second, much narrower eps
// axis.
//
// The delta axis is split into cells of one grid spacing. Each stored cell
// carries the part of that interval that survives the filters (rectangular
// filter edges are resolved exactly rather than snapped to nodes), the
// probability mass inside it, and the corresponding amplitude. Oscillatory
// kernels are integrated exactly across each cell assuming a constant density
// within it, which keeps long path differences accurate on coarse grids.

#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "biphoton/scan.hpp"

namespace biphoton {

enum class FilterShape { kRectangular, kGaussian };
enum class PumpShape { kDelta, kGaussian };

/// Interference filter in front of each detector. `bandwidth_nm` is the full
/// width (rectangular) or FWHM (gaussian, defined in frequency).
struct FilterSpectrum {
    FilterShape shape = FilterShape::kRectangular;
    double center_nm = 860.0;
    double bandwidth_nm = 10.0;

    double center_thz() const;
    /// Width of the pass band in frequency.
    double bandwidth_thz() const;
    /// Intensity transmission in [0, 1] at `thz`.
    double transmission(double thz) const;
    /// Frequency interval outside which transmission is exactly zero
    /// (unbounded for the gaussian shape).
    double support_lo_thz() const;
    double support_hi_thz() const;

    bool operator==(const FilterSpectrum&) const = default;
};

/// Pump of the down-conversion: second harmonic of a laser at `wavelength_nm`,
/// so the pair sum frequency is 2 * nu0.
struct PumpSpectrum {
    PumpShape shape = PumpShape::kGaussian;
    double wavelength_nm = 861.6;  // fundamental; degenerate pair wavelength
    double linewidth_hz = 40e6;    // FWHM of the sum frequency; ignored for kDelta

    double degenerate_thz() const;
    double linewidth_thz() const;

    bool operator==(const PumpSpectrum&) const = default;
};

/// Uniform grid of signal detunings centred on the degenerate frequency.
struct SpectralGrid {
    double center_thz = 0.0;
    double span_thz = 0.0;
    std::size_t points = 0;  // odd, so delta = 0 is a node

    /// Grid centred on the pump's degenerate frequency.
    static SpectralGrid centered_on(const PumpSpectrum& pump, double span_thz, std::size_t points);
    double spacing() const;
    double detuning(std::size_t i) const;
    /// Throws ConfigError unless points is odd and >= 3 and span > 0.
    void validate() const;
};

/// Number of sum-frequency nodes used for a gaussian pump (spanning +-5 sigma).
inline constexpr std::size_t kPumpGridPoints = 41;

/// One quadrature cell of the joint (or marginal) spectrum.
struct SpectralCell {
    double lo = 0.0;  // detuning interval, THz; lo == hi for a point mass
    double hi = 0.0;
    double eps = 0.0;  // sum-frequency offset, THz
    double weight = 0.0;  // probability mass; weights of a spectrum sum to 1
    std::complex<double> amplitude;  // sqrt(weight / (cell area)) for extended cells

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

class BiphotonSpectralAmplitude {
   public:
    BiphotonSpectralAmplitude(SpectralGrid grid, PumpSpectrum pump, FilterSpectrum filter,
                              std::vector<SpectralCell> joint, std::vector<SpectralCell> signal_marginal,
                              double eps_spacing);

    const SpectralGrid& grid() const { return grid_; }
    const PumpSpectrum& pump() const { return pump_; }
    const FilterSpectrum& filter() const { return filter_; }
    double degenerate_thz() const { return grid_.center_thz; }
    /// Node spacing of the sum-frequency axis (1 for a monochromatic pump).
    double eps_spacing() const { return eps_spacing_; }

    /// Pair spectrum with both photons filtered (two-photon detection).
    const std::vector<SpectralCell>& joint() const { return joint_; }
    /// Spectrum of the signal photon when only it reaches a filtered detector
    /// and its partner is blocked (one-photon detection).
    const std::vector<SpectralCell>& signal_marginal() const { return signal_marginal_; }

    /// sum |amplitude|^2 * cell area over the joint spectrum (1 after construction).
    double joint_norm() const;
    /// Weighted RMS of nu_s + nu_i - 2 nu0 over the joint spectrum, THz.
    double rms_sum_offset_thz() const;
    /// Weighted FWHM-equivalent width (2.3548 sigma) of the signal marginal, nm.
    double marginal_rms_width_nm() const;
    /// Full extent of the nonzero signal marginal, nm.
    double marginal_support_width_nm() const;

   private:
    SpectralGrid grid_;
    PumpSpectrum pump_;
    FilterSpectrum filter_;
    std::vector<SpectralCell> joint_;
    std::vector<SpectralCell> signal_marginal_;
    double eps_spacing_;
};

/// Pair spectrum: amplitude(delta, eps) proportional to the phase-matching
/// envelope (gaussian in delta with spectral FWHM `phasematch_bandwidth_nm`),
/// the filter amplitude on both photons and the pump amplitude at eps.
/// A zero phase-matching bandwidth collapses the pair to the degenerate
/// frequency (single-frequency limit).
///
/// Throws ConfigError when the grid is not centred on the pump's degenerate
/// frequency, spans less than three filter bandwidths, or places fewer than
/// 32 nodes across the filter band.
BiphotonSpectralAmplitude build_biphoton(const PumpSpectrum& pump, double phasematch_bandwidth_nm,
                                         const FilterSpectrum& filter, const SpectralGrid& grid);

/// Coincidence rate at the two outputs of the first beam splitter versus the
/// delay dL1 between the input paths:
///     R = 1/2 (1 - p * Re sum |A|^2 exp(-i 2 pi (2 delta) dL1 / c)).
/// R -> 1/2 far from the dip. Positions are in `unit`.
ScanResult hom_scan(const BiphotonSpectralAmplitude& bsa, const std::vector<double>& delta_l1,
                    units::LengthUnit unit, double distinguishability);

/// One-photon rate at port 5 with one input blocked:
///     R5 = p * sum w 1/2 (1 - cos(2 pi nu_s dL2 / c)) + (1 - p) / 2.
ScanResult mz_one_photon_scan(const BiphotonSpectralAmplitude& bsa, const std::vector<double>& delta_l2,
                              units::LengthUnit unit, double distinguishability);

/// Two-photon rate at port 5 for the path-entangled pair prepared at zero delay:
///     R55 = p * sum w 1/2 (1 - cos(2 pi (nu_s + nu_i) dL2 / c)) + (1 - p) / 2.
ScanResult mz_two_photon_scan(const BiphotonSpectralAmplitude& bsa, const std::vector<double>& delta_l2,
                              units::LengthUnit unit, double distinguishability);

/// |sum w exp(i 2 pi nu dL / c)|: fringe contrast available at path difference
/// `dl_nm` for one-photon (signal marginal) and two-photon (sum frequency) detection.
double one_photon_envelope(const BiphotonSpectralAmplitude& bsa, double dl_nm);
double two_photon_envelope(const BiphotonSpectralAmplitude& bsa, double dl_nm);

struct CoherenceLengths {
    double one_photon_um = 0.0;  // lambda_c^2 / delta_lambda
    double two_photon_cm = 0.0;  // c / delta_nu0
    bool one_photon_unbounded = false;
    bool two_photon_unbounded = false;
};

/// Rule-of-thumb coherence lengths. Zero bandwidth (or a monochromatic pump)
/// gives +infinity with the matching unbounded flag set.
CoherenceLengths coherence_lengths(const FilterSpectrum& filter, const PumpSpectrum& pump);

/// Fitted HOM dip A (1 - V sinc(pi (x - x0) / w)), the shape produced by a
/// rectangular pair spectrum.
struct DipSummary {
    double visibility = 0.0;  // V = (R_far - R_min) / R_far of the model
    double baseline = 0.0;    // A
    double center_nm = 0.0;   // x0
    double width_nm = 0.0;    // w, distance from the centre to the first zero
    double residual = 0.0;
};

/// Levenberg-Marquardt fit of the sinc dip model. Throws FitError if the
/// optimizer fails or the residual exceeds `max_relative_residual` of A.
DipSummary fit_hom_dip(const ScanResult& scan, double max_relative_residual = 0.25);

}  // namespace biphoton
