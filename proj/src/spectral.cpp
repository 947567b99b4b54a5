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

#include "biphoton/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <fmt/format.h>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

constexpr double kFourLn2 = 4.0 * std::numbers::ln2;
constexpr double kFwhmPerSigma = 2.3548200450309493;  // 2 sqrt(2 ln 2)
constexpr double kMinNodesAcrossFilter = 32.0;
constexpr double kMinSpanInFilterBandwidths = 3.0;

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

/// Mean of exp(i k delta) over the cell.
std::complex<double> cell_phasor(const SpectralCell& cell, double k) {
    return std::polar(sinc(0.5 * k * cell.width()), k * cell.mid());
}

/// k such that the optical phase of a frequency offset delta (THz) over `dl_nm` is k * delta.
double phase_slope(double dl_nm) { return units::optical_phase(1.0, dl_nm); }

void check_distinguishability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(fmt::format("distinguishability {} outside [0, 1]", p));
}

ScanResult make_scan(std::string label, units::LengthUnit unit, const std::vector<double>& positions,
                     const std::function<double(double)>& rate_at_nm) {
    ScanResult scan{std::move(label), unit, {}};
    scan.samples.reserve(positions.size());
    for (double pos : positions) {
        // Clamp roundoff below zero; rates are probabilities per trial.
        scan.samples.push_back({pos, std::max(0.0, rate_at_nm(units::to_nm(pos, unit))), std::nullopt, std::nullopt});
    }
    scan.validate();
    return scan;
}

}  // namespace

double FilterSpectrum::center_thz() const { return units::wavelength_to_thz(center_nm); }

double FilterSpectrum::bandwidth_thz() const { return units::band_width_thz(center_nm, bandwidth_nm); }

double FilterSpectrum::support_lo_thz() const {
    if (shape == FilterShape::kGaussian) return -std::numeric_limits<double>::infinity();
    return units::wavelength_to_thz(center_nm + 0.5 * bandwidth_nm);
}

double FilterSpectrum::support_hi_thz() const {
    if (shape == FilterShape::kGaussian) return std::numeric_limits<double>::infinity();
    return units::wavelength_to_thz(center_nm - 0.5 * bandwidth_nm);
}

double FilterSpectrum::transmission(double thz) const {
    if (shape == FilterShape::kRectangular) return (thz >= support_lo_thz() && thz <= support_hi_thz()) ? 1.0 : 0.0;
    const double d = (thz - center_thz()) / bandwidth_thz();
    return std::exp(-kFourLn2 * d * d);
}

double PumpSpectrum::degenerate_thz() const { return units::wavelength_to_thz(wavelength_nm); }

double PumpSpectrum::linewidth_thz() const { return units::hz_to_thz(linewidth_hz); }

SpectralGrid SpectralGrid::centered_on(const PumpSpectrum& pump, double span_thz, std::size_t points) {
    return {pump.degenerate_thz(), span_thz, points};
}

double SpectralGrid::spacing() const { return span_thz / static_cast<double>(points - 1); }

double SpectralGrid::detuning(std::size_t i) const {
    return -0.5 * span_thz + static_cast<double>(i) * spacing();
}

void SpectralGrid::validate() const {
    if (points < 3 || points % 2 == 0) throw ConfigError(fmt::format("grid points must be odd and >= 3, got {}", points));
    if (!(span_thz > 0.0)) throw ConfigError("grid span must be positive");
    if (!(center_thz > 0.0)) throw ConfigError("grid centre frequency must be positive");
}

BiphotonSpectralAmplitude::BiphotonSpectralAmplitude(SpectralGrid grid, PumpSpectrum pump, FilterSpectrum filter,
                                                     std::vector<SpectralCell> joint,
                                                     std::vector<SpectralCell> signal_marginal, double eps_spacing)
    : grid_(grid),
      pump_(pump),
      filter_(filter),
      joint_(std::move(joint)),
      signal_marginal_(std::move(signal_marginal)),
      eps_spacing_(eps_spacing) {}

double BiphotonSpectralAmplitude::joint_norm() const {
    double acc = 0.0;
    for (const auto& c : joint_) {
        acc += c.width() > 0.0 ? std::norm(c.amplitude) * c.width() * eps_spacing_ : std::norm(c.amplitude);
    }
    return acc;
}

double BiphotonSpectralAmplitude::rms_sum_offset_thz() const {
    double acc = 0.0;
    for (const auto& c : joint_) acc += c.weight * c.eps * c.eps;
    return std::sqrt(acc);
}

double BiphotonSpectralAmplitude::marginal_rms_width_nm() const {
    // Moments of a uniform density over each cell.
    double m1 = 0.0, m2 = 0.0;
    for (const auto& c : signal_marginal_) {
        const double nu = c.mid() + 0.5 * c.eps;
        m1 += c.weight * nu;
        m2 += c.weight * (nu * nu + c.width() * c.width() / 12.0);
    }
    const double sigma_thz = std::sqrt(std::max(0.0, m2 - m1 * m1));
    const double lambda = units::thz_to_wavelength(degenerate_thz() + m1);
    return kFwhmPerSigma * sigma_thz * lambda * lambda / units::kSpeedOfLightNmThz;
}

double BiphotonSpectralAmplitude::marginal_support_width_nm() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& c : signal_marginal_) {
        if (c.weight <= 0.0) continue;
        lo = std::min(lo, c.lo + 0.5 * c.eps);
        hi = std::max(hi, c.hi + 0.5 * c.eps);
    }
    const double nu0 = degenerate_thz();
    return units::thz_to_wavelength(nu0 + lo) - units::thz_to_wavelength(nu0 + hi);
}

BiphotonSpectralAmplitude build_biphoton(const PumpSpectrum& pump, double phasematch_bandwidth_nm,
                                         const FilterSpectrum& filter, const SpectralGrid& grid) {
    grid.validate();
    if (!(pump.wavelength_nm > 0.0)) throw ConfigError("pump wavelength must be positive");
    if (!(pump.linewidth_hz >= 0.0)) throw ConfigError("pump linewidth must be non-negative");
    if (!(filter.bandwidth_nm > 0.0) || !(filter.center_nm > 0.5 * filter.bandwidth_nm)) {
        throw ConfigError("filter needs a positive bandwidth below twice its centre wavelength");
    }
    if (!(phasematch_bandwidth_nm >= 0.0) || phasematch_bandwidth_nm >= 2.0 * pump.wavelength_nm) {
        throw ConfigError(fmt::format("phase-matching bandwidth {} nm out of range", phasematch_bandwidth_nm));
    }
    const double nu0 = pump.degenerate_thz();
    if (std::abs(grid.center_thz - nu0) > 1e-9 * nu0) {
        throw ConfigError("spectral grid must be centred on the degenerate pair frequency");
    }
    const double filter_width = filter.bandwidth_thz();
    if (grid.span_thz < kMinSpanInFilterBandwidths * filter_width) {
        throw ConfigError(fmt::format("grid span {:.4g} THz covers less than {} filter bandwidths ({:.4g} THz)",
                                      grid.span_thz, kMinSpanInFilterBandwidths, filter_width));
    }
    const double h = grid.spacing();
    if (filter_width / h < kMinNodesAcrossFilter) {
        throw ConfigError(fmt::format("grid too coarse: {:.1f} points across the filter band, need {}",
                                      filter_width / h, kMinNodesAcrossFilter));
    }

    // Sum-frequency axis.
    std::vector<double> eps_nodes{0.0};
    std::vector<double> eps_density{1.0};
    double eps_step = 1.0;
    if (pump.shape == PumpShape::kGaussian && pump.linewidth_hz > 0.0) {
        const double sigma = pump.linewidth_thz() / kFwhmPerSigma;
        const double half = 5.0 * sigma;
        eps_step = 2.0 * half / static_cast<double>(kPumpGridPoints - 1);
        eps_nodes.clear();
        eps_density.clear();
        for (std::size_t j = 0; j < kPumpGridPoints; j++) {
            const double e = -half + static_cast<double>(j) * eps_step;
            eps_nodes.push_back(e);
            eps_density.push_back(std::exp(-0.5 * e * e / (sigma * sigma)));
        }
    }

    const bool point_mass = phasematch_bandwidth_nm == 0.0;
    const double pm_fwhm = point_mass ? 0.0 : units::band_width_thz(pump.wavelength_nm, phasematch_bandwidth_nm);
    auto phasematch = [&](double delta) {
        const double d = delta / pm_fwhm;
        return std::exp(-kFourLn2 * d * d);
    };
    const bool rect = filter.shape == FilterShape::kRectangular;
    auto filter_factor = [&](double thz) { return rect ? 1.0 : filter.transmission(thz); };
    const double s_lo = filter.support_lo_thz();
    const double s_hi = filter.support_hi_thz();

    std::vector<SpectralCell> joint, marginal;
    auto emit = [&](std::vector<SpectralCell>& out, double lo, double hi, double eps, double pump_w, bool both) {
        auto density = [&](double d) {
            double v = phasematch(d) * filter_factor(nu0 + d + 0.5 * eps);
            if (both) v *= filter_factor(nu0 - d + 0.5 * eps);
            return v;
        };
        if (!(hi > lo)) return;
        const double simpson = (density(lo) + 4.0 * density(0.5 * (lo + hi)) + density(hi)) / 6.0 * (hi - lo);
        const double w = simpson * pump_w * eps_step;
        if (w > 0.0) out.push_back({lo, hi, eps, w, {}});
    };

    for (std::size_t j = 0; j < eps_nodes.size(); j++) {
        const double eps = eps_nodes[j];
        // Detunings that keep the signal (and, for the joint, the idler) inside the filter support.
        const double sig_lo = s_lo - nu0 - 0.5 * eps;
        const double sig_hi = s_hi - nu0 - 0.5 * eps;
        const double idl_lo = nu0 + 0.5 * eps - s_hi;
        const double idl_hi = nu0 + 0.5 * eps - s_lo;
        if (point_mass) {
            const double t_s = filter.transmission(nu0 + 0.5 * eps);
            const double w_m = t_s * eps_density[j] * eps_step;
            if (w_m > 0.0) {
                marginal.push_back({0.0, 0.0, eps, w_m, {}});
                joint.push_back({0.0, 0.0, eps, w_m * t_s, {}});
            }
            continue;
        }
        for (std::size_t i = 0; i < grid.points; i++) {
            const double d = grid.detuning(i);
            const double c_lo = d - 0.5 * h;
            const double c_hi = d + 0.5 * h;
            emit(marginal, std::max(c_lo, sig_lo), std::min(c_hi, sig_hi), eps, eps_density[j], false);
            emit(joint, std::max({c_lo, sig_lo, idl_lo}), std::min({c_hi, sig_hi, idl_hi}), eps, eps_density[j],
                 true);
        }
    }

    auto normalize = [&](std::vector<SpectralCell>& cells, const char* what) {
        double total = 0.0;
        for (const auto& c : cells) total += c.weight;
        if (!(total > 0.0)) throw ConfigError(fmt::format("{} spectrum is empty: filter misses the pair spectrum", what));
        for (auto& c : cells) {
            c.weight /= total;
            const double area = c.width() > 0.0 ? c.width() * eps_step : 1.0;
            c.amplitude = std::sqrt(c.weight / area);
        }
    };
    normalize(joint, "joint");
    normalize(marginal, "marginal");

    return BiphotonSpectralAmplitude(grid, pump, filter, std::move(joint), std::move(marginal), eps_step);
}

ScanResult hom_scan(const BiphotonSpectralAmplitude& bsa, const std::vector<double>& delta_l1, units::LengthUnit unit,
                    double distinguishability) {
    check_distinguishability(distinguishability);
    const auto& cells = bsa.joint();
    return make_scan("delta_L1", unit, delta_l1, [&](double dl) {
        // Relative phase of the exchanged pair: 2 pi (nu_s - nu_i) tau = 2 pi (2 delta) dL / c.
        const double k = -2.0 * phase_slope(dl);
        double overlap = 0.0;
        for (const auto& c : cells) overlap += c.weight * cell_phasor(c, k).real();
        return 0.5 * (1.0 - distinguishability * overlap);
    });
}

double one_photon_envelope(const BiphotonSpectralAmplitude& bsa, double dl_nm) {
    const double k = phase_slope(dl_nm);
    std::complex<double> acc{};
    for (const auto& c : bsa.signal_marginal()) {
        acc += c.weight * std::polar(1.0, units::optical_phase(bsa.degenerate_thz() + 0.5 * c.eps, dl_nm)) *
               cell_phasor(c, k);
    }
    return std::abs(acc);
}

double two_photon_envelope(const BiphotonSpectralAmplitude& bsa, double dl_nm) {
    std::complex<double> acc{};
    for (const auto& c : bsa.joint()) {
        acc += c.weight * std::polar(1.0, units::optical_phase(2.0 * bsa.degenerate_thz() + c.eps, dl_nm));
    }
    return std::abs(acc);
}

ScanResult mz_one_photon_scan(const BiphotonSpectralAmplitude& bsa, const std::vector<double>& delta_l2,
                              units::LengthUnit unit, double distinguishability) {
    check_distinguishability(distinguishability);
    const double nu0 = bsa.degenerate_thz();
    const auto& cells = bsa.signal_marginal();
    return make_scan("delta_L2", unit, delta_l2, [&](double dl) {
        const double k = phase_slope(dl);
        double fringe = 0.0;
        for (const auto& c : cells) {
            const auto carrier = std::polar(1.0, units::optical_phase(nu0 + 0.5 * c.eps, dl));
            fringe += c.weight * (carrier * cell_phasor(c, k)).real();
        }
        return distinguishability * 0.5 * (1.0 - fringe) + (1.0 - distinguishability) * 0.5;
    });
}

ScanResult mz_two_photon_scan(const BiphotonSpectralAmplitude& bsa, const std::vector<double>& delta_l2,
                              units::LengthUnit unit, double distinguishability) {
    check_distinguishability(distinguishability);
    const double two_nu0 = 2.0 * bsa.degenerate_thz();
    const auto& cells = bsa.joint();
    return make_scan("delta_L2", unit, delta_l2, [&](double dl) {
        // nu_s + nu_i = 2 nu0 + eps regardless of the detuning.
        double fringe = 0.0;
        for (const auto& c : cells) fringe += c.weight * std::cos(units::optical_phase(two_nu0 + c.eps, dl));
        return distinguishability * 0.5 * (1.0 - fringe) + (1.0 - distinguishability) * 0.5;
    });
}

CoherenceLengths coherence_lengths(const FilterSpectrum& filter, const PumpSpectrum& pump) {
    CoherenceLengths out;
    if (filter.bandwidth_nm > 0.0) {
        out.one_photon_um = filter.center_nm * filter.center_nm / filter.bandwidth_nm * 1e-3;
    } else {
        out.one_photon_um = std::numeric_limits<double>::infinity();
        out.one_photon_unbounded = true;
    }
    if (pump.shape == PumpShape::kGaussian && pump.linewidth_hz > 0.0) {
        out.two_photon_cm = units::kSpeedOfLight / pump.linewidth_hz * 100.0;
    } else {
        out.two_photon_cm = std::numeric_limits<double>::infinity();
        out.two_photon_unbounded = true;
    }
    return out;
}

}  // namespace biphoton
