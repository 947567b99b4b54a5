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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include "biphoton/detection.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

struct LinearFit {
    Eigen::Vector3d coeffs;  // mean, cosine, sine
    double rss = 0.0;
};

// Solves y ~ e(x) (a + b cos(kx) + c sin(kx)) for (a, b, c) at fixed k.
LinearFit solve_linear(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& env, double k) {
    const auto n = x.size();
    Eigen::MatrixXd design(n, 3);
    for (Eigen::Index i = 0; i < n; i++) {
        design(i, 0) = env[i];
        design(i, 1) = env[i] * std::cos(k * x[i]);
        design(i, 2) = env[i] * std::sin(k * x[i]);
    }
    LinearFit fit;
    fit.coeffs = design.colPivHouseholderQr().solve(y);
    fit.rss = (design * fit.coeffs - y).squaredNorm();
    return fit;
}

double median_step(const std::vector<double>& x) {
    std::vector<double> steps;
    for (std::size_t i = 1; i < x.size(); i++) steps.push_back(x[i] - x[i - 1]);
    std::nth_element(steps.begin(), steps.begin() + steps.size() / 2, steps.end());
    return steps[steps.size() / 2];
}

}  // namespace

FringeSummary fit_fringe(const ScanResult& scan, const FringeFitOptions& options) {
    scan.validate();
    if (scan.samples.size() < 4) throw ConfigError("fringe fit needs at least 4 samples");

    const auto xs = scan.positions_nm();
    const auto ys = scan.rates();
    const auto n = static_cast<Eigen::Index>(xs.size());
    const double span = xs.back() - xs.front();
    const double x_mid = 0.5 * (xs.front() + xs.back());
    const double step = median_step(xs);

    double f_lo = 1.0 / span;
    double f_hi = 0.5 / step;
    if (options.period_hint_nm) {
        const double hint = *options.period_hint_nm;
        if (!(hint > 0.0)) throw ConfigError("period hint must be positive");
        if (step > 0.5 * hint) {
            throw ConfigError(fmt::format("sampling step {:.4g} nm is coarser than half the expected period {:.4g} nm",
                                          step, hint));
        }
        f_lo = std::max(f_lo, 1.0 / (1.5 * hint));
        f_hi = std::min(f_hi, 1.5 / hint);
    }
    if (!(f_hi > f_lo)) throw ConfigError("scan too short to resolve a fringe period");

    Eigen::VectorXd x(n), y(n), env(n);
    for (Eigen::Index i = 0; i < n; i++) {
        x[i] = xs[i] - x_mid;
        y[i] = ys[i];
        env[i] = options.envelope ? options.envelope(xs[i]) : 1.0;
    }

    const double mean = y.mean();
    const double spread = (y.array() - mean).abs().maxCoeff();
    if (spread <= 1e-12 * std::max(std::abs(mean), 1e-300)) {
        FringeSummary flat;
        flat.period_nm = options.period_hint_nm.value_or(span);
        flat.mean = mean;
        return flat;
    }

    // Periodogram seed, oversampled 8x relative to the natural resolution 1/span.
    const auto bins = static_cast<std::size_t>(std::ceil((f_hi - f_lo) * span * 8.0)) + 1;
    double best_power = -1.0;
    double best_f = f_lo;
    for (std::size_t b = 0; b < bins; b++) {
        const double f = f_lo + (f_hi - f_lo) * static_cast<double>(b) / static_cast<double>(bins - 1);
        std::complex<double> acc{};
        for (Eigen::Index i = 0; i < n; i++) {
            acc += (y[i] - mean) * std::polar(1.0, -units::kTwoPi * f * x[i]);
        }
        if (std::norm(acc) > best_power) {
            best_power = std::norm(acc);
            best_f = f;
        }
    }

    const double k_lo = units::kTwoPi * std::max(best_f - 0.5 / span, 0.25 * best_f);
    const double k_hi = units::kTwoPi * (best_f + 0.5 / span);
    auto objective = [&](double k) { return solve_linear(x, y, env, k).rss; };
    const auto [k_best, rss] =
        boost::math::tools::brent_find_minima(objective, k_lo, k_hi, std::numeric_limits<double>::digits / 2 + 4);

    const auto fit = solve_linear(x, y, env, k_best);
    const double a = fit.coeffs[0];
    const double b = fit.coeffs[1];
    const double c = fit.coeffs[2];
    if (!(a > 0.0)) throw FitError(fmt::format("fitted fringe mean {:.4g} is not positive", a));

    FringeSummary out;
    out.mean = a;
    out.visibility = std::clamp(std::hypot(b, c) / a, 0.0, 1.0);
    out.period_nm = units::kTwoPi / k_best;
    out.phase_offset = std::remainder(-std::atan2(c, b) - k_best * x_mid, units::kTwoPi);
    out.residual = std::sqrt(rss / static_cast<double>(n));
    if (out.residual > options.max_relative_residual * std::abs(a)) {
        throw FitError(fmt::format("fringe fit residual {:.4g} exceeds {:.3g} of the mean {:.4g}", out.residual,
                                   options.max_relative_residual, a));
    }
    return out;
}

}  // namespace biphoton
