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
#include <numbers>

#include <Eigen/Dense>
#include <fmt/format.h>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "biphoton/errors.hpp"
#include "biphoton/spectral.hpp"

namespace biphoton {

namespace {

constexpr double kPi = std::numbers::pi;
// sinc(u) = 1/2 at u = 1.89549...
constexpr double kSincHalfPoint = 1.8954942670339809;

// Residuals of A (1 - V sinc(pi (x - x0) / w)); parameters (A, V, x0, w).
struct DipResidual : Eigen::DenseFunctor<double> {
    const Eigen::VectorXd& x;
    const Eigen::VectorXd& y;

    DipResidual(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys)
        : DenseFunctor<double>(4, static_cast<int>(xs.size())), x(xs), y(ys) {}

    static void sinc_and_slope(double u, double& s, double& ds) {
        if (std::abs(u) < 1e-6) {
            s = 1.0 - u * u / 6.0;
            ds = -u / 3.0;
        } else {
            s = std::sin(u) / u;
            ds = (u * std::cos(u) - std::sin(u)) / (u * u);
        }
    }

    int operator()(const InputType& p, ValueType& fvec) const {
        for (Eigen::Index i = 0; i < x.size(); i++) {
            double s, ds;
            sinc_and_slope(kPi * (x[i] - p[2]) / p[3], s, ds);
            fvec[i] = p[0] * (1.0 - p[1] * s) - y[i];
        }
        return 0;
    }

    int df(const InputType& p, JacobianType& jac) const {
        for (Eigen::Index i = 0; i < x.size(); i++) {
            const double u = kPi * (x[i] - p[2]) / p[3];
            double s, ds;
            sinc_and_slope(u, s, ds);
            jac(i, 0) = 1.0 - p[1] * s;
            jac(i, 1) = -p[0] * s;
            jac(i, 2) = p[0] * p[1] * ds * kPi / p[3];
            jac(i, 3) = p[0] * p[1] * ds * u / p[3];
        }
        return 0;
    }
};

}  // namespace

DipSummary fit_hom_dip(const ScanResult& scan, double max_relative_residual) {
    scan.validate();
    const auto xs = scan.positions_nm();
    const auto ys = scan.rates();
    if (xs.size() < 8) throw ConfigError("dip fit needs at least 8 samples");
    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xs.data(), n);
    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ys.data(), n);

    // Seeds: baseline from the outer tenth on each side, centre at the minimum,
    // width from the half-depth crossing.
    const auto wing = std::max<Eigen::Index>(1, n / 10);
    const double baseline = 0.5 * (y.head(wing).mean() + y.tail(wing).mean());
    Eigen::Index imin = 0;
    const double ymin = y.minCoeff(&imin);
    if (!(baseline > 0.0)) throw FitError("dip baseline is not positive");
    const double depth = 1.0 - ymin / baseline;
    if (depth <= 1e-9) {
        return {0.0, baseline, x[imin], x[n - 1] - x[0], std::sqrt((y.array() - baseline).square().mean())};
    }
    const double half_level = baseline * (1.0 - 0.5 * depth);
    Eigen::Index right = imin;
    while (right + 1 < n && y[right] < half_level) right++;
    Eigen::Index left = imin;
    while (left > 0 && y[left] < half_level) left--;
    const double half_width = std::max(0.5 * (x[right] - x[left]), x[std::min<Eigen::Index>(1, n - 1)] - x[0]);

    Eigen::VectorXd params(4);
    params << baseline, depth, x[imin], kPi * half_width / kSincHalfPoint;

    DipResidual functor(x, y);
    Eigen::LevenbergMarquardt<DipResidual> lm(functor);
    const auto status = lm.minimize(params);
    using Status = Eigen::LevenbergMarquardtSpace::Status;
    if (status == Status::ImproperInputParameters || status == Status::TooManyFunctionEvaluation) {
        throw FitError(fmt::format("HOM dip fit did not converge (status {})", static_cast<int>(status)));
    }

    Eigen::VectorXd resid(n);
    functor(params, resid);
    DipSummary out;
    out.baseline = params[0];
    out.visibility = params[1];
    out.center_nm = params[2];
    out.width_nm = std::abs(params[3]);
    out.residual = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
    if (!(out.baseline > 0.0) || out.residual > max_relative_residual * out.baseline) {
        throw FitError(fmt::format("HOM dip fit residual {:.4g} too large for baseline {:.4g}", out.residual,
                                   out.baseline));
    }
    return out;
}

}  // namespace biphoton
