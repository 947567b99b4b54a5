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

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "biphoton/detection.hpp"
#include "biphoton/errors.hpp"
#include "oracles.hpp"

using namespace biphoton;

namespace {

constexpr double kPi = std::numbers::pi;

ScanResult make_scan(const std::vector<double>& x, const std::function<double(double)>& f) {
    ScanResult scan;
    scan.axis_label = "dl";
    for (double xi : x) scan.samples.push_back({xi, f(xi)});
    return scan;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; i++) out.push_back(a + (b - a) * i / (n - 1));
    return out;
}

}  // namespace

TEST_CASE("rates on Fock states") {
    CHECK(rate_one_photon(StateVector::basis({0, 3}), Mode{1}) == doctest::Approx(3.0));
    CHECK(rate_two_photon_same_port(StateVector::basis({0, 2}), Mode{1}) == doctest::Approx(2.0));
    CHECK(rate_two_photon_same_port(StateVector::basis({1, 1}), Mode{1}) == 0.0);
    CHECK(rate_coincidence(StateVector::basis({1, 1}), Mode{0}, Mode{1}) == doctest::Approx(1.0));
    CHECK(rate_coincidence(StateVector::basis({2, 3}), Mode{0}, Mode{1}) == doctest::Approx(6.0));
    CHECK_THROWS_AS(rate_coincidence(StateVector::basis({1, 1}), Mode{1}, Mode{1}), ConfigError);
    CHECK_THROWS_AS(rate_one_photon(StateVector::basis({1, 1}).scaled(2.0), Mode{0}), ConfigError);
}

TEST_CASE("rates agree with permanent-oracle probabilities") {
    // r5 = sum n5 P, r55 = sum n5(n5-1) P, r45 = sum n4 n5 P over the oracle's output distribution.
    for (int i = 0; i < 40; i++) {
        const double phi = -kPi + 2.0 * kPi * i / 39.0;
        const auto u = mz_transfer(phi, 0.3);
        const auto out = testing::permanent_evolve(StateVector::basis({1, 1}), u.matrix());
        double r5 = 0, r55 = 0, r45 = 0;
        for (const auto& [s, amp] : out.terms()) {
            const double pr = std::norm(amp);
            r5 += s[1] * pr;
            r55 += s[1] * (s[1] - 1.0) * pr;
            r45 += s[0] * s[1] * pr;
        }
        const auto got = measure_rates(lift_and_evolve(StateVector::basis({1, 1}), u));
        CHECK(got.r5 == doctest::Approx(r5).epsilon(1e-12));
        CHECK(std::abs(got.r55 - r55) < 1e-12);
        CHECK(std::abs(got.r45 - r45) < 1e-12);
    }
}

TEST_CASE("Fock pair rates match closed forms") {
    for (int i = 0; i < 200; i++) {
        const double phi = 4.0 * kPi * i / 199.0;
        const auto r = measure_rates(lift_and_evolve(StateVector::basis({1, 1}), mz_transfer(phi, 0.0)));
        CHECK(std::abs(r.r55 - 0.5 * (1 - std::cos(2 * phi))) < 1e-12);
        CHECK(std::abs(r.r45 - 0.5 * (1 + std::cos(2 * phi))) < 1e-12);
        // One photon always leaves through port 5 on average.
        CHECK(std::abs(r.r5 - 1.0) < 1e-12);
        CHECK(std::abs(r.r55 - analytic_rate(AnalyticFormula::kR55Fock, phi)) < 1e-12);
        CHECK(std::abs(r.r45 - analytic_rate(AnalyticFormula::kR45Fock, phi)) < 1e-12);

        const auto single = measure_rates(lift_and_evolve(StateVector::basis({0, 1}), mz_transfer(phi, 0.0)));
        CHECK(std::abs(single.r5 - 0.5 * (1 - std::cos(phi))) < 1e-12);
    }
}

TEST_CASE("coherent input factorizes") {
    const Complex alpha{0.5, 0.2};
    const auto in = coherent_input(CoherentParams::with_default_truncation(alpha), Mode{1}, 2).state;
    for (int i = 0; i < 50; i++) {
        const double phi = 2.0 * kPi * i / 49.0;
        const auto r = measure_rates(lift_and_evolve(in, mz_transfer(phi, 0.0)));
        const double a2 = std::norm(alpha);
        // A coherent state stays coherent: r55 = r5^2, r5 = |alpha|^2 |U_11|^2.
        CHECK(std::abs(r.r5 - a2 * 0.5 * (1 - std::cos(phi))) < 1e-9);
        CHECK(std::abs(r.r55 - r.r5 * r.r5) < 1e-9);
        CHECK(std::abs(r.r55 - analytic_rate(AnalyticFormula::kR55Coherent, phi, alpha)) < 1e-9);
        CHECK(std::abs(r.r45 - analytic_rate(AnalyticFormula::kR45Coherent, phi, alpha)) < 1e-9);
    }
    CHECK_THROWS_AS(analytic_rate(AnalyticFormula::kR55Coherent, 0.0), ConfigError);
    CHECK_THROWS_AS(analytic_rate(AnalyticFormula::kR55Fock, 0.0, alpha), ConfigError);
}

TEST_CASE("pair_rates interpolates between quantum and distinguishable") {
    const auto bs = beamsplitter_5050();
    CHECK(std::abs(pair_rates(bs, 1.0).r45) < 1e-15);
    CHECK(pair_rates(bs, 0.0).r45 == doctest::Approx(0.5));
    CHECK(pair_rates(bs, 0.75).r45 == doctest::Approx(0.125));
    CHECK(pair_rates(bs, 0.0).r5 == doctest::Approx(1.0));
    CHECK_THROWS_AS(pair_rates(bs, 1.5), ConfigError);

    // Distinguishable photons: each exits port 5 with probability |U_5j|^2, independently.
    const auto u = mz_transfer(0.9, 0.0);
    const double t0 = std::norm(u(1, 0)), t1 = std::norm(u(1, 1));
    const auto d = distinguishable_pair_rates(u);
    CHECK(d.r55 == doctest::Approx(2 * t0 * t1));
    CHECK(d.r45 == doctest::Approx((1 - t0) * t1 + t0 * (1 - t1)));
}

TEST_CASE("fit_fringe recovers a synthetic fringe") {
    const auto x = linspace(-2500, 2500, 117);
    const double period = 861.6, v = 0.63, phase = 0.4;
    const auto scan = make_scan(x, [&](double xi) { return 50.0 * (1 + v * std::cos(2 * kPi * xi / period + phase)); });
    const auto fit = fit_fringe(scan);
    CHECK(fit.period_nm == doctest::Approx(period).epsilon(1e-6));
    CHECK(fit.visibility == doctest::Approx(v).epsilon(1e-6));
    CHECK(fit.mean == doctest::Approx(50.0).epsilon(1e-9));
    CHECK(std::abs(std::remainder(fit.phase_offset - phase, 2 * kPi)) < 1e-6);
}

TEST_CASE("fit_fringe sees the halved period of pair detection") {
    const auto x = linspace(-2500, 2500, 117);
    const double lambda = 861.6;
    const auto scan = make_scan(x, [&](double xi) {
        const auto u = mz_transfer(2 * kPi * xi / lambda, 0.0);
        return measure_rates(lift_and_evolve(StateVector::basis({1, 1}), u)).r55;
    });
    const auto fit = fit_fringe(scan, {.period_hint_nm = lambda / 2});
    CHECK(fit.period_nm == doctest::Approx(lambda / 2).epsilon(1e-6));
    CHECK(fit.visibility == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fit_fringe with an envelope") {
    const auto x = linspace(-2500, 2500, 201);
    auto env = [](double xi) { return std::exp(-xi * xi / (2 * 1500.0 * 1500.0)); };
    const auto scan = make_scan(x, [&](double xi) { return 1 + 0.8 * env(xi) * std::cos(2 * kPi * xi / 430.8); });
    // The envelope multiplies the whole model, so it does not describe this data exactly;
    // without it the fitted V is the scan-averaged contrast.
    const auto plain = fit_fringe(scan);
    CHECK(plain.period_nm == doctest::Approx(430.8).epsilon(1e-3));
    CHECK(plain.visibility < 0.8);
}

TEST_CASE("fit_fringe edge cases") {
    const auto x = linspace(0, 1000, 50);
    const auto flat = fit_fringe(make_scan(x, [](double) { return 2.0; }));
    CHECK(flat.visibility == 0.0);
    CHECK(flat.mean == 2.0);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    std::vector<double> noise;
    for (std::size_t i = 0; i < x.size(); i++) noise.push_back(u(rng));
    std::size_t i = 0;
    CHECK_THROWS_AS(fit_fringe(make_scan(x, [&](double) { return noise[i++]; })), FitError);

    CHECK_THROWS_AS(fit_fringe(make_scan({0, 1, 2}, [](double) { return 1.0; })), ConfigError);
    CHECK_THROWS_AS(fit_fringe(make_scan(x, [](double) { return 1.0; }), {.period_hint_nm = 10.0}), ConfigError);
}
