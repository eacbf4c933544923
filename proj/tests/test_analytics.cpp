// SPDX-License-Identifier: Apache-2.0
//
// risnr - SNR statistics of RIS-aided MIMO links under fading and phase noise
// Copyright (C) 2026 The risnr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risnr/analytics.hpp"
#include "risnr/errors.hpp"
#include "risnr/samplers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <boost/math/distributions/non_central_chi_squared.hpp>

#include <cmath>
#include <numbers>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace risnr;

namespace {

constexpr double kPi = std::numbers::pi;

SystemConfig config(ChannelKind kind, std::size_t n, PhaseNoiseModel noise, std::size_t nt = 4, std::size_t nr = 4)
{
    SystemConfig c;
    c.kind = kind;
    c.n_ris = n;
    c.n_tx = nt;
    c.n_rx = nr;
    c.noise = noise;
    return c;
}

double af_slope(ChannelKind kind, const PhaseNoiseModel &noise, std::size_t n_lo = 64, std::size_t n_hi = 1024)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (std::size_t n = n_lo; n <= n_hi; n *= 2, ++k) {
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(snr_mean_var(config(kind, n, noise)).moments.af);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

std::vector<PhaseNoiseModel> table_models()
{
    return {PhaseNoiseModel::zero(), PhaseNoiseModel::uniform_full(), PhaseNoiseModel::uniform_scaled(0.2),
            PhaseNoiseModel::uniform_scaled(0.5), PhaseNoiseModel::von_mises(0.5), PhaseNoiseModel::von_mises(2.0)};
}

} // namespace

TEST_CASE("double-eigenvector sum moments", "[analytics]")
{
    const auto one = upsilon_moments(1, trig_moments(PhaseNoiseModel::zero()));
    CHECK_THAT(one.m1_re, WithinRel(1.0, 1e-14));
    CHECK_THAT(one.m2_re, WithinRel(1.0, 1e-14));
    CHECK(one.var_re == 0.0);
    CHECK(one.degenerate_re);

    for (std::size_t n : {1u, 7u, 64u, 1000u}) {
        const auto u = upsilon_moments(n, trig_moments(PhaseNoiseModel::uniform_full()));
        CHECK((u.m1_re == 0.0 && u.m1_im == 0.0));
        CHECK_THAT(u.m2_re, WithinRel(0.5 / static_cast<double>(n), 1e-14));
        CHECK_THAT(u.m2_im, WithinRel(0.5 / static_cast<double>(n), 1e-14));
    }

    const auto z64 = upsilon_moments(64, trig_moments(PhaseNoiseModel::zero()));
    CHECK_THAT(z64.m1_re, WithinRel(0.788472093566755, 1e-12));
    CHECK_THAT(z64.m2_re + z64.m2_im, WithinRel(0.622836989520146, 1e-12));
    CHECK_THROWS_AS(upsilon_moments(0, {}), ParameterDomainError);
}

TEST_CASE("single-eigenvector sum moments", "[analytics]")
{
    const auto one = psi_moments(1, trig_moments(PhaseNoiseModel::zero()));
    CHECK_THAT(one.m1_re, WithinRel(1.0, 1e-14));
    CHECK_THAT(one.m2_re, WithinRel(1.0, 1e-14));

    const auto z64 = psi_moments(64, trig_moments(PhaseNoiseModel::zero()));
    CHECK_THAT(z64.m1_re, WithinRel(7.103676089763125, 1e-12));
    CHECK_THAT(z64.m2_re, WithinRel(50.48008429403924, 1e-12));

    for (std::size_t n : {1u, 16u, 512u}) {
        const auto u = psi_moments(n, trig_moments(PhaseNoiseModel::uniform_full()));
        CHECK(u.m1_re == 0.0);
        CHECK_THAT(u.m2_re, WithinRel(0.5, 1e-15));
    }
}

TEST_CASE("moment identities hold for every law", "[analytics][property]")
{
    for (const auto &m : table_models()) {
        for (std::size_t n : {1u, 2u, 16u, 64u, 256u, 4096u}) {
            for (auto kind : {SumKind::upsilon, SumKind::psi}) {
                const auto p = sum_moments(kind, n, trig_moments(m));
                CAPTURE(m.describe(), n);
                CHECK(p.var_re >= 0.0);
                CHECK(p.var_im >= 0.0);
                // sigma^2 (1 + mu^2) recovers the second moment.
                const double second = (p.degenerate_re ? p.m1_re * p.m1_re : p.var_re * (1 + p.noncent_re)) +
                                      (p.degenerate_im ? p.m1_im * p.m1_im : p.var_im * (1 + p.noncent_im));
                CHECK_THAT(second, WithinRel(p.m2_re + p.m2_im, 1e-12));
                if (trig_moments(m).c1 == 0.0) {
                    CHECK(p.m1_re == 0.0);
                }
            }
        }
    }
}

TEST_CASE("Re/Im covariance", "[analytics]")
{
    for (const auto &m : table_models()) {
        for (auto kind : {SumKind::upsilon, SumKind::psi}) {
            CHECK(re_im_covariance(64, trig_moments(m), kind, sin2_mean(m)) == 0.0);
        }
    }
    const TrigMoments t{0.5, 0.3, 0.6, 0.4};
    CHECK_THAT(re_im_covariance(64, t, SumKind::upsilon, 0.2), WithinRel(-0.000608937922009340, 1e-10));
}

TEST_CASE("SNR mean and variance", "[analytics]")
{
    const auto rr = snr_mean_var(config(ChannelKind::rr, 64, PhaseNoiseModel::zero()));
    CHECK_THAT(rr.moments.mean, WithinRel(4484.901375845247, 1e-11));
    CHECK_THAT(rr.terms.lambda_mean_g, WithinRel(1.3258954375656955, 1e-12));
    CHECK_THAT(rr.terms.sum_second, WithinRel(0.622836989520146, 1e-12));
    CHECK_THAT(rr.moments.af, WithinRel(rr.moments.variance / (rr.moments.mean * rr.moments.mean), 1e-15));

    const auto lr = snr_mean_var(config(ChannelKind::lr, 64, PhaseNoiseModel::uniform_full()));
    CHECK_THAT(lr.moments.mean, WithinRel(339.429232016818, 1e-11));
    CHECK(lr.terms.lambda_mean_h == 1.0);

    // At N = M = 1 the gamma law of the largest eigenvalue has a negative mean.
    CHECK_THROWS_AS(snr_mean_var(config(ChannelKind::rr, 1, PhaseNoiseModel::zero(), 1, 1)), NumericDomainError);

    // Deterministic sum: only the eigenvalue factors fluctuate.
    const TracyWidomMoments shifted{-1.0, 0.8132};
    const auto tiny = snr_mean_var(config(ChannelKind::rr, 1, PhaseNoiseModel::zero(), 1, 1), shifted);
    const auto g = lambda_plus_gamma(1, 1, shifted);
    const double t = g.variance + g.mean * g.mean;
    CHECK_THAT(tiny.moments.variance, WithinRel(t * t - g.mean * g.mean * g.mean * g.mean, 1e-12));

    for (const auto &m : table_models()) {
        for (auto kind : {ChannelKind::rr, ChannelKind::lr}) {
            const auto a = snr_mean_var(config(kind, 128, m));
            CHECK(a.moments.mean > 0.0);
            CHECK(a.moments.variance >= 0.0);
            CHECK(a.terms.sum_fourth > 0.0);
        }
    }
}

TEST_CASE("amount of fading", "[analytics]")
{
    CHECK(amount_of_fading({2.0, 4.0, 0.0}) == 1.0);
    CHECK(amount_of_fading({3.0, 0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(amount_of_fading({0.0, 1.0, 0.0}), NumericDomainError);
    const auto big = snr_mean_var(config(ChannelKind::rr, 8192, PhaseNoiseModel::uniform_full()));
    CHECK_THAT(big.moments.af, WithinAbs(1.0, 0.01));
}

TEST_CASE("AF slope on log-log axes", "[analytics][property]")
{
    for (auto kind : {ChannelKind::rr, ChannelKind::lr}) {
        for (const auto &m : table_models()) {
            CAPTURE(to_string(kind), m.describe());
            const double slope = af_slope(kind, m);
            const double c1 = trig_moments(m).c1;
            if (c1 == 0.0) {
                CHECK(std::abs(slope) <= 0.05);
            } else if (c1 > 0.5) {
                CHECK(std::abs(slope + 1.0) <= 0.1);
            } else {
                // Weak coherence moves the crossover from N^0 to N^-1 past N = 1024.
                CHECK(slope < -0.5);
                CHECK(std::abs(af_slope(kind, m, 4096, 65536) + 1.0) <= 0.1);
            }
        }
    }
}

TEST_CASE("scaling coefficients", "[analytics]")
{
    const auto rr = scaling_coefficients(config(ChannelKind::rr, 64, PhaseNoiseModel::zero()));
    CHECK_THAT(rr.o_e1, WithinRel(0.616850275068085, 1e-14));
    CHECK(rr.o_e0 == 1.0);
    CHECK_THAT(rr.zeta, WithinRel(-4.975432202225489, 1e-13));

    const auto lr = scaling_coefficients(config(ChannelKind::lr, 64, PhaseNoiseModel::uniform_full()));
    CHECK(lr.o_e0 == 4.0);
    CHECK(lr.o_e1 == 0.0);
    CHECK_THAT(lr.o_v0, WithinRel(16.0, 1e-15));
    CHECK_THAT(lr.zeta, WithinRel(-4.487716101112745, 1e-13));

    CHECK_THROWS_AS(scaling_coefficients(ChannelKind::rr, 4, 4, TrigMoments{0.5, 0.1, 0.5, 0.5}),
                    UnsupportedRegimeError);

    // Robustness ratios are at most one and equal one without noise.
    for (auto kind : {ChannelKind::rr, ChannelKind::lr}) {
        const auto ref = scaling_coefficients(kind, 4, 4, trig_moments(PhaseNoiseModel::zero()));
        for (const auto &m : table_models()) {
            const auto s = scaling_coefficients(kind, 4, 4, trig_moments(m));
            CHECK(s.o_e1 / ref.o_e1 <= 1.0);
            CHECK(s.o_v1 / ref.o_v1 <= 1.0 + 1e-15);
            CHECK((s.o_e1 == 0.0) == (trig_moments(m).c1 == 0.0));
        }
    }
}

TEST_CASE("scaling coefficients are the large-N limit of the closed forms", "[analytics]")
{
    // Guards the o_v1 coefficients (in particular the LR c1^4 term) against the
    // exact variance: V / N^3 -> o_v1, with O(N^-1/2) corrections.
    constexpr std::size_t n = 1u << 24;
    const double nd = static_cast<double>(n);
    for (auto kind : {ChannelKind::rr, ChannelKind::lr}) {
        for (const auto &m : {PhaseNoiseModel::zero(), PhaseNoiseModel::uniform_scaled(0.5),
                              PhaseNoiseModel::von_mises(2.0)}) {
            CAPTURE(to_string(kind), m.describe());
            const auto cfg = config(kind, n, m);
            const auto exact = snr_mean_var(cfg).moments;
            const auto s = scaling_coefficients(cfg);
            CHECK_THAT(exact.mean / (nd * nd), WithinRel(s.o_e1, 2e-3));
            CHECK_THAT(exact.variance / (nd * nd * nd), WithinRel(s.o_v1, 2e-2));
        }
    }
    // The LR c1^4 term with pi^4/16 in place of pi^2/16 misses the limit badly.
    {
        const auto cfg = config(ChannelKind::lr, n, PhaseNoiseModel::zero());
        const auto s = scaling_coefficients(cfg);
        const double alt = kPi * 16.0 + std::pow(kPi, 4) / 16.0 * 16.0 * s.zeta;
        CHECK(std::abs(alt - snr_mean_var(cfg).moments.variance / (nd * nd * nd)) > 1.0);
    }

    // Same limit without a coherent component.
    for (auto kind : {ChannelKind::rr, ChannelKind::lr}) {
        const auto cfg = config(kind, n, PhaseNoiseModel::uniform_full());
        const auto exact = snr_mean_var(cfg).moments;
        const auto s = scaling_coefficients(cfg);
        CHECK_THAT(exact.mean / nd, WithinRel(s.o_e0, 2e-3));
        CHECK_THAT(exact.variance / (nd * nd), WithinRel(s.o_v0, 2e-2));
    }
}

TEST_CASE("asymptotic moments", "[analytics]")
{
    const auto cfg = config(ChannelKind::rr, 64, PhaseNoiseModel::zero());
    const auto a = asymptotic_moments(cfg, 128);
    const auto b = asymptotic_moments(cfg, 256);
    CHECK(b.mean / a.mean == 4.0);
    CHECK(b.af * 2.0 == a.af);

    const auto full = config(ChannelKind::lr, 64, PhaseNoiseModel::uniform_full());
    CHECK(asymptotic_moments(full, 64).af == asymptotic_moments(full, 4096).af);
}

TEST_CASE("asymptotic mean within 15% of the closed form at N=256", "[analytics][known-gap][!mayfail]")
{
    // The leading-order law drops the (1 + sqrt(M/N))^2 growth of the eigenvalue
    // mean, which is still ~35% at N = 256 (M_G M_H ~ 1.35).
    SystemConfig cfg;
    cfg.n_ris = 256;
    const double exact = snr_mean_var(cfg).moments.mean;
    CHECK(std::abs(asymptotic_moments(cfg, 256).mean - exact) / exact < 0.15);
}

TEST_CASE("gamma fit", "[analytics]")
{
    const auto a = gamma_fit({2.0, 4.0, 1.0});
    CHECK((a.shape == 1.0 && a.scale == 2.0));
    const auto b = gamma_fit({1.0, 1.0, 1.0});
    CHECK((b.shape == 1.0 && b.scale == 1.0));
    CHECK_THAT(b.cdf(1.0), WithinRel(1.0 - std::exp(-1.0), 1e-14));
    CHECK(b.cdf(0.0) == 0.0);
    CHECK_THROWS_AS(gamma_fit({1.0, 0.0, 0.0}), DegenerateFitError);
    CHECK_THROWS_AS(gamma_fit({0.0, 1.0, 0.0}), NumericDomainError);

    const SnrMoments m{3.7, 2.9, 0.0};
    for (double s : {0.01, 2.5, 1e4}) {
        const auto base = gamma_fit(m);
        const auto scaled = gamma_fit({m.mean * s, m.variance * s * s, 0.0});
        CHECK_THAT(scaled.shape, WithinRel(base.shape, 1e-14));
        CHECK_THAT(scaled.scale, WithinRel(base.scale * s, 1e-14));
    }
}

TEST_CASE("chi-square mixture CDF", "[analytics]")
{
    const auto chi2 = GaussianPairParams::from_mixture(1, 0, 1, 0);
    CHECK(chi2_mix_cdf(0.0, chi2) == 0.0);
    CHECK(chi2_mix_cdf(-3.0, chi2) == 0.0);
    CHECK_THAT(chi2_mix_cdf(2.0, chi2), WithinAbs(0.632120558828558, 1e-9));
    for (int i = 0; i <= 400; ++i) {
        const double x = 0.05 * i;
        REQUIRE_THAT(chi2_mix_cdf(x, chi2), WithinAbs(1.0 - std::exp(-x / 2), 1e-6));
    }

    const auto half = GaussianPairParams::from_mixture(3.0, 0, 0, 0);
    CHECK_THAT(chi2_mix_cdf(0.454936423119572 * 3.0, half), WithinAbs(0.5, 1e-9));

    // One noncentral component against Boost's distribution.
    for (double noncent : {0.5, 3.0, 40.0, 500.0}) {
        const auto p = GaussianPairParams::from_mixture(2.0, noncent, 0, 0);
        const boost::math::non_central_chi_squared_distribution<double> d(1, noncent);
        for (double x = 0.01; x < 20 * (1 + noncent); x *= 1.25) {
            REQUIRE_THAT(chi2_mix_cdf(x, p), WithinAbs(boost::math::cdf(d, x / 2.0), 1e-6));
        }
    }

    // Two noncentral components: the variance-2 part conditioned on the other.
    const auto mixed = GaussianPairParams::from_mixture(2.0, 3.0, 0.5, 1.0);
    const boost::math::non_central_chi_squared_distribution<double> big(1, 3.0);
    for (double x : {0.5, 2.0, 6.0, 15.0}) {
        // Integrate over z for the 0.5 * (z + 1)^2 component by Gauss-Hermite-free brute force.
        double ref = 0.0;
        const int steps = 20000;
        const double lo = -9.0, hi = 9.0, h = (hi - lo) / steps;
        for (int k = 0; k < steps; ++k) {
            const double z = lo + (k + 0.5) * h;
            const double small = 0.5 * (z + 1.0) * (z + 1.0);
            const double w = std::exp(-0.5 * z * z) / std::sqrt(2 * kPi) * h;
            ref += small < x ? w * boost::math::cdf(big, (x - small) / 2.0) : 0.0;
        }
        CHECK_THAT(chi2_mix_cdf(x, mixed), WithinAbs(ref, 1e-6));
    }

    // Point mass.
    const auto point = GaussianPairParams::from_mixture(0, 0, 0, 0);
    CHECK(chi2_mix_cdf(0.0, point) == 1.0);
}

TEST_CASE("chi-square mixture CDF is a distribution function", "[analytics][property]")
{
    for (const auto &p : {GaussianPairParams::from_mixture(2, 3, 0.5, 1), GaussianPairParams::from_mixture(1e-3, 500, 0, 0),
                          GaussianPairParams::from_mixture(0.0011487, 541.19, 0, 0),
                          GaussianPairParams::from_mixture(5, 0, 1e-4, 0)}) {
        double prev = 0.0;
        const double top = 40.0 * (p.m2_re + p.m2_im) + 10.0;
        for (int i = 0; i <= 2000; ++i) {
            const double x = top * i / 2000.0;
            const double f = chi2_mix_cdf(x, p);
            REQUIRE(f >= prev - 1e-9);
            REQUIRE((f >= 0.0 && f <= 1.0));
            prev = f;
        }
        CHECK(prev > 1.0 - 1e-6);
    }
}

TEST_CASE("large-N CDF", "[analytics]")
{
    for (auto kind : {ChannelKind::rr, ChannelKind::lr}) {
        for (const auto &m : {PhaseNoiseModel::zero(), PhaseNoiseModel::uniform_scaled(0.5),
                              PhaseNoiseModel::uniform_full()}) {
            const auto cfg = config(kind, 128, m);
            CAPTURE(to_string(kind), m.describe());
            const LargeNCdf cdf(cfg);
            const auto mv = snr_mean_var(cfg).moments;
            CHECK(cdf(0.0) == 0.0);
            CHECK(cdf(mv.mean + 20.0 * std::sqrt(mv.variance)) >= 0.999);
            double prev = 0.0;
            for (int i = 1; i <= 200; ++i) {
                const double f = cdf(mv.mean * 3.0 * i / 200.0);
                REQUIRE(f >= prev - 1e-9);
                prev = f;
            }
        }
    }
    // Point-mass sum: the eigenvalue gamma alone (shifted constants keep N = 1 valid).
    const TracyWidomMoments shifted{-1.0, 0.8132};
    const auto cfg = config(ChannelKind::lr, 1, PhaseNoiseModel::zero(), 1, 1);
    const LargeNCdf cdf(cfg, shifted);
    const auto g = lambda_plus_gamma(1, 1, shifted);
    const GammaFit law{g.gamma_shape, g.gamma_scale};
    CHECK_THAT(cdf(1.3), WithinAbs(law.cdf(1.3), 1e-12));
}

TEST_CASE("large-N CDF agrees with the large-N sampler", "[analytics][statistical]")
{
    const auto cfg = config(ChannelKind::rr, 128, PhaseNoiseModel::uniform_scaled(0.2));
    const LargeNCdf cdf(cfg);
    MonteCarloOptions mc;
    auto set = run_monte_carlo(cfg, Route::large_n, 100000, 31, mc);
    std::sort(set.values.begin(), set.values.end());
    double gap = 0.0;
    const double n = static_cast<double>(set.values.size());
    for (std::size_t i = 0; i < set.values.size(); i += 10) {
        const double f = cdf(set.values[i]);
        gap = std::max({gap, std::abs(f - static_cast<double>(i + 1) / n), std::abs(f - static_cast<double>(i) / n)});
    }
    CHECK(gap < 0.02);
}
