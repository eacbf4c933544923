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

#include "risnr/errors.hpp"
#include "risnr/experiments.hpp"
#include "risnr/samplers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace risnr;

namespace {

SystemConfig config(ChannelKind kind, std::size_t n, PhaseNoiseModel noise = PhaseNoiseModel::zero())
{
    SystemConfig c;
    c.kind = kind;
    c.n_ris = n;
    c.noise = noise;
    return c;
}

std::vector<PhaseNoiseModel> table_models()
{
    return {PhaseNoiseModel::zero(), PhaseNoiseModel::uniform_full(), PhaseNoiseModel::uniform_scaled(0.5),
            PhaseNoiseModel::von_mises(2.0)};
}

} // namespace

TEST_CASE("exact route: single-element links", "[samplers]")
{
    auto engine = RngStream{1, 0}.engine();
    const auto g = sample_complex_gaussian(1, 1, engine);
    const auto h = sample_complex_gaussian(1, 1, engine);
    const double expected = 2.5 * std::norm(g(0, 0)) * std::norm(h(0, 0));
    CHECK_THAT(snr_rr_exact(g, h, {0.0}, 2.5), WithinRel(expected, 1e-12));
    CHECK_THAT(snr_lr_exact(g, {0.0}, 2.5, 3), WithinRel(2.5 * 3 * std::norm(g(0, 0)), 1e-12));
    // The phase of a single element is irrelevant.
    CHECK_THAT(snr_rr_exact(g, h, {1.1}, 2.5), WithinRel(expected, 1e-12));
}

TEST_CASE("exact route: shape errors", "[samplers]")
{
    const ComplexMat g = ComplexMat::Ones(4, 16);
    const ComplexMat h = ComplexMat::Ones(15, 4);
    CHECK_THROWS_AS(snr_rr_exact(g, h, std::vector<double>(16, 0.0), 1.0), ShapeError);
    CHECK_THROWS_AS(snr_rr_exact(g, ComplexMat::Ones(16, 4), std::vector<double>(15, 0.0), 1.0), ShapeError);
    CHECK_THROWS_AS(snr_lr_exact(g, std::vector<double>(3, 0.0), 1.0, 4), ShapeError);
}

TEST_CASE("exact route: relabeling RIS elements leaves the SNR unchanged", "[samplers][property]")
{
    std::mt19937 shuffle_rng(5);
    for (std::uint64_t i = 0; i < 50; ++i) {
        auto engine = RngStream{2, i}.engine();
        const auto g = sample_complex_gaussian(4, 32, engine);
        const auto h = sample_complex_gaussian(32, 4, engine);
        std::vector<int> perm(32);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), shuffle_rng);
        ComplexMat gp(4, 32), hp(32, 4);
        for (int n = 0; n < 32; ++n) {
            gp.col(n) = g.col(perm[static_cast<std::size_t>(n)]);
            hp.row(n) = h.row(perm[static_cast<std::size_t>(n)]);
        }
        const std::vector<double> zero(32, 0.0);
        CHECK_THAT(snr_rr_exact(gp, hp, zero, 1.0), WithinRel(snr_rr_exact(g, h, zero, 1.0), 1e-9));
    }
}

TEST_CASE("exact route: coherent combining dominates on average", "[samplers]")
{
    const auto cfg = config(ChannelKind::lr, 64, PhaseNoiseModel::uniform_scaled(0.5));
    double coherent = 0.0, noisy = 0.0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        auto engine = RngStream{3, i}.engine();
        const auto g = draw_receive_channel(cfg, engine);
        const auto angles = sample_phase_noise(cfg.noise, 64, engine);
        coherent += snr_lr_exact(g, std::vector<double>(64, 0.0), 1.0, 4);
        noisy += snr_lr_exact(g, angles, 1.0, 4);
    }
    CHECK(coherent >= noisy);
}

TEST_CASE("every route produces finite nonnegative samples", "[samplers][property]")
{
    for (auto route : {Route::exact, Route::eid, Route::large_n}) {
        for (auto kind : {ChannelKind::rr, ChannelKind::lr}) {
            for (const auto &m : table_models()) {
                const auto set = run_monte_carlo(config(kind, 16, m), route, 300, 9);
                REQUIRE(set.values.size() == 300);
                for (double v : set.values) {
                    REQUIRE(std::isfinite(v));
                    REQUIRE(v >= 0.0);
                }
            }
        }
    }
}

TEST_CASE("mean of the exact route matches the closed forms", "[samplers][statistical]")
{
    const auto rr = config(ChannelKind::rr, 64);
    const auto s1 = sample_stats(run_monte_carlo(rr, Route::exact, 10000, 21).values);
    CHECK(std::abs(s1.mean / snr_mean_var(rr).moments.mean - 1.0) < 0.05);

    const auto lr = config(ChannelKind::lr, 64, PhaseNoiseModel::uniform_full());
    const auto s2 = sample_stats(run_monte_carlo(lr, Route::exact, 10000, 22).values);
    CHECK(std::abs(s2.mean / snr_mean_var(lr).moments.mean - 1.0) < 0.05);
}

TEST_CASE("eid route", "[samplers]")
{
    // Shifted constants keep the gamma law valid at N = M = 1.
    const TracyWidomMoments shifted{-1.0, 0.8132};
    SystemConfig one = config(ChannelKind::rr, 1);
    one.n_tx = one.n_rx = 1;
    one.gamma0 = 1.5;
    auto engine = RngStream{4, 0}.engine();
    const double value = snr_eid_sample(one, engine, shifted);
    auto replay = RngStream{4, 0}.engine();
    const auto law = lambda_plus_gamma(1, 1, shifted);
    // One distribution object per draw, as in the sampler (libstdc++ caches normals).
    const double a = std::gamma_distribution<double>(law.gamma_shape, law.gamma_scale)(replay);
    const double b = std::gamma_distribution<double>(law.gamma_shape, law.gamma_scale)(replay);
    CHECK_THAT(value, WithinRel(1.5 * a * b, 1e-12));
    CHECK_THROWS_AS(snr_eid_sample(one, RngStream{4, 0}), NumericDomainError);

    // The construction reproduces the closed-form mean exactly in expectation.
    const auto cfg = config(ChannelKind::rr, 64);
    const auto s = sample_stats(run_monte_carlo(cfg, Route::eid, 100000, 23).values);
    const double se = std::sqrt(s.variance / 100000.0);
    CHECK(std::abs(s.mean - snr_mean_var(cfg).moments.mean) <= 3 * se);
}

TEST_CASE("large-N route", "[samplers]")
{
    // Zero noise: the imaginary branch is identically zero.
    const auto p = upsilon_moments(64, trig_moments(PhaseNoiseModel::zero()));
    CHECK((p.var_im == 0.0 && p.noncent_im == 0.0 && p.m1_im == 0.0));

    for (auto kind : {ChannelKind::rr, ChannelKind::lr}) {
        const auto cfg = config(kind, 64, PhaseNoiseModel::uniform_scaled(0.2));
        const auto s = sample_stats(run_monte_carlo(cfg, Route::large_n, 100000, 24).values);
        const auto an = snr_mean_var(cfg).moments;
        CHECK(std::abs(s.variance / an.variance - 1.0) < 0.05);
        CHECK(std::abs(s.mean / an.mean - 1.0) < 0.01);
    }

    const auto small = run_monte_carlo(config(ChannelKind::rr, 8), Route::large_n, 100, 1);
    CHECK(small.warnings.size() == 1);
    CHECK(regime_warning(config(ChannelKind::rr, 16), Route::large_n).empty());
}

TEST_CASE("large-N route agrees with the exact route at N=128", "[samplers][statistical]")
{
    const auto cfg = config(ChannelKind::rr, 128, PhaseNoiseModel::uniform_scaled(0.2));
    const auto exact = run_monte_carlo(cfg, Route::exact, 10000, 25);
    const auto large = run_monte_carlo(cfg, Route::large_n, 10000, 26);
    CHECK(ks_two_sample(exact, large).statistic < 0.05);
}

TEST_CASE("Monte Carlo driver", "[samplers]")
{
    const auto cfg = config(ChannelKind::rr, 24, PhaseNoiseModel::von_mises(2.0));
    CHECK_THROWS_AS(run_monte_carlo(cfg, Route::exact, 0, 1), ParameterDomainError);

    MonteCarloOptions one, many;
    many.workers = 7;
    const auto a = run_monte_carlo(cfg, Route::exact, 501, 77, one);
    const auto b = run_monte_carlo(cfg, Route::exact, 501, 77, many);
    CHECK(a.values == b.values);
    CHECK(a.n_samples == 501);
    CHECK(a.master_seed == 77);
    // Sample i comes from stream i.
    CHECK(a.values[123] == snr_exact_sample(cfg, RngStream{77, 123}));

    std::ostringstream csv;
    write_csv(csv, run_monte_carlo(cfg, Route::eid, 3, 5));
    const std::string text = csv.str();
    CHECK(text.rfind("index,snr\n0,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);

    CHECK(parse_route("large_n") == Route::large_n);
    CHECK_THROWS_AS(parse_route("fast"), ParameterDomainError);
}

TEST_CASE("Re/Im covariance of the double sum stays bounded", "[samplers][statistical]")
{
    for (const auto &m : table_models()) {
        for (std::size_t n : {16u, 64u, 256u}) {
            constexpr std::size_t draws = 20000;
            std::vector<double> re(draws), im(draws);
            for (std::size_t i = 0; i < draws; ++i) {
                auto engine = RngStream{40 + n, i}.engine();
                const ComplexMat y = sample_complex_gaussian(n, 2, engine);
                const auto v = normalized_magnitudes(y.col(0));
                const auto u = normalized_magnitudes(y.col(1));
                const auto angles = sample_phase_noise(m, n, engine);
                std::complex<double> s{0.0, 0.0};
                for (std::size_t j = 0; j < n; ++j) {
                    s += v[j] * u[j] * std::polar(1.0, angles[j]);
                }
                re[i] = s.real();
                im[i] = s.imag();
            }
            const double mr = std::accumulate(re.begin(), re.end(), 0.0) / draws;
            const double mi = std::accumulate(im.begin(), im.end(), 0.0) / draws;
            std::vector<double> prod(draws);
            for (std::size_t i = 0; i < draws; ++i) {
                prod[i] = (re[i] - mr) * (im[i] - mi);
            }
            const auto st = sample_stats(prod);
            CAPTURE(m.describe(), n);
            CHECK(std::abs(st.mean) <= 3.0 * std::sqrt(st.variance / draws) + 1e-300);
            CHECK(std::abs(st.mean) * static_cast<double>(n) < 0.05);
        }
    }
}

// The two cases below hold only approximately: the gamma law for the largest
// eigenvalue overstates its spread at moderate N, and the exact route takes the
// best of N_R x N_T eigenpairs. See the README section on known gaps.

TEST_CASE("eid vs exact route, KS < 0.05 at N=64", "[samplers][statistical][known-gap][!mayfail]")
{
    const auto cfg = config(ChannelKind::rr, 64);
    const auto exact = run_monte_carlo(cfg, Route::exact, 10000, 27);
    const auto eid = run_monte_carlo(cfg, Route::eid, 10000, 28);
    const auto ks = ks_two_sample(exact, eid);
    INFO("KS distance " << ks.statistic);
    CHECK(ks.statistic < 0.05);
}

TEST_CASE("eid vs exact route for N in {16, 64, 256}, all laws", "[samplers][statistical][known-gap][!mayfail]")
{
    for (std::size_t n : {16u, 64u, 256u}) {
        for (const auto &m : table_models()) {
            const auto cfg = config(ChannelKind::rr, n, m);
            const auto exact = run_monte_carlo(cfg, Route::exact, 10000, 29);
            const auto eid = run_monte_carlo(cfg, Route::eid, 10000, 30);
            const auto ks = ks_two_sample(exact, eid);
            CAPTURE(n, m.describe(), ks.statistic);
            CHECK(ks.statistic < 0.05);
        }
    }
}

TEST_CASE("exact-route AF within 10% of the closed form (RR, N=64, zero noise)",
          "[samplers][statistical][known-gap][!mayfail]")
{
    const auto cfg = config(ChannelKind::rr, 64);
    const auto s = sample_stats(run_monte_carlo(cfg, Route::exact, 10000, 31).values);
    const double af = snr_mean_var(cfg).moments.af;
    INFO("MC AF " << s.af() << ", analytic " << af);
    CHECK(std::abs(s.af() / af - 1.0) < 0.10);
}
