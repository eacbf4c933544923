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

#include "risnr/special.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
namespace sp = risnr::special;

TEST_CASE("scaled Bessel functions match the standard library", "[special]")
{
    // Both sides of the series/asymptotic switch at 15, plus large arguments.
    for (double x : {1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 14.9, 15.0, 15.1, 20.0, 50.0, 100.0, 300.0, 600.0}) {
        const double scale = std::exp(-x);
        CAPTURE(x);
        CHECK_THAT(sp::bessel_i0_scaled(x), WithinRel(std::cyl_bessel_i(0.0, x) * scale, 1e-10));
        CHECK_THAT(sp::bessel_i1_scaled(x), WithinRel(std::cyl_bessel_i(1.0, x) * scale, 1e-10));
        CHECK_THAT(sp::bessel_i2_scaled(x), WithinRel(std::cyl_bessel_i(2.0, x) * scale, 1e-10));
    }
}

TEST_CASE("scaled Bessel edge values", "[special]")
{
    CHECK(sp::bessel_i0_scaled(0.0) == 1.0);
    CHECK(sp::bessel_i1_scaled(0.0) == 0.0);
    CHECK(sp::bessel_i2_scaled(0.0) == 0.0);
    CHECK(std::isnan(sp::bessel_i0_scaled(-1.0)));
    // Far beyond the overflow of the unscaled function.
    CHECK_THAT(sp::bessel_i0_scaled(1e6), WithinRel(1.0 / std::sqrt(2.0 * std::numbers::pi * 1e6), 1e-6));
}

TEST_CASE("normalized sinc", "[special]")
{
    CHECK(sp::sinc(0.0) == 1.0);
    CHECK_THAT(sp::sinc(0.5), WithinRel(2.0 / std::numbers::pi, 1e-15));
    CHECK_THAT(sp::sinc(1.0), WithinAbs(0.0, 1e-16));
    CHECK_THAT(sp::sinc(1e-9), WithinAbs(1.0, 1e-15));
}

TEST_CASE("gamma ratio via log-gamma", "[special]")
{
    CHECK_THAT(sp::gamma_half_ratio(1.0), WithinRel(1.0 / std::tgamma(1.5), 1e-14));
    CHECK_THAT(sp::gamma_half_ratio(64.0), WithinRel(std::tgamma(64.0) / std::tgamma(64.5), 1e-12));
    // tgamma overflows here; the ratio behaves like N^(-1/2).
    const double r = sp::gamma_half_ratio(4096.0);
    CHECK(std::isfinite(r));
    CHECK_THAT(r * std::sqrt(4096.0), WithinRel(1.0 + 1.0 / (8.0 * 4096.0), 1e-7));
    // Asymptotic series keeps full relative precision at very large N.
    const double n = 16777216.0;
    const double series = (1.0 + 1.0 / (8 * n) + 1.0 / (128 * n * n)) / std::sqrt(n);
    CHECK_THAT(sp::gamma_half_ratio(n), WithinRel(series, 1e-15));
}
