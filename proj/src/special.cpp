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

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace risnr::special {
namespace {

constexpr double kSeriesLimit = 15.0;

double bessel_series_scaled(int order, double x)
{
    const double half = 0.5 * x;
    double term = 1.0;
    for (int i = 1; i <= order; ++i) {
        term *= half / i;
    }
    double sum = term;
    const double q = half * half;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
        sum += term;
        if (term < 1e-17 * sum) {
            break;
        }
    }
    return sum * std::exp(-x);
}

double bessel_asymptotic_scaled(int order, double x)
{
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    double previous = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * k * x);
        const double magnitude = std::abs(term);
        // Divergent series: stop at the smallest term.
        if (magnitude > previous) {
            break;
        }
        sum += term;
        if (magnitude < 1e-17 * std::abs(sum)) {
            break;
        }
        previous = magnitude;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double bessel_scaled(int order, double x)
{
    if (x < 0.0 || std::isnan(x)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (x < kSeriesLimit) {
        return bessel_series_scaled(order, x);
    }
    return bessel_asymptotic_scaled(order, x);
}

} // namespace

double bessel_i0_scaled(double x) { return bessel_scaled(0, x); }
double bessel_i1_scaled(double x) { return bessel_scaled(1, x); }
double bessel_i2_scaled(double x) { return bessel_scaled(2, x); }

double sinc(double x)
{
    if (x == 0.0) {
        return 1.0;
    }
    const double arg = std::numbers::pi * x;
    return std::sin(arg) / arg;
}

double gamma_half_ratio(double n)
{
    // A plain lgamma difference loses ~lgamma(n)*eps absolute accuracy, which
    // at n ~ 1e7 swamps the O(1/n) variances built from this ratio.
    return boost::math::tgamma_delta_ratio(n, 0.5);
}

} // namespace risnr::special
