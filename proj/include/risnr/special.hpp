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

// Special functions used by the phase-noise moments and the eigenvector-sum moments.

#pragma once

namespace risnr::special {

// Exponentially scaled modified Bessel functions of the first kind, e^{-x} I_n(x), x >= 0.
// Power series below x = 15, Hankel asymptotic expansion above.
double bessel_i0_scaled(double x);
double bessel_i1_scaled(double x);
double bessel_i2_scaled(double x);

// Normalized sinc, sin(pi x) / (pi x), with sinc(0) = 1.
double sinc(double x);

// Gamma(n) / Gamma(n + 1/2) through the log-gamma difference; finite for any n >= 1.
double gamma_half_ratio(double n);

} // namespace risnr::special
