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

// Spectra of the Wishart forms W_G = (1/N) G^H G and W_H = (1/N) H H^H, and the
// gamma approximation of their largest eigenvalue.

#pragma once

#include "risnr/rng.hpp"

#include <cstddef>
#include <vector>

namespace risnr {

// right: W = (1/N) X^H X with X of size M x N (receive channel G).
// left:  W = (1/N) X X^H with X of size N x M (transmit channel H).
enum class WishartSide { right, left };

// Nonzero eigenpairs of an N x N Wishart form, eigenvalues descending.
// Every eigenvector has unit norm and its first significant entry real and positive.
struct SpectralDecomp {
    std::vector<double> eigenvalues;
    std::vector<ComplexVec> eigenvectors;
    std::size_t nonzero_count = 0;
};

// Eigenvalues below this fraction of the largest one count as zero.
inline constexpr double kRankThreshold = 1e-10;

// The explicit N x N matrix W. Throws ShapeError if the RIS dimension of X is not N.
ComplexMat wishart_matrix(const ComplexMat &x, std::size_t n, WishartSide side);

// Works on the M x M Gram matrix (M = the non-RIS dimension) with a Hermitian
// solver and lifts its eigenvectors to the RIS dimension. Throws ShapeError.
SpectralDecomp wishart_decompose(const ComplexMat &x, std::size_t n, WishartSide side);

// Moments of the Tracy-Widom (beta = 2) law used to place the largest eigenvalue.
struct TracyWidomMoments {
    double mean = -1.7711;
    double variance = 0.8132;
};

struct EigenSummary {
    double mean = 0.0;
    double variance = 0.0;
    double gamma_shape = 0.0;
    double gamma_scale = 0.0;
};

// Mean and variance of the largest eigenvalue of a Wishart form with M
// antennas and N RIS elements, and the moment-matched gamma law.
// Needs 1 <= M <= N; throws ParameterDomainError otherwise and
// NumericDomainError if the mean would not be positive.
EigenSummary lambda_plus_gamma(std::size_t m, std::size_t n, const TracyWidomMoments &tw = {});

// |y(n)| / ||y||, the entry magnitudes of the normalized vector.
std::vector<double> normalized_magnitudes(const ComplexVec &y);

} // namespace risnr
