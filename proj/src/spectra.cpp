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

#include "risnr/spectra.hpp"

#include "risnr/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace risnr {
namespace {

void check_ris_dimension(const ComplexMat &x, std::size_t n, WishartSide side)
{
    const auto ris_dim = static_cast<std::size_t>(side == WishartSide::right ? x.cols() : x.rows());
    if (n == 0 || ris_dim != n) {
        throw ShapeError("Wishart form expects RIS dimension " + std::to_string(n) + ", matrix is " +
                         std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    }
}

void canonicalize_phase(ComplexVec &v)
{
    const double cutoff = 1e-12 * v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > cutoff) {
            v *= std::conj(v(i)) / mag;
            v(i) = {mag, 0.0};
            return;
        }
    }
}

} // namespace

ComplexMat wishart_matrix(const ComplexMat &x, std::size_t n, WishartSide side)
{
    check_ris_dimension(x, n, side);
    const double scale = 1.0 / static_cast<double>(n);
    if (side == WishartSide::right) {
        return scale * (x.adjoint() * x);
    }
    return scale * (x * x.adjoint());
}

SpectralDecomp wishart_decompose(const ComplexMat &x, std::size_t n, WishartSide side)
{
    check_ris_dimension(x, n, side);
    const double nd = static_cast<double>(n);

    // The nonzero spectrum of W equals that of the small Gram matrix.
    const ComplexMat gram = side == WishartSide::right ? ComplexMat((x * x.adjoint()) / nd)
                                                       : ComplexMat((x.adjoint() * x) / nd);
    Eigen::SelfAdjointEigenSolver<ComplexMat> solver(gram);
    if (solver.info() != Eigen::Success) {
        throw NumericDomainError("Hermitian eigensolver did not converge");
    }
    const Eigen::VectorXd &values = solver.eigenvalues(); // ascending
    const ComplexMat &vectors = solver.eigenvectors();

    SpectralDecomp out;
    const Eigen::Index m = values.size();
    const double largest = values(m - 1);
    if (!(largest > 0.0)) {
        return out;
    }
    for (Eigen::Index i = m - 1; i >= 0; --i) {
        const double lambda = values(i);
        if (lambda < kRankThreshold * largest) {
            break;
        }
        ComplexVec v = side == WishartSide::right ? ComplexVec(x.adjoint() * vectors.col(i))
                                                  : ComplexVec(x * vectors.col(i));
        v /= std::sqrt(nd * lambda);
        // Renormalize away rounding in the lift.
        v.normalize();
        canonicalize_phase(v);
        out.eigenvalues.push_back(lambda);
        out.eigenvectors.push_back(std::move(v));
    }
    out.nonzero_count = out.eigenvalues.size();
    return out;
}

EigenSummary lambda_plus_gamma(std::size_t m, std::size_t n, const TracyWidomMoments &tw)
{
    if (m < 1 || n < m) {
        throw ParameterDomainError("lambda_plus_gamma needs 1 <= M <= N, got M=" + std::to_string(m) +
                                   ", N=" + std::to_string(n));
    }
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double root = std::sqrt(md / nd);
    const double edge = (1.0 + root) * (1.0 + root);
    const double width = std::pow(nd, -2.0 / 3.0) * (1.0 + root) * std::cbrt(1.0 + std::sqrt(nd / md));

    EigenSummary s;
    s.mean = edge + tw.mean * width;
    s.variance = tw.variance * width * width;
    if (!(s.mean > 0.0) || !(s.variance > 0.0)) {
        throw NumericDomainError("largest-eigenvalue moments are not positive");
    }
    s.gamma_shape = s.mean * s.mean / s.variance;
    s.gamma_scale = s.variance / s.mean;
    return s;
}

std::vector<double> normalized_magnitudes(const ComplexVec &y)
{
    const double norm = y.norm();
    std::vector<double> out(static_cast<std::size_t>(y.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        out[static_cast<std::size_t>(i)] = std::abs(y(i)) / norm;
    }
    return out;
}

} // namespace risnr
