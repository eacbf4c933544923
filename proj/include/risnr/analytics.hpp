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

// Closed-form statistics of the SNR: moments of the eigenvector sums, SNR
// mean/variance/amount of fading, leading-order scaling laws, the gamma fit,
// and distribution functions of the large-N representation.

#pragma once

#include "risnr/channel.hpp"
#include "risnr/rng.hpp"
#include "risnr/spectra.hpp"

#include <cstddef>
#include <vector>

namespace risnr {

// Which eigenvector sum: upsilon = sum |v(n)||u(n)| e^{jd_n} (RR),
// psi = sum |v(n)| e^{jd_n} (LR).
enum class SumKind { upsilon, psi };

SumKind sum_kind_for(ChannelKind kind);

// First and second moments of Re/Im of an eigenvector sum and the parameters
// of its Gaussian (large-N) description: Re ~ N(m1_re, var_re), so
// Re^2 = var_re * chi2_1(noncent_re). noncent_* is 0 and degenerate_* true when
// the variance vanishes (the component is then the constant m1^2).
struct GaussianPairParams {
    double m1_re = 0.0;
    double m1_im = 0.0;
    double m2_re = 0.0;
    double m2_im = 0.0;
    double var_re = 0.0;
    double var_im = 0.0;
    double noncent_re = 0.0;
    double noncent_im = 0.0;
    bool degenerate_re = false;
    bool degenerate_im = false;

    // Builds the parameters of var_re*chi2_1(noncent_re) + var_im*chi2_1(noncent_im).
    static GaussianPairParams from_mixture(double var_re, double noncent_re, double var_im, double noncent_im);
};

GaussianPairParams upsilon_moments(std::size_t n, const TrigMoments &t);
GaussianPairParams psi_moments(std::size_t n, const TrigMoments &t);
GaussianPairParams sum_moments(SumKind kind, std::size_t n, const TrigMoments &t);

// cov{Re, Im} of the eigenvector sum. Zero for every symmetric law.
double re_im_covariance(std::size_t n, const TrigMoments &t, SumKind kind, double sin2delta_mean);

// Building blocks of the SNR moments.
struct MomentTerms {
    double lambda_mean_g = 0.0;   // E{lambda+_G}
    double lambda_mean_h = 1.0;   // E{lambda+_H}; 1 for LR
    double lambda_second_g = 0.0; // V{lambda+_G} + E{lambda+_G}^2
    double lambda_second_h = 1.0; // 1 for LR
    double sum_second = 0.0;      // E{|sum|^2} = sum_S var_S (1 + noncent_S)
    double sum_fourth = 0.0;      // E{|sum|^4} = sum_S 2 var_S^2 (1 + 2 noncent_S) + E{|sum|^2}^2
};

struct SnrMoments {
    double mean = 0.0;
    double variance = 0.0;
    double af = 0.0;
};

struct SnrAnalysis {
    SnrMoments moments;
    MomentTerms terms;
};

// Mean and variance of the SNR for large N, RR or LR according to cfg.kind.
SnrAnalysis snr_mean_var(const SystemConfig &cfg, const TracyWidomMoments &tw = {});

// variance / mean^2. Throws NumericDomainError if mean <= 0.
double amount_of_fading(const SnrMoments &m);

// Leading-order coefficients: E ~ o_e0 N (c1 = 0) or o_e1 N^2, V ~ o_v0 N^2 or
// o_v1 N^3. zeta is the eigenvalue-spread correction entering o_v1.
struct ScalingCoefficients {
    double o_e0 = 0.0;
    double o_e1 = 0.0;
    double o_v0 = 0.0;
    double o_v1 = 0.0;
    double zeta = 0.0;
};

// Throws UnsupportedRegimeError if s1 != 0.
ScalingCoefficients scaling_coefficients(ChannelKind kind, std::size_t n_tx, std::size_t n_rx, const TrigMoments &t,
                                         const TracyWidomMoments &tw = {});
ScalingCoefficients scaling_coefficients(const SystemConfig &cfg, const TracyWidomMoments &tw = {});

// Scaling-law moments at N = n (cfg.n_ris is ignored), including gamma0.
SnrMoments asymptotic_moments(const SystemConfig &cfg, std::size_t n, const TracyWidomMoments &tw = {});

struct GammaFit {
    double shape = 0.0;
    double scale = 0.0;

    double cdf(double x) const;
};

// Moment-matched gamma law. Throws DegenerateFitError if the variance is 0 and
// NumericDomainError if the mean is not positive.
GammaFit gamma_fit(const SnrMoments &m);

// CDF of var_re*chi2_1(noncent_re) + var_im*chi2_1(noncent_im) with independent
// components, by numerical inversion of the characteristic function.
// Degenerate components contribute the constant m1^2.
double chi2_mix_cdf(double x, const GaussianPairParams &p);

// CDF of the large-N SNR representation: scale * P_G * P_H * (mixture) for RR,
// scale * P_G * (mixture) for LR, with gamma-distributed P_X. Construction
// tabulates the mixture CDF once; evaluation is a tensor Gauss-Legendre rule
// over the truncated gamma supports.
class LargeNCdf {
public:
    explicit LargeNCdf(const SystemConfig &cfg, const TracyWidomMoments &tw = {});

    // Throws AccuracyError if the 64- and 32-node rules differ by more than 1e-4.
    double operator()(double x) const;

    double mixture_cdf(double y) const;

private:
    struct Rule {
        std::vector<double> nodes;
        std::vector<double> weights;
    };
    Rule gamma_rule(const EigenSummary &s, std::size_t points) const;
    double evaluate(double x, const Rule &g, const Rule &h) const;

    SystemConfig cfg_;
    double scale_ = 1.0;
    bool point_mass_ = false;
    double point_value_ = 0.0;
    double s_max_ = 0.0;
    std::vector<double> table_;
    std::vector<double> slopes_;
    EigenSummary eig_g_;
    EigenSummary eig_h_;
    Rule g64_, h64_, g32_, h32_;
};

double snr_largen_cdf(double x, const SystemConfig &cfg, const TracyWidomMoments &tw = {});

} // namespace risnr
