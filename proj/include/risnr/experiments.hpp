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

#pragma once

#include "risnr/analytics.hpp"
#include "risnr/channel.hpp"
#include "risnr/samplers.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace risnr {

enum class ExperimentRoute { exact, eid, large_n, analytic, scaling };

std::string to_string(ExperimentRoute route);
ExperimentRoute parse_experiment_route(std::string_view text);

struct ExperimentSpec {
    SystemConfig config;
    std::vector<std::size_t> n_values{16, 32, 64, 128, 256, 512};
    std::vector<double> epsilons{0.0, 0.2, 0.5, 1.0};
    std::vector<ChannelKind> channels{ChannelKind::rr, ChannelKind::lr};
    std::vector<ExperimentRoute> routes{ExperimentRoute::exact, ExperimentRoute::analytic, ExperimentRoute::scaling};
    std::size_t n_samples = 10000;
    std::uint64_t master_seed = 1;
    std::string output_path;
    std::size_t workers = 1;
    TracyWidomMoments tw{};

    bool has_route(ExperimentRoute r) const;
    void validate() const;
};

struct Fig1Row {
    std::size_t n = 0;
    ChannelKind channel = ChannelKind::rr;
    double epsilon = 0.0;
    double af_mc = 0.0;
    double af_analytic = 0.0;
    double af_scaling = 0.0;
};

std::vector<Fig1Row> fig1_rows(const ExperimentSpec &spec);
void write_fig1_csv(std::ostream &out, const std::vector<Fig1Row> &rows);
void write_fig1_svg(std::ostream &out, const std::vector<Fig1Row> &rows);

// Writes the CSV to spec.output_path (throws std::ios_base::failure on I/O errors).
std::vector<Fig1Row> fig1_af_sweep(const ExperimentSpec &spec);

struct Fig2Row {
    double x = 0.0;
    double cdf_exact_ecdf = 0.0;
    double cdf_largen = 0.0;
    double cdf_gamma = 0.0;
};

inline constexpr std::size_t kFig2GridPoints = 256;

std::vector<Fig2Row> fig2_rows(const ExperimentSpec &spec);
void write_fig2_csv(std::ostream &out, const std::vector<Fig2Row> &rows);
void write_fig2_svg(std::ostream &out, const std::vector<Fig2Row> &rows);
std::vector<Fig2Row> fig2_cdf(const ExperimentSpec &spec);

struct KsReport {
    double statistic = 0.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    bool reject_at_1pct = false;
};

KsReport ks_two_sample(std::vector<double> a, std::vector<double> b);
KsReport ks_two_sample(const SampleSet &a, const SampleSet &b);
// Supremum gap between the empirical CDF of `a` and a continuous CDF.
KsReport ks_one_sample(std::vector<double> a, const std::function<double(double)> &cdf);

// Sample mean and unbiased variance.
struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;
    double af() const { return variance / (mean * mean); }
};
SampleStats sample_stats(const std::vector<double> &values);

double empirical_quantile(std::vector<double> values, double p);

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const;
    std::string text() const;
};

struct ValidateOptions {
    std::size_t n_samples = 10000;
    std::uint64_t master_seed = 1;
    std::size_t workers = 1;
    // Constants used by the model under test; the Monte Carlo oracles never use them.
    TracyWidomMoments tw{};
};

ValidationReport validate_suite(const ValidateOptions &options);

} // namespace risnr
