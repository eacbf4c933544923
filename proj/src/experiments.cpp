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

#include "risnr/experiments.hpp"

#include "risnr/errors.hpp"
#include "risnr/format.hpp"
#include "risnr/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

namespace risnr {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Two-sided 1% critical value of the limiting Kolmogorov distribution.
constexpr double kKsCritical1pct = 1.6276;

std::ofstream open_output(const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::ios_base::failure("cannot open '" + path + "' for writing");
    }
    out.exceptions(std::ios::failbit | std::ios::badbit);
    return out;
}

SystemConfig with(const SystemConfig &base, std::size_t n, ChannelKind kind, const PhaseNoiseModel &noise)
{
    SystemConfig cfg = base;
    cfg.n_ris = n;
    cfg.kind = kind;
    cfg.noise = noise;
    return cfg;
}

std::vector<double> ecdf_at(std::vector<double> values, const std::vector<double> &grid)
{
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    out.reserve(grid.size());
    const double n = static_cast<double>(values.size());
    for (double x : grid) {
        const auto it = std::upper_bound(values.begin(), values.end(), x);
        out.push_back(static_cast<double>(it - values.begin()) / n);
    }
    return out;
}

std::string fixed(double v, int digits)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

ValidationCheck within_sigma(const std::string &name, const std::vector<double> &samples, double target)
{
    const auto st = sample_stats(samples);
    const double se = std::sqrt(st.variance / static_cast<double>(samples.size()));
    const double gap = std::abs(st.mean - target);
    ValidationCheck c{name, gap <= 3.0 * se, {}};
    c.detail = "empirical " + format_double(st.mean) + ", expected " + format_double(target) + ", |gap| " +
               format_double(gap) + " vs 3 SE " + format_double(3.0 * se);
    return c;
}

} // namespace

std::string to_string(ExperimentRoute route)
{
    switch (route) {
    case ExperimentRoute::exact:
        return "exact";
    case ExperimentRoute::eid:
        return "eid";
    case ExperimentRoute::large_n:
        return "large_n";
    case ExperimentRoute::analytic:
        return "analytic";
    case ExperimentRoute::scaling:
        return "scaling";
    }
    return "exact";
}

ExperimentRoute parse_experiment_route(std::string_view text)
{
    if (text == "analytic") {
        return ExperimentRoute::analytic;
    }
    if (text == "scaling") {
        return ExperimentRoute::scaling;
    }
    switch (parse_route(text)) {
    case Route::exact:
        return ExperimentRoute::exact;
    case Route::eid:
        return ExperimentRoute::eid;
    case Route::large_n:
        return ExperimentRoute::large_n;
    }
    return ExperimentRoute::exact;
}

bool ExperimentSpec::has_route(ExperimentRoute r) const
{
    return std::find(routes.begin(), routes.end(), r) != routes.end();
}

void ExperimentSpec::validate() const
{
    config.validate();
    if (n_values.empty()) {
        throw ParameterDomainError("n_values must not be empty");
    }
    for (std::size_t i = 1; i < n_values.size(); ++i) {
        if (n_values[i] <= n_values[i - 1]) {
            throw ParameterDomainError("n_values must be strictly increasing");
        }
    }
    const bool statistical = has_route(ExperimentRoute::exact) || has_route(ExperimentRoute::eid) ||
                             has_route(ExperimentRoute::large_n);
    if (statistical && n_samples < 100) {
        throw ParameterDomainError("statistical routes need at least 100 samples");
    }
    for (double eps : epsilons) {
        if (!(eps >= 0.0 && eps <= 1.0)) {
            throw ParameterDomainError("epsilon values must lie in [0, 1]");
        }
    }
}

// ---- Fig. 1 -----------------------------------------------------------------

std::vector<Fig1Row> fig1_rows(const ExperimentSpec &spec)
{
    spec.validate();
    if (!spec.has_route(ExperimentRoute::exact) || !spec.has_route(ExperimentRoute::analytic)) {
        throw ParameterDomainError("the AF sweep needs at least the exact and analytic routes");
    }
    if (spec.channels.empty() || spec.epsilons.empty()) {
        throw ParameterDomainError("the AF sweep needs at least one channel kind and one epsilon");
    }
    MonteCarloOptions mc;
    mc.workers = spec.workers;
    mc.tw = spec.tw;

    std::vector<Fig1Row> rows;
    for (std::size_t n : spec.n_values) {
        for (ChannelKind kind : spec.channels) {
            for (double eps : spec.epsilons) {
                const auto cfg = with(spec.config, n, kind, PhaseNoiseModel::from_epsilon(eps));
                Fig1Row row{n, kind, eps, kNan, kNan, kNan};
                const auto set = run_monte_carlo(cfg, Route::exact, spec.n_samples, spec.master_seed, mc);
                row.af_mc = sample_stats(set.values).af();
                row.af_analytic = snr_mean_var(cfg, spec.tw).moments.af;
                if (spec.has_route(ExperimentRoute::scaling)) {
                    row.af_scaling = asymptotic_moments(cfg, n, spec.tw).af;
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

void write_fig1_csv(std::ostream &out, const std::vector<Fig1Row> &rows)
{
    out << "N,channel,epsilon,af_mc,af_analytic,af_scaling\n";
    for (const auto &r : rows) {
        out << std::to_string(r.n) << ',' << to_string(r.channel) << ',' << format_double(r.epsilon) << ','
            << format_double(r.af_mc) << ',' << format_double(r.af_analytic) << ',' << format_double(r.af_scaling)
            << '\n';
    }
}

void write_fig1_svg(std::ostream &out, const std::vector<Fig1Row> &rows)
{
    std::vector<PlotSeries> series;
    const auto find_or_add = [&](const std::string &name) -> PlotSeries & {
        for (auto &s : series) {
            if (s.name == name) {
                return s;
            }
        }
        series.push_back({name, {}, {}});
        return series.back();
    };
    for (const auto &r : rows) {
        const std::string tag = to_string(r.channel) + " eps=" + format_double(r.epsilon);
        auto &a = find_or_add(tag + " analytic");
        a.x.push_back(static_cast<double>(r.n));
        a.y.push_back(r.af_analytic);
        auto &m = find_or_add(tag + " MC");
        m.x.push_back(static_cast<double>(r.n));
        m.y.push_back(r.af_mc);
    }
    write_svg_chart(out, {"Amount of fading", "N", "AF", true, true}, series);
}

std::vector<Fig1Row> fig1_af_sweep(const ExperimentSpec &spec)
{
    auto rows = fig1_rows(spec);
    auto out = open_output(spec.output_path);
    write_fig1_csv(out, rows);
    return rows;
}

// ---- Fig. 2 -----------------------------------------------------------------

std::vector<Fig2Row> fig2_rows(const ExperimentSpec &spec)
{
    spec.validate();
    if (spec.n_values.size() != 1) {
        throw ParameterDomainError("the CDF experiment takes a single N");
    }
    if (!spec.has_route(ExperimentRoute::exact) || !spec.has_route(ExperimentRoute::large_n)) {
        throw ParameterDomainError("the CDF experiment needs the exact and large_n routes");
    }
    SystemConfig cfg = spec.config;
    cfg.n_ris = spec.n_values.front();

    MonteCarloOptions mc;
    mc.workers = spec.workers;
    mc.tw = spec.tw;
    const auto exact = run_monte_carlo(cfg, Route::exact, spec.n_samples, spec.master_seed, mc);
    const auto large = run_monte_carlo(cfg, Route::large_n, spec.n_samples, spec.master_seed + 1, mc);
    const auto fit = gamma_fit(snr_mean_var(cfg, spec.tw).moments);

    const double top = empirical_quantile(exact.values, 0.999);
    std::vector<double> grid(kFig2GridPoints);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = top * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
    }
    const auto f_exact = ecdf_at(exact.values, grid);
    const auto f_large = ecdf_at(large.values, grid);

    std::vector<Fig2Row> rows;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rows.push_back({grid[i], f_exact[i], f_large[i], fit.cdf(grid[i])});
    }
    return rows;
}

void write_fig2_csv(std::ostream &out, const std::vector<Fig2Row> &rows)
{
    out << "x,cdf_exact_ecdf,cdf_largen,cdf_gamma\n";
    for (const auto &r : rows) {
        out << format_double(r.x) << ',' << format_double(r.cdf_exact_ecdf) << ',' << format_double(r.cdf_largen)
            << ',' << format_double(r.cdf_gamma) << '\n';
    }
}

void write_fig2_svg(std::ostream &out, const std::vector<Fig2Row> &rows)
{
    PlotSeries exact{"exact ECDF", {}, {}};
    PlotSeries large{"large-N ECDF", {}, {}};
    PlotSeries gamma{"gamma fit", {}, {}};
    for (const auto &r : rows) {
        exact.x.push_back(r.x);
        exact.y.push_back(r.cdf_exact_ecdf);
        large.x.push_back(r.x);
        large.y.push_back(r.cdf_largen);
        gamma.x.push_back(r.x);
        gamma.y.push_back(r.cdf_gamma);
    }
    write_svg_chart(out, {"SNR CDF", "SNR (linear)", "CDF", false, false}, {exact, large, gamma});
}

std::vector<Fig2Row> fig2_cdf(const ExperimentSpec &spec)
{
    auto rows = fig2_rows(spec);
    auto out = open_output(spec.output_path);
    write_fig2_csv(out, rows);
    return rows;
}

// ---- statistics --------------------------------------------------------------

KsReport ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty()) {
        throw NumericDomainError("KS test needs two nonempty samples");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) {
            ++i;
        }
        while (j < b.size() && b[j] == x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    KsReport r;
    r.statistic = d;
    r.n_a = a.size();
    r.n_b = b.size();
    r.reject_at_1pct = d > kKsCritical1pct * std::sqrt((na + nb) / (na * nb));
    return r;
}

KsReport ks_two_sample(const SampleSet &a, const SampleSet &b) { return ks_two_sample(a.values, b.values); }

KsReport ks_one_sample(std::vector<double> a, const std::function<double(double)> &cdf)
{
    if (a.empty()) {
        throw NumericDomainError("KS test needs a nonempty sample");
    }
    std::sort(a.begin(), a.end());
    const double n = static_cast<double>(a.size());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double f = cdf(a[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    KsReport r;
    r.statistic = d;
    r.n_a = a.size();
    r.reject_at_1pct = d > kKsCritical1pct / std::sqrt(n);
    return r;
}

SampleStats sample_stats(const std::vector<double> &values)
{
    if (values.size() < 2) {
        throw NumericDomainError("sample statistics need at least two values");
    }
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, ss / (n - 1.0)};
}

double empirical_quantile(std::vector<double> values, double p)
{
    if (values.empty() || !(p >= 0.0 && p <= 1.0)) {
        throw NumericDomainError("quantile needs a nonempty sample and p in [0, 1]");
    }
    std::sort(values.begin(), values.end());
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double t = pos - static_cast<double>(lo);
    return values[lo] + t * (values[hi] - values[lo]);
}

// ---- validation suite ---------------------------------------------------------

bool ValidationReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck &c) { return c.passed; });
}

std::string ValidationReport::text() const
{
    std::string out;
    for (const auto &c : checks) {
        out += (c.passed ? "PASS  " : "FAIL  ") + c.name + ": " + c.detail + "\n";
    }
    out += all_passed() ? "all checks passed\n" : "some checks failed\n";
    return out;
}

ValidationReport validate_suite(const ValidateOptions &opt)
{
    ValidationReport report;
    const std::size_t n_samples = std::max<std::size_t>(opt.n_samples, 100);
    const std::uint64_t seed = opt.master_seed;

    // Largest eigenvalue of a 4 x 64 Wishart form against its gamma law.
    {
        constexpr std::size_t m = 4;
        constexpr std::size_t n = 64;
        std::vector<double> lambdas(n_samples);
        for (std::size_t i = 0; i < n_samples; ++i) {
            auto engine = RngStream{seed, i}.engine();
            const auto x = sample_complex_gaussian(m, n, engine);
            lambdas[i] = wishart_decompose(x, n, WishartSide::right).eigenvalues.front();
        }
        const auto st = sample_stats(lambdas);
        const auto model = lambda_plus_gamma(m, n, opt.tw);
        const double mean_err = std::abs(model.mean - st.mean) / model.mean;
        const double var_err = std::abs(model.variance - st.variance) / model.variance;
        report.checks.push_back({"largest eigenvalue mean (M=4, N=64)", mean_err < 0.02,
                                 "model " + format_double(model.mean) + ", MC " + format_double(st.mean) +
                                     ", rel. error " + fixed(100 * mean_err, 2) + "% (tol 2%)"});
        report.checks.push_back({"largest eigenvalue variance (M=4, N=64)", var_err < 0.15,
                                 "model " + format_double(model.variance) + ", MC " + format_double(st.variance) +
                                     ", rel. error " + fixed(100 * var_err, 2) + "% (tol 15%)"});
    }

    // Moments of normalized Gaussian magnitudes.
    {
        constexpr std::size_t n = 64;
        std::vector<double> sq(n_samples), cross(n_samples);
        for (std::size_t i = 0; i < n_samples; ++i) {
            auto engine = RngStream{seed + 1, i}.engine();
            const ComplexMat y = sample_complex_gaussian(n, 1, engine);
            const auto mag = normalized_magnitudes(y.col(0));
            sq[i] = mag[0] * mag[0];
            cross[i] = mag[0] * mag[1];
        }
        report.checks.push_back(within_sigma("normalized magnitude E{y^2} = 1/N (N=64)", sq, 1.0 / n));
        report.checks.push_back(
            within_sigma("normalized magnitude E{y(n)y(m)} = pi/(4N) (N=64)", cross, std::numbers::pi / (4.0 * n)));
    }

    // Re/Im covariance of the double-eigenvector sum for symmetric noise laws.
    {
        constexpr std::size_t n = 64;
        const std::vector<std::pair<std::string, PhaseNoiseModel>> models = {
            {"zero", PhaseNoiseModel::zero()},
            {"uniform", PhaseNoiseModel::uniform_full()},
            {"uniform-scaled(0.5)", PhaseNoiseModel::uniform_scaled(0.5)},
            {"von-mises(2)", PhaseNoiseModel::von_mises(2.0)}};
        for (std::size_t k = 0; k < models.size(); ++k) {
            std::vector<double> re(n_samples), im(n_samples);
            for (std::size_t i = 0; i < n_samples; ++i) {
                auto engine = RngStream{seed + 2 + k, i}.engine();
                const ComplexMat y = sample_complex_gaussian(n, 2, engine);
                const auto v = normalized_magnitudes(y.col(0));
                const auto u = normalized_magnitudes(y.col(1));
                const auto angles = sample_phase_noise(models[k].second, n, engine);
                std::complex<double> s{0.0, 0.0};
                for (std::size_t j = 0; j < n; ++j) {
                    s += v[j] * u[j] * std::polar(1.0, angles[j]);
                }
                re[i] = s.real();
                im[i] = s.imag();
            }
            const double mr = std::accumulate(re.begin(), re.end(), 0.0) / static_cast<double>(n_samples);
            const double mi = std::accumulate(im.begin(), im.end(), 0.0) / static_cast<double>(n_samples);
            std::vector<double> prod(n_samples);
            for (std::size_t i = 0; i < n_samples; ++i) {
                prod[i] = (re[i] - mr) * (im[i] - mi);
            }
            report.checks.push_back(within_sigma("Re/Im covariance is zero, " + models[k].first, prod, 0.0));
        }
    }

    // Closed-form two-degree chi-square.
    {
        const auto p = GaussianPairParams::from_mixture(1.0, 0.0, 1.0, 0.0);
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double x = 0.1 * i;
            worst = std::max(worst, std::abs(chi2_mix_cdf(x, p) - (1.0 - std::exp(-x / 2.0))));
        }
        report.checks.push_back({"chi-square mixture CDF vs 1 - exp(-x/2) on [0, 20]", worst < 1e-6,
                                 "max abs error " + format_double(worst) + " (tol 1e-6)"});
    }

    // AF slope on a log-log scale.
    {
        SystemConfig cfg;
        std::vector<double> lx, ly;
        for (std::size_t n = 64; n <= 1024; n *= 2) {
            cfg.n_ris = n;
            lx.push_back(std::log(static_cast<double>(n)));
            ly.push_back(std::log(snr_mean_var(cfg, opt.tw).moments.af));
        }
        const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
        const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxy += (lx[i] - mx) * (ly[i] - my);
            sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        const double slope = sxy / sxx;
        report.checks.push_back({"AF log-log slope (RR, zero noise, N=64..1024)", std::abs(slope + 1.0) <= 0.1,
                                 "slope " + fixed(slope, 4) + " (band -1 +/- 0.1)"});
    }

    // Plateau without a coherent component.
    {
        SystemConfig cfg;
        cfg.noise = PhaseNoiseModel::uniform_full();
        cfg.n_ris = 256;
        const double a256 = snr_mean_var(cfg, opt.tw).moments.af;
        cfg.n_ris = 1024;
        const double a1024 = snr_mean_var(cfg, opt.tw).moments.af;
        const double drift = std::abs(a1024 - a256) / a256;
        report.checks.push_back({"AF plateau under uniform phase noise (N=256 vs 1024)",
                                 drift < 0.05 && std::abs(a1024 - 1.0) < 0.1,
                                 "AF " + fixed(a256, 4) + " -> " + fixed(a1024, 4) + ", drift " +
                                     fixed(100 * drift, 2) + "% (tol 5%), level tol 10% around 1"});
    }

    // Exact-route Monte Carlo against the closed forms.
    {
        SystemConfig cfg;
        MonteCarloOptions mc;
        mc.workers = opt.workers;
        mc.tw = opt.tw;
        const auto exact = run_monte_carlo(cfg, Route::exact, n_samples, seed + 10, mc);
        const auto st = sample_stats(exact.values);
        const auto an = snr_mean_var(cfg, opt.tw).moments;
        const double err = std::abs(st.mean - an.mean) / an.mean;
        report.checks.push_back({"exact-route mean vs closed form (RR, N=64, zero noise)", err < 0.05,
                                 "MC " + fixed(st.mean, 2) + ", analytic " + fixed(an.mean, 2) + ", rel. error " +
                                     fixed(100 * err, 2) + "% (tol 5%)"});

    }

    // Route equivalence where the gamma law of the largest eigenvalue is accurate;
    // at N = 64 the exact route sits about 5% KS away (see README, known gaps).
    {
        SystemConfig cfg;
        cfg.n_ris = 256;
        MonteCarloOptions mc;
        mc.workers = opt.workers;
        mc.tw = opt.tw;
        const auto exact = run_monte_carlo(cfg, Route::exact, n_samples, seed + 12, mc);
        const auto eid = run_monte_carlo(cfg, Route::eid, n_samples, seed + 13, mc);
        const auto ks = ks_two_sample(exact, eid);
        report.checks.push_back({"exact vs equivalent-in-distribution route, KS (RR, N=256)", ks.statistic < 0.05,
                                 "KS distance " + fixed(ks.statistic, 4) + " (tol 0.05)"});
    }
    return report;
}

} // namespace risnr
