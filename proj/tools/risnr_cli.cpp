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

// risnr command-line front end.

#include "risnr/analytics.hpp"
#include "risnr/errors.hpp"
#include "risnr/experiments.hpp"
#include "risnr/format.hpp"
#include "risnr/samplers.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode { kOk = 0, kValidationFailed = 1, kUsage = 2, kIo = 3 };

struct ConfigFlags {
    std::string channel = "rr";
    std::size_t n = 64;
    std::size_t nt = 4;
    std::size_t nr = 4;
    double gamma0 = 1.0;
    std::string noise;
    std::optional<double> eps;
    double kappa = 1.0;

    void attach(CLI::App *app)
    {
        app->add_option("--channel", channel, "rr (Rayleigh-Rayleigh) or lr (LoS-Rayleigh)")
            ->check(CLI::IsMember({"rr", "lr"}));
        app->add_option("--n", n, "RIS elements")->check(CLI::PositiveNumber);
        app->add_option("--nt", nt, "transmit antennas")->check(CLI::PositiveNumber);
        app->add_option("--nr", nr, "receive antennas")->check(CLI::PositiveNumber);
        app->add_option("--gamma0", gamma0, "link-budget scaling");
        app->add_option("--noise", noise, "phase-noise law")
            ->check(CLI::IsMember({"zero", "uniform", "uniform-scaled", "von-mises"}));
        app->add_option("--eps", eps, "width of uniform-scaled noise, U(-eps*pi, eps*pi)");
        app->add_option("--kappa", kappa, "von Mises concentration");
    }

    risnr::SystemConfig build() const
    {
        risnr::SystemConfig cfg;
        cfg.kind = risnr::parse_channel_kind(channel);
        cfg.n_ris = n;
        cfg.n_tx = nt;
        cfg.n_rx = nr;
        cfg.gamma0 = gamma0;
        if (noise.empty()) {
            cfg.noise = eps ? risnr::PhaseNoiseModel::from_epsilon(*eps) : risnr::PhaseNoiseModel::zero();
        } else if (noise == "zero") {
            cfg.noise = risnr::PhaseNoiseModel::zero();
        } else if (noise == "uniform") {
            cfg.noise = risnr::PhaseNoiseModel::uniform_full();
        } else if (noise == "uniform-scaled") {
            if (!eps) {
                throw risnr::ParameterDomainError("--noise uniform-scaled needs --eps");
            }
            cfg.noise = risnr::PhaseNoiseModel::uniform_scaled(*eps);
        } else {
            cfg.noise = risnr::PhaseNoiseModel::von_mises(kappa);
        }
        cfg.validate();
        return cfg;
    }
};

struct RunFlags {
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::string out;
    std::string svg;

    void attach(CLI::App *app, bool svg_flag)
    {
        app->add_option("--samples", samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
        app->add_option("--seed", seed, "master seed");
        app->add_option("--workers", workers, "worker threads (0 = all cores); results do not depend on it");
        app->add_option("--out", out, "output CSV path (stdout if omitted)");
        if (svg_flag) {
            app->add_option("--svg", svg, "also write an SVG chart to this path");
        }
    }
};

// Hidden override of the largest-eigenvalue constants, used for mutation checks.
struct TwFlags {
    std::optional<double> alpha0;
    std::optional<double> beta0;

    void attach(CLI::App *app)
    {
        app->add_option("--alpha0", alpha0)->group("");
        app->add_option("--beta0", beta0)->group("");
    }

    risnr::TracyWidomMoments build() const
    {
        risnr::TracyWidomMoments tw;
        if (alpha0) {
            tw.mean = *alpha0;
        }
        if (beta0) {
            tw.variance = *beta0;
        }
        return tw;
    }
};

template <class Writer>
void emit(const std::string &path, Writer &&write)
{
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::ios_base::failure("cannot open '" + path + "' for writing");
    }
    write(out);
    out.flush();
    if (!out) {
        throw std::ios_base::failure("failed writing '" + path + "'");
    }
}

std::string kv(const std::string &key, double value) { return key + " = " + risnr::format_double(value) + "\n"; }

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"SNR statistics of RIS-aided MIMO links under fading and phase noise"};
    app.require_subcommand(1);

    ConfigFlags cfg_flags;
    RunFlags run_flags;
    TwFlags tw_flags;

    auto *moments = app.add_subcommand("moments", "print the Gaussian-pair and eigenvalue moments of a configuration");
    cfg_flags.attach(moments);
    tw_flags.attach(moments);

    auto *simulate = app.add_subcommand("simulate", "draw SNR samples and write them as CSV (index,snr)");
    cfg_flags.attach(simulate);
    run_flags.attach(simulate, false);
    tw_flags.attach(simulate);
    std::string route = "exact";
    simulate->add_option("--route", route, "exact, eid or large_n")
        ->check(CLI::IsMember({"exact", "eid", "large_n"}));

    auto *analytic = app.add_subcommand("analytic", "closed-form mean, variance, AF and gamma fit over N");
    cfg_flags.attach(analytic);
    tw_flags.attach(analytic);
    std::vector<std::size_t> n_values;
    std::string analytic_out;
    analytic->add_option("--n-values", n_values, "list of N (defaults to --n)");
    analytic->add_option("--out", analytic_out, "output CSV path (stdout if omitted)");

    auto *fig1 = app.add_subcommand("fig1", "amount-of-fading sweep over N, channel kind and epsilon");
    cfg_flags.attach(fig1);
    run_flags.attach(fig1, true);
    tw_flags.attach(fig1);
    std::vector<std::size_t> fig1_n{16, 32, 64, 128, 256, 512};
    std::vector<double> fig1_eps{0.0, 0.2, 0.5, 1.0};
    std::vector<std::string> fig1_channels{"rr", "lr"};
    fig1->add_option("--n-values", fig1_n, "list of N");
    fig1->add_option("--eps-values", fig1_eps, "list of epsilon");
    fig1->add_option("--channels", fig1_channels, "channel kinds")->check(CLI::IsMember({"rr", "lr"}));

    auto *fig2 = app.add_subcommand("fig2", "SNR CDF: exact ECDF, large-N ECDF and gamma fit");
    cfg_flags.attach(fig2);
    run_flags.attach(fig2, true);
    tw_flags.attach(fig2);

    auto *validate = app.add_subcommand("validate", "run the built-in oracle checks");
    std::size_t validate_samples = 10000;
    std::uint64_t validate_seed = 1;
    std::size_t validate_workers = 1;
    validate->add_option("--samples", validate_samples)->check(CLI::PositiveNumber);
    validate->add_option("--seed", validate_seed);
    validate->add_option("--workers", validate_workers);
    tw_flags.attach(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        const auto tw = tw_flags.build();
        if (*moments) {
            const auto cfg = cfg_flags.build();
            const auto t = risnr::trig_moments(cfg.noise);
            const auto p = risnr::sum_moments(risnr::sum_kind_for(cfg.kind), cfg.n_ris, t);
            const auto an = risnr::snr_mean_var(cfg, tw);
            const auto sc = risnr::scaling_coefficients(cfg, tw);
            std::string s;
            s += "noise = " + cfg.noise.describe() + "\n";
            s += kv("c1", t.c1) + kv("s1", t.s1) + kv("c2", t.c2) + kv("s2", t.s2);
            s += kv("m1_re", p.m1_re) + kv("m1_im", p.m1_im) + kv("m2_re", p.m2_re) + kv("m2_im", p.m2_im);
            s += kv("var_re", p.var_re) + kv("var_im", p.var_im);
            s += kv("noncent_re", p.noncent_re) + kv("noncent_im", p.noncent_im);
            s += kv("lambda_mean_g", an.terms.lambda_mean_g) + kv("lambda_second_g", an.terms.lambda_second_g);
            s += kv("lambda_mean_h", an.terms.lambda_mean_h) + kv("lambda_second_h", an.terms.lambda_second_h);
            s += kv("sum_second", an.terms.sum_second) + kv("sum_fourth", an.terms.sum_fourth);
            s += kv("snr_mean", an.moments.mean) + kv("snr_variance", an.moments.variance);
            s += kv("af", an.moments.af);
            s += kv("o_e0", sc.o_e0) + kv("o_e1", sc.o_e1) + kv("o_v0", sc.o_v0) + kv("o_v1", sc.o_v1);
            s += kv("zeta", sc.zeta);
            std::cout << s;
            return kOk;
        }
        if (*simulate) {
            const auto cfg = cfg_flags.build();
            risnr::MonteCarloOptions mc;
            mc.workers = run_flags.workers;
            mc.tw = tw;
            const auto set =
                risnr::run_monte_carlo(cfg, risnr::parse_route(route), run_flags.samples, run_flags.seed, mc);
            for (const auto &w : set.warnings) {
                std::cerr << "warning: " << w << "\n";
            }
            emit(run_flags.out, [&](std::ostream &os) { risnr::write_csv(os, set); });
            return kOk;
        }
        if (*analytic) {
            auto base = cfg_flags.build();
            if (n_values.empty()) {
                n_values.push_back(base.n_ris);
            }
            std::string csv = "N,mean,variance,af,af_scaling,gamma_shape,gamma_scale\n";
            for (std::size_t n : n_values) {
                base.n_ris = n;
                const auto m = risnr::snr_mean_var(base, tw).moments;
                const auto fit = risnr::gamma_fit(m);
                csv += std::to_string(n) + "," + risnr::format_double(m.mean) + "," +
                       risnr::format_double(m.variance) + "," + risnr::format_double(m.af) + "," +
                       risnr::format_double(risnr::asymptotic_moments(base, n, tw).af) + "," +
                       risnr::format_double(fit.shape) + "," + risnr::format_double(fit.scale) + "\n";
            }
            emit(analytic_out, [&](std::ostream &os) { os << csv; });
            return kOk;
        }
        if (*fig1 || *fig2) {
            risnr::ExperimentSpec spec;
            spec.config = cfg_flags.build();
            spec.n_samples = run_flags.samples;
            spec.master_seed = run_flags.seed;
            spec.workers = run_flags.workers;
            spec.output_path = run_flags.out;
            spec.tw = tw;
            if (*fig1) {
                spec.n_values = fig1_n;
                spec.epsilons = fig1_eps;
                spec.channels.clear();
                for (const auto &c : fig1_channels) {
                    spec.channels.push_back(risnr::parse_channel_kind(c));
                }
                const auto rows = risnr::fig1_rows(spec);
                emit(run_flags.out, [&](std::ostream &os) { risnr::write_fig1_csv(os, rows); });
                if (!run_flags.svg.empty()) {
                    emit(run_flags.svg, [&](std::ostream &os) { risnr::write_fig1_svg(os, rows); });
                }
            } else {
                spec.n_values = {spec.config.n_ris};
                spec.routes = {risnr::ExperimentRoute::exact, risnr::ExperimentRoute::large_n};
                const auto rows = risnr::fig2_rows(spec);
                emit(run_flags.out, [&](std::ostream &os) { risnr::write_fig2_csv(os, rows); });
                if (!run_flags.svg.empty()) {
                    emit(run_flags.svg, [&](std::ostream &os) { risnr::write_fig2_svg(os, rows); });
                }
            }
            std::cerr << "samples per Monte Carlo route: " << run_flags.samples << ", seed " << run_flags.seed
                      << "\n";
            return kOk;
        }
        if (*validate) {
            risnr::ValidateOptions opt;
            opt.n_samples = validate_samples;
            opt.master_seed = validate_seed;
            opt.workers = validate_workers;
            opt.tw = tw;
            const auto report = risnr::validate_suite(opt);
            std::cout << report.text();
            return report.all_passed() ? kOk : kValidationFailed;
        }
    } catch (const std::ios_base::failure &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationFailed;
    }
    return kUsage;
}
