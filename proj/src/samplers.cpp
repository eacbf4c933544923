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

#include "risnr/samplers.hpp"

#include "risnr/errors.hpp"
#include "risnr/format.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <ostream>
#include <random>
#include <thread>

namespace risnr {
namespace {

std::vector<std::complex<double>> phasors(const std::vector<double> &angles)
{
    std::vector<std::complex<double>> out(angles.size());
    for (std::size_t n = 0; n < angles.size(); ++n) {
        out[n] = std::polar(1.0, angles[n]);
    }
    return out;
}

std::complex<double> noisy_sum(const std::vector<double> &weights, const std::vector<std::complex<double>> &rot)
{
    std::complex<double> s{0.0, 0.0};
    for (std::size_t n = 0; n < weights.size(); ++n) {
        s += weights[n] * rot[n];
    }
    return s;
}

std::vector<double> magnitudes(const ComplexVec &v)
{
    std::vector<double> out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out[static_cast<std::size_t>(i)] = std::abs(v(i));
    }
    return out;
}

void check_angles(const std::vector<double> &angles, std::size_t n)
{
    if (angles.size() != n) {
        throw ShapeError("noise_angles has length " + std::to_string(angles.size()) + ", expected " +
                         std::to_string(n));
    }
}

double draw_gamma(const EigenSummary &s, PhiloxEngine &engine)
{
    std::gamma_distribution<double> dist(s.gamma_shape, s.gamma_scale);
    return dist(engine);
}

// Normalized magnitudes of a standard complex Gaussian N-vector.
std::vector<double> random_direction_magnitudes(std::size_t n, PhiloxEngine &engine)
{
    const ComplexMat y = sample_complex_gaussian(n, 1, engine);
    return normalized_magnitudes(y.col(0));
}

} // namespace

std::string to_string(Route route)
{
    switch (route) {
    case Route::exact:
        return "exact";
    case Route::eid:
        return "eid";
    case Route::large_n:
        return "large_n";
    }
    return "exact";
}

Route parse_route(std::string_view text)
{
    if (text == "exact") {
        return Route::exact;
    }
    if (text == "eid") {
        return Route::eid;
    }
    if (text == "large_n" || text == "large-n" || text == "largen") {
        return Route::large_n;
    }
    throw ParameterDomainError("unknown route '" + std::string(text) + "'");
}

double snr_rr_exact(const ComplexMat &g, const ComplexMat &h, const std::vector<double> &noise_angles, double gamma0,
                    PairSelection selection)
{
    const auto n = static_cast<std::size_t>(g.cols());
    if (n == 0 || static_cast<std::size_t>(h.rows()) != n || g.rows() == 0 || h.cols() == 0) {
        throw ShapeError("snr_rr_exact expects G as N_R x N and H as N x N_T");
    }
    check_angles(noise_angles, n);
    const auto dg = wishart_decompose(g, n, WishartSide::right);
    const auto dh = wishart_decompose(h, n, WishartSide::left);

    std::vector<std::vector<double>> mag_g, mag_h;
    for (const auto &v : dg.eigenvectors) {
        mag_g.push_back(magnitudes(v));
    }
    for (const auto &u : dh.eigenvectors) {
        mag_h.push_back(magnitudes(u));
    }

    const auto rot = phasors(noise_angles);
    const bool noisy_max = selection == PairSelection::noisy_max;
    double best_objective = -1.0;
    double best_value = 0.0;
    std::vector<double> weights(n);
    std::vector<double> best_weights;
    double best_lambdas = 0.0;
    for (std::size_t l = 0; l < mag_g.size(); ++l) {
        for (std::size_t k = 0; k < mag_h.size(); ++k) {
            double coherent = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                weights[i] = mag_g[l][i] * mag_h[k][i];
                coherent += weights[i];
            }
            const double lambdas = dg.eigenvalues[l] * dh.eigenvalues[k];
            if (noisy_max) {
                best_value = std::max(best_value, lambdas * std::norm(noisy_sum(weights, rot)));
            } else if (lambdas * coherent * coherent > best_objective) {
                best_objective = lambdas * coherent * coherent;
                best_weights = weights;
                best_lambdas = lambdas;
            }
        }
    }
    if (!noisy_max && !best_weights.empty()) {
        best_value = best_lambdas * std::norm(noisy_sum(best_weights, rot));
    }
    const double nd = static_cast<double>(n);
    return gamma0 * nd * nd * best_value;
}

double snr_lr_exact(const ComplexMat &g, const std::vector<double> &noise_angles, double gamma0, std::size_t n_tx,
                    PairSelection selection)
{
    const auto n = static_cast<std::size_t>(g.cols());
    if (n == 0 || g.rows() == 0) {
        throw ShapeError("snr_lr_exact expects G as N_R x N");
    }
    check_angles(noise_angles, n);
    const auto dg = wishart_decompose(g, n, WishartSide::right);

    const auto rot = phasors(noise_angles);
    double best_objective = -1.0;
    double best_value = 0.0;
    for (std::size_t l = 0; l < dg.eigenvectors.size(); ++l) {
        const auto w = magnitudes(dg.eigenvectors[l]);
        double coherent = 0.0;
        for (double x : w) {
            coherent += x;
        }
        if (selection == PairSelection::noisy_max) {
            best_value = std::max(best_value, dg.eigenvalues[l] * std::norm(noisy_sum(w, rot)));
        } else if (dg.eigenvalues[l] * coherent * coherent > best_objective) {
            best_objective = dg.eigenvalues[l] * coherent * coherent;
            best_value = dg.eigenvalues[l] * std::norm(noisy_sum(w, rot));
        }
    }
    return gamma0 * static_cast<double>(n_tx) * static_cast<double>(n) * best_value;
}

double snr_exact_sample(const SystemConfig &cfg, const RngStream &stream, PairSelection selection)
{
    cfg.validate();
    auto engine = stream.engine();
    if (cfg.kind == ChannelKind::rr) {
        const auto pair = draw_rayleigh_pair(cfg, engine);
        const auto angles = sample_phase_noise(cfg.noise, cfg.n_ris, engine);
        return snr_rr_exact(pair.g, pair.h, angles, cfg.gamma0, selection);
    }
    const auto g = draw_receive_channel(cfg, engine);
    const auto angles = sample_phase_noise(cfg.noise, cfg.n_ris, engine);
    return snr_lr_exact(g, angles, cfg.gamma0, cfg.n_tx, selection);
}

double snr_eid_sample(const SystemConfig &cfg, PhiloxEngine &engine, const TracyWidomMoments &tw)
{
    cfg.validate();
    const std::size_t n = cfg.n_ris;
    const double nd = static_cast<double>(n);
    const double lambda_g = draw_gamma(lambda_plus_gamma(cfg.n_rx, n, tw), engine);
    if (cfg.kind == ChannelKind::rr) {
        const double lambda_h = draw_gamma(lambda_plus_gamma(cfg.n_tx, n, tw), engine);
        const auto v = random_direction_magnitudes(n, engine);
        const auto u = random_direction_magnitudes(n, engine);
        const auto angles = sample_phase_noise(cfg.noise, n, engine);
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = v[i] * u[i];
        }
        return cfg.gamma0 * nd * nd * lambda_g * lambda_h * std::norm(noisy_sum(w, phasors(angles)));
    }
    const auto v = random_direction_magnitudes(n, engine);
    const auto angles = sample_phase_noise(cfg.noise, n, engine);
    return cfg.gamma0 * static_cast<double>(cfg.n_tx) * nd * lambda_g * std::norm(noisy_sum(v, phasors(angles)));
}

double snr_eid_sample(const SystemConfig &cfg, const RngStream &stream, const TracyWidomMoments &tw)
{
    auto engine = stream.engine();
    return snr_eid_sample(cfg, engine, tw);
}

double snr_largen_sample(const SystemConfig &cfg, PhiloxEngine &engine, const TracyWidomMoments &tw)
{
    cfg.validate();
    const std::size_t n = cfg.n_ris;
    const double nd = static_cast<double>(n);
    const auto p = sum_moments(sum_kind_for(cfg.kind), n, trig_moments(cfg.noise));

    double scale = 0.0;
    double lambdas = draw_gamma(lambda_plus_gamma(cfg.n_rx, n, tw), engine);
    if (cfg.kind == ChannelKind::rr) {
        lambdas *= draw_gamma(lambda_plus_gamma(cfg.n_tx, n, tw), engine);
        scale = cfg.gamma0 * nd * nd;
    } else {
        scale = cfg.gamma0 * static_cast<double>(cfg.n_tx) * nd;
    }

    // (sigma Z + m1)^2 is sigma^2 times a one-degree noncentral chi-square and
    // collapses to m1^2 for a degenerate component.
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = std::sqrt(p.var_re) * normal(engine) + p.m1_re;
    const double im = std::sqrt(p.var_im) * normal(engine) + p.m1_im;
    return scale * lambdas * (re * re + im * im);
}

double snr_largen_sample(const SystemConfig &cfg, const RngStream &stream, const TracyWidomMoments &tw)
{
    auto engine = stream.engine();
    return snr_largen_sample(cfg, engine, tw);
}

std::string regime_warning(const SystemConfig &cfg, Route route)
{
    if (route == Route::large_n && cfg.n_ris < kLargeNMinimum) {
        return "large-N route used with N = " + std::to_string(cfg.n_ris) + " < " + std::to_string(kLargeNMinimum) +
               "; the central-limit approximation may be poor";
    }
    return {};
}

SampleSet run_monte_carlo(const SystemConfig &cfg, Route route, std::size_t n_samples, std::uint64_t master_seed,
                          const MonteCarloOptions &options)
{
    if (n_samples == 0) {
        throw ParameterDomainError("run_monte_carlo needs n_samples >= 1");
    }
    cfg.validate();

    SampleSet set;
    set.config = cfg;
    set.route = route;
    set.master_seed = master_seed;
    set.n_samples = n_samples;
    set.values.assign(n_samples, 0.0);
    if (auto w = regime_warning(cfg, route); !w.empty()) {
        set.warnings.push_back(std::move(w));
    }

    const auto draw = [&](std::size_t i) {
        const RngStream stream{master_seed, i};
        switch (route) {
        case Route::exact:
            return snr_exact_sample(cfg, stream, options.selection);
        case Route::eid:
            return snr_eid_sample(cfg, stream, options.tw);
        case Route::large_n:
            return snr_largen_sample(cfg, stream, options.tw);
        }
        return 0.0;
    };

    std::size_t workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.workers;
    workers = std::min(workers, n_samples);

    // Contiguous index blocks per worker; errors are kept per block and the one
    // with the lowest sample index is rethrown.
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::size_t> error_index(workers, n_samples);
    const auto run_block = [&](std::size_t w) {
        const std::size_t begin = n_samples * w / workers;
        const std::size_t end = n_samples * (w + 1) / workers;
        for (std::size_t i = begin; i < end; ++i) {
            try {
                set.values[i] = draw(i);
            } catch (...) {
                errors[w] = std::current_exception();
                error_index[w] = i;
                return;
            }
        }
    };

    if (workers == 1) {
        run_block(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(run_block, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    const auto first = std::min_element(error_index.begin(), error_index.end());
    if (*first < n_samples) {
        std::rethrow_exception(errors[static_cast<std::size_t>(first - error_index.begin())]);
    }
    return set;
}

void write_csv(std::ostream &out, const SampleSet &set)
{
    out << "index,snr\n";
    for (std::size_t i = 0; i < set.values.size(); ++i) {
        out << std::to_string(i) << ',' << format_double(set.values[i]) << '\n';
    }
}

} // namespace risnr
