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

#include "risnr/analytics.hpp"

#include "risnr/errors.hpp"
#include "risnr/special.hpp"

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace risnr {
namespace {

constexpr double kPi = std::numbers::pi;

struct LegendreRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Full Gauss-Legendre rule on [-1, 1] from Boost's half-rule tables.
template <unsigned Points>
LegendreRule make_legendre()
{
    using Gauss = boost::math::quadrature::gauss<double, Points>;
    const auto &a = Gauss::abscissa();
    const auto &w = Gauss::weights();
    LegendreRule r;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) {
            r.x.push_back(0.0);
            r.w.push_back(w[i]);
        } else {
            r.x.push_back(-a[i]);
            r.w.push_back(w[i]);
            r.x.push_back(a[i]);
            r.w.push_back(w[i]);
        }
    }
    return r;
}

const LegendreRule &legendre20()
{
    static const LegendreRule rule = make_legendre<20>();
    return rule;
}

const LegendreRule &legendre_for(std::size_t points)
{
    static const LegendreRule r32 = make_legendre<32>();
    static const LegendreRule r64 = make_legendre<64>();
    return points == 32 ? r32 : r64;
}

void fill_derived(GaussianPairParams &p)
{
    const auto derive = [](double m1, double m2, double &var, double &noncent, bool &degenerate) {
        var = m2 - m1 * m1;
        const double floor = 1e-13 * std::max(std::abs(m2), std::numeric_limits<double>::min());
        if (var <= floor) {
            var = 0.0;
            noncent = 0.0;
            degenerate = true;
        } else {
            noncent = m1 * m1 / var;
            degenerate = false;
        }
    };
    derive(p.m1_re, p.m2_re, p.var_re, p.noncent_re, p.degenerate_re);
    derive(p.m1_im, p.m2_im, p.var_im, p.noncent_im, p.degenerate_im);
}

// E{|sum|^2} and the variance of the chi-square mixture.
struct MixtureMoments {
    double second = 0.0;
    double variance = 0.0;
};

MixtureMoments mixture_moments(const GaussianPairParams &p)
{
    const auto part = [](double var, double noncent, double m1, bool degenerate) -> MixtureMoments {
        if (degenerate) {
            return {m1 * m1, 0.0};
        }
        return {var * (1.0 + noncent), 2.0 * var * var * (1.0 + 2.0 * noncent)};
    };
    const auto re = part(p.var_re, p.noncent_re, p.m1_re, p.degenerate_re);
    const auto im = part(p.var_im, p.noncent_im, p.m1_im, p.degenerate_im);
    return {re.second + im.second, re.variance + im.variance};
}

// ---- characteristic-function inversion ------------------------------------

struct MixComponent {
    double scale;
    double noncent;
};

class ImhofIntegrand {
public:
    ImhofIntegrand(std::vector<MixComponent> comps, double x) : comps_(std::move(comps)), x_(x) {}

    double operator()(double u) const
    {
        double theta = -0.5 * x_ * u;
        double log_rho = 0.0;
        for (const auto &c : comps_) {
            const double lu = c.scale * u;
            const double q = 1.0 + lu * lu;
            theta += 0.5 * (std::atan(lu) + c.noncent * lu / q);
            log_rho += 0.25 * std::log1p(lu * lu) + 0.5 * c.noncent * lu * lu / q;
        }
        if (u == 0.0) {
            return slope_at_zero();
        }
        return std::sin(theta) / (u * std::exp(log_rho));
    }

    // Bound on the local angular frequency of sin(theta(u)) for u' >= u.
    double frequency_bound(double u) const
    {
        double w = 0.5 * x_;
        for (const auto &c : comps_) {
            const double lu = c.scale * u;
            w += 0.5 * c.scale * (1.0 + 2.0 * c.noncent) / (1.0 + lu * lu);
        }
        return w;
    }

    // Upper bound on the neglected integral over [u, inf).
    double truncation_bound(double u) const
    {
        const double k = 0.5 * static_cast<double>(comps_.size());
        double log_t = std::log(kPi * k) + k * std::log(u);
        for (const auto &c : comps_) {
            const double lu = c.scale * u;
            log_t += 0.5 * std::log(c.scale) + 0.5 * c.noncent * lu * lu / (1.0 + lu * lu);
        }
        return std::exp(-log_t);
    }

    double max_scale() const
    {
        double s = 0.0;
        for (const auto &c : comps_) {
            s = std::max(s, c.scale);
        }
        return s;
    }

    double x() const { return x_; }

private:
    double slope_at_zero() const
    {
        double d = -0.5 * x_;
        for (const auto &c : comps_) {
            d += 0.5 * c.scale * (1.0 + c.noncent);
        }
        return d;
    }

    std::vector<MixComponent> comps_;
    double x_;
};

template <class F>
double gauss20(const F &f, double a, double b)
{
    const auto &rule = legendre20();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        sum += rule.w[i] * f(mid + half * rule.x[i]);
    }
    return half * sum;
}

// Wynn's epsilon algorithm on a stream of partial sums, one anti-diagonal kept.
class WynnEpsilon {
public:
    double push(double s)
    {
        std::vector<double> next(diag_.size() + 1);
        next[0] = s;
        for (std::size_t k = 1; k < next.size(); ++k) {
            const double prev_km1 = k >= 2 ? diag_[k - 2] : 0.0;
            const double diff = next[k - 1] - diag_[k - 1];
            if (diff == 0.0 || !std::isfinite(diff)) {
                // Sequence already converged at this level.
                next.resize(k);
                break;
            }
            next[k] = prev_km1 + 1.0 / diff;
        }
        diag_ = std::move(next);
        const std::size_t even = (diag_.size() - 1) & ~std::size_t{1};
        return diag_[even];
    }

private:
    std::vector<double> diag_;
};

// Returns the integral of the Imhof integrand over (0, inf).
double imhof_integral(const ImhofIntegrand &f)
{
    constexpr double kTruncation = 1e-13;
    const double x = f.x();
    const double base = 1.0 / f.max_scale();

    double u = 0.0;
    double sum = 0.0;
    for (int panel = 0; panel < 200000; ++panel) {
        const double omega = f.frequency_bound(u);
        const double width = std::min(0.5 * std::max(u, base), kPi / omega);
        sum += gauss20(f, u, u + width);
        u += width;
        if (f.truncation_bound(u) < kTruncation) {
            return sum;
        }
        // Hand over to period-wise summation once the phase is nearly linear.
        if (x > 0.0 && f.frequency_bound(u) - 0.5 * x < 0.125 * x && u > 4.0 * base) {
            break;
        }
    }
    if (!(x > 0.0)) {
        return sum;
    }

    const double period = 2.0 * kPi / x;
    WynnEpsilon wynn;
    double estimate = wynn.push(sum);
    double previous = estimate;
    int stable = 0;
    for (int k = 0; k < 400; ++k) {
        sum += gauss20(f, u, u + 0.5 * period) + gauss20(f, u + 0.5 * period, u + period);
        u += period;
        if (f.truncation_bound(u) < kTruncation) {
            return sum;
        }
        estimate = wynn.push(sum);
        if (std::abs(estimate - previous) <= 1e-15 + 1e-13 * std::abs(estimate)) {
            if (++stable >= 2) {
                return estimate;
            }
        } else {
            stable = 0;
        }
        previous = estimate;
    }
    return estimate;
}

// Fritsch-Carlson slopes for monotone cubic Hermite interpolation on a uniform grid.
std::vector<double> monotone_slopes(const std::vector<double> &y, double h)
{
    const std::size_t n = y.size();
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        delta[i] = (y[i + 1] - y[i]) / h;
    }
    std::vector<double> m(n);
    m[0] = delta[0];
    m[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        m[i] = (delta[i - 1] * delta[i] <= 0.0) ? 0.0 : 0.5 * (delta[i - 1] + delta[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (delta[i] == 0.0) {
            m[i] = 0.0;
            m[i + 1] = 0.0;
            continue;
        }
        const double a = m[i] / delta[i];
        const double b = m[i + 1] / delta[i];
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double t = 3.0 / std::sqrt(r);
            m[i] = t * a * delta[i];
            m[i + 1] = t * b * delta[i];
        }
    }
    return m;
}

} // namespace

SumKind sum_kind_for(ChannelKind kind) { return kind == ChannelKind::rr ? SumKind::upsilon : SumKind::psi; }

GaussianPairParams GaussianPairParams::from_mixture(double var_re, double noncent_re, double var_im, double noncent_im)
{
    if (var_re < 0.0 || var_im < 0.0 || noncent_re < 0.0 || noncent_im < 0.0) {
        throw ParameterDomainError("mixture scales and noncentralities must be nonnegative");
    }
    GaussianPairParams p;
    p.m1_re = std::sqrt(noncent_re * var_re);
    p.m1_im = std::sqrt(noncent_im * var_im);
    p.m2_re = var_re + p.m1_re * p.m1_re;
    p.m2_im = var_im + p.m1_im * p.m1_im;
    p.var_re = var_re;
    p.var_im = var_im;
    p.noncent_re = noncent_re;
    p.noncent_im = noncent_im;
    p.degenerate_re = var_re == 0.0;
    p.degenerate_im = var_im == 0.0;
    return p;
}

GaussianPairParams upsilon_moments(std::size_t n, const TrigMoments &t)
{
    if (n < 1) {
        throw ParameterDomainError("upsilon_moments needs N >= 1");
    }
    const double nd = static_cast<double>(n);
    const double r = special::gamma_half_ratio(nd);
    const double first = nd * (kPi / 4.0) * r * r;
    const double cross = (kPi * kPi / 16.0) * (nd - 1.0) / nd;
    GaussianPairParams p;
    p.m1_re = first * t.c1;
    p.m1_im = first * t.s1;
    p.m2_re = t.c2 / nd + cross * t.c1 * t.c1;
    p.m2_im = t.s2 / nd + cross * t.s1 * t.s1;
    fill_derived(p);
    return p;
}

GaussianPairParams psi_moments(std::size_t n, const TrigMoments &t)
{
    if (n < 1) {
        throw ParameterDomainError("psi_moments needs N >= 1");
    }
    const double nd = static_cast<double>(n);
    const double first = nd * std::sqrt(kPi / 4.0) * special::gamma_half_ratio(nd);
    const double cross = (kPi / 4.0) * (nd - 1.0);
    GaussianPairParams p;
    p.m1_re = first * t.c1;
    p.m1_im = first * t.s1;
    p.m2_re = t.c2 + cross * t.c1 * t.c1;
    p.m2_im = t.s2 + cross * t.s1 * t.s1;
    fill_derived(p);
    return p;
}

GaussianPairParams sum_moments(SumKind kind, std::size_t n, const TrigMoments &t)
{
    return kind == SumKind::upsilon ? upsilon_moments(n, t) : psi_moments(n, t);
}

double re_im_covariance(std::size_t n, const TrigMoments &t, SumKind kind, double sin2delta_mean)
{
    const auto p = sum_moments(kind, n, t);
    const double nd = static_cast<double>(n);
    if (kind == SumKind::upsilon) {
        return sin2delta_mean / (2.0 * nd) + (kPi * kPi / 16.0) * ((nd - 1.0) / nd) * t.c1 * t.s1 -
               p.m1_re * p.m1_im;
    }
    return 0.5 * sin2delta_mean + (kPi / 4.0) * (nd - 1.0) * t.c1 * t.s1 - p.m1_re * p.m1_im;
}

SnrAnalysis snr_mean_var(const SystemConfig &cfg, const TracyWidomMoments &tw)
{
    cfg.validate();
    const std::size_t n = cfg.n_ris;
    const double nd = static_cast<double>(n);
    const auto t = trig_moments(cfg.noise);
    const auto p = sum_moments(sum_kind_for(cfg.kind), n, t);
    const auto mix = mixture_moments(p);

    SnrAnalysis out;
    MomentTerms &terms = out.terms;
    const auto eig_g = lambda_plus_gamma(cfg.n_rx, n, tw);
    terms.lambda_mean_g = eig_g.mean;
    terms.lambda_second_g = eig_g.variance + eig_g.mean * eig_g.mean;
    if (cfg.kind == ChannelKind::rr) {
        const auto eig_h = lambda_plus_gamma(cfg.n_tx, n, tw);
        terms.lambda_mean_h = eig_h.mean;
        terms.lambda_second_h = eig_h.variance + eig_h.mean * eig_h.mean;
    }
    terms.sum_second = mix.second;
    terms.sum_fourth = mix.variance + mix.second * mix.second;

    const double scale =
        cfg.kind == ChannelKind::rr ? cfg.gamma0 * nd * nd : cfg.gamma0 * static_cast<double>(cfg.n_tx) * nd;
    const double lambda_mean = terms.lambda_mean_g * terms.lambda_mean_h;
    const double lambda_second = terms.lambda_second_g * terms.lambda_second_h;

    SnrMoments &m = out.moments;
    m.mean = scale * lambda_mean * terms.sum_second;
    m.variance = scale * scale *
                 (lambda_second * terms.sum_fourth - lambda_mean * lambda_mean * terms.sum_second * terms.sum_second);
    m.variance = std::max(m.variance, 0.0);
    m.af = amount_of_fading(m);
    return out;
}

double amount_of_fading(const SnrMoments &m)
{
    if (!(m.mean > 0.0)) {
        throw NumericDomainError("amount of fading needs a positive mean");
    }
    return m.variance / (m.mean * m.mean);
}

ScalingCoefficients scaling_coefficients(ChannelKind kind, std::size_t n_tx, std::size_t n_rx, const TrigMoments &t,
                                         const TracyWidomMoments &tw)
{
    if (t.s1 != 0.0) {
        throw UnsupportedRegimeError("scaling laws assume E{sin d} = 0");
    }
    const double beta0 = tw.variance;
    const double nt = static_cast<double>(n_tx);
    const double c1sq = t.c1 * t.c1;
    const double trig_var = t.c2 * t.c2 + t.s2 * t.s2;
    ScalingCoefficients s;
    if (kind == ChannelKind::rr) {
        s.zeta = -6.0 + beta0 * (std::cbrt(1.0 / nt) + std::cbrt(1.0 / static_cast<double>(n_rx)));
        s.o_e0 = 1.0;
        s.o_e1 = (kPi * kPi / 16.0) * c1sq;
        s.o_v0 = 2.0 * trig_var;
        s.o_v1 = (kPi * kPi / 4.0) * c1sq * t.c2 + (std::pow(kPi, 4) / 256.0) * s.zeta * c1sq * c1sq;
    } else {
        s.zeta = -5.0 + beta0 * std::cbrt(1.0 / static_cast<double>(n_rx));
        s.o_e0 = nt;
        s.o_e1 = (kPi / 4.0) * nt * c1sq;
        s.o_v0 = 2.0 * nt * nt * trig_var;
        // pi^2/16 follows from expanding the LR variance; see the large-N cross-check test.
        s.o_v1 = kPi * nt * nt * c1sq * t.c2 + (kPi * kPi / 16.0) * nt * nt * s.zeta * c1sq * c1sq;
    }
    return s;
}

ScalingCoefficients scaling_coefficients(const SystemConfig &cfg, const TracyWidomMoments &tw)
{
    return scaling_coefficients(cfg.kind, cfg.n_tx, cfg.n_rx, trig_moments(cfg.noise), tw);
}

SnrMoments asymptotic_moments(const SystemConfig &cfg, std::size_t n, const TracyWidomMoments &tw)
{
    const auto t = trig_moments(cfg.noise);
    const auto s = scaling_coefficients(cfg.kind, cfg.n_tx, cfg.n_rx, t, tw);
    const double nd = static_cast<double>(n);
    SnrMoments m;
    if (t.c1 == 0.0) {
        m.mean = cfg.gamma0 * s.o_e0 * nd;
        m.variance = cfg.gamma0 * cfg.gamma0 * s.o_v0 * nd * nd;
    } else {
        m.mean = cfg.gamma0 * s.o_e1 * nd * nd;
        m.variance = cfg.gamma0 * cfg.gamma0 * s.o_v1 * nd * nd * nd;
    }
    m.af = m.variance / (m.mean * m.mean);
    return m;
}

double GammaFit::cdf(double x) const
{
    if (!(x > 0.0)) {
        return 0.0;
    }
    return boost::math::gamma_p(shape, x / scale);
}

GammaFit gamma_fit(const SnrMoments &m)
{
    if (!(m.mean > 0.0)) {
        throw NumericDomainError("gamma fit needs a positive mean");
    }
    if (!(m.variance > 0.0)) {
        throw DegenerateFitError("gamma fit needs a positive variance");
    }
    return {m.mean * m.mean / m.variance, m.variance / m.mean};
}

double chi2_mix_cdf(double x, const GaussianPairParams &p)
{
    std::vector<MixComponent> comps;
    double shift = 0.0;
    const auto add = [&](double var, double noncent, double m1, bool degenerate) {
        if (degenerate || var == 0.0) {
            shift += m1 * m1;
        } else {
            comps.push_back({var, noncent});
        }
    };
    add(p.var_re, p.noncent_re, p.m1_re, p.degenerate_re);
    add(p.var_im, p.noncent_im, p.m1_im, p.degenerate_im);

    const double y = x - shift;
    if (comps.empty()) {
        return y >= 0.0 ? 1.0 : 0.0;
    }
    if (!(y > 0.0)) {
        return 0.0;
    }
    const double integral = imhof_integral(ImhofIntegrand(std::move(comps), y));
    return std::clamp(0.5 - integral / kPi, 0.0, 1.0);
}

// ---- large-N CDF -----------------------------------------------------------

LargeNCdf::LargeNCdf(const SystemConfig &cfg, const TracyWidomMoments &tw) : cfg_(cfg)
{
    cfg_.validate();
    const double nd = static_cast<double>(cfg_.n_ris);
    scale_ = cfg_.kind == ChannelKind::rr ? cfg_.gamma0 * nd * nd
                                          : cfg_.gamma0 * static_cast<double>(cfg_.n_tx) * nd;
    eig_g_ = lambda_plus_gamma(cfg_.n_rx, cfg_.n_ris, tw);
    if (cfg_.kind == ChannelKind::rr) {
        eig_h_ = lambda_plus_gamma(cfg_.n_tx, cfg_.n_ris, tw);
    }
    g64_ = gamma_rule(eig_g_, 64);
    g32_ = gamma_rule(eig_g_, 32);
    if (cfg_.kind == ChannelKind::rr) {
        h64_ = gamma_rule(eig_h_, 64);
        h32_ = gamma_rule(eig_h_, 32);
    }

    const auto p = sum_moments(sum_kind_for(cfg_.kind), cfg_.n_ris, trig_moments(cfg_.noise));
    if ((p.degenerate_re || p.var_re == 0.0) && (p.degenerate_im || p.var_im == 0.0)) {
        point_mass_ = true;
        point_value_ = p.m1_re * p.m1_re + p.m1_im * p.m1_im;
        return;
    }

    // Tabulate the mixture CDF on a uniform grid in sqrt(y), where it is smooth
    // even for a single chi-square component.
    const auto mix = mixture_moments(p);
    double y_max = mix.second + 40.0 * std::sqrt(mix.variance);
    for (int i = 0; i < 20 && chi2_mix_cdf(y_max, p) < 1.0 - 1e-12; ++i) {
        y_max *= 2.0;
    }
    constexpr std::size_t kTable = 4097;
    s_max_ = std::sqrt(y_max);
    const double h = s_max_ / static_cast<double>(kTable - 1);
    table_.resize(kTable);
    double running = 0.0;
    for (std::size_t i = 0; i < kTable; ++i) {
        const double s = h * static_cast<double>(i);
        running = std::max(running, chi2_mix_cdf(s * s, p));
        table_[i] = running;
    }
    slopes_ = monotone_slopes(table_, h);
}

LargeNCdf::Rule LargeNCdf::gamma_rule(const EigenSummary &s, std::size_t points) const
{
    const boost::math::gamma_distribution<double> dist(s.gamma_shape, s.gamma_scale);
    const double lo = boost::math::quantile(dist, 1e-8);
    const double hi = boost::math::quantile(dist, 1.0 - 1e-8);
    const auto &leg = legendre_for(points);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    Rule r;
    for (std::size_t i = 0; i < leg.x.size(); ++i) {
        const double node = mid + half * leg.x[i];
        r.nodes.push_back(node);
        r.weights.push_back(half * leg.w[i] * boost::math::pdf(dist, node));
    }
    return r;
}

double LargeNCdf::mixture_cdf(double y) const
{
    if (point_mass_) {
        return y >= point_value_ ? 1.0 : 0.0;
    }
    if (!(y > 0.0)) {
        return 0.0;
    }
    const double s = std::sqrt(y);
    if (s >= s_max_) {
        return 1.0;
    }
    const std::size_t n = table_.size();
    const double h = s_max_ / static_cast<double>(n - 1);
    const std::size_t i = std::min(static_cast<std::size_t>(s / h), n - 2);
    const double t = (s - h * static_cast<double>(i)) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double value = (2 * t3 - 3 * t2 + 1) * table_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] +
                         (-2 * t3 + 3 * t2) * table_[i + 1] + (t3 - t2) * h * slopes_[i + 1];
    return std::clamp(value, 0.0, 1.0);
}

double LargeNCdf::evaluate(double x, const Rule &g, const Rule &h) const
{
    double total = 0.0;
    if (cfg_.kind == ChannelKind::lr) {
        if (point_mass_) {
            const boost::math::gamma_distribution<double> dist(eig_g_.gamma_shape, eig_g_.gamma_scale);
            return boost::math::cdf(dist, x / (scale_ * point_value_));
        }
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            total += g.weights[i] * mixture_cdf(x / (scale_ * g.nodes[i]));
        }
        return total;
    }
    if (point_mass_) {
        const boost::math::gamma_distribution<double> dist(eig_h_.gamma_shape, eig_h_.gamma_scale);
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            total += g.weights[i] * boost::math::cdf(dist, x / (scale_ * point_value_ * g.nodes[i]));
        }
        return total;
    }
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        double inner = 0.0;
        const double base = scale_ * g.nodes[i];
        for (std::size_t j = 0; j < h.nodes.size(); ++j) {
            inner += h.weights[j] * mixture_cdf(x / (base * h.nodes[j]));
        }
        total += g.weights[i] * inner;
    }
    return total;
}

double LargeNCdf::operator()(double x) const
{
    if (!(x > 0.0)) {
        return 0.0;
    }
    const double fine = evaluate(x, g64_, h64_);
    const double coarse = evaluate(x, g32_, h32_);
    const double error = std::abs(fine - coarse);
    if (error > 1e-4) {
        throw AccuracyError("large-N CDF quadrature did not converge at x = " + std::to_string(x), fine, error);
    }
    return std::clamp(fine, 0.0, 1.0);
}

double snr_largen_cdf(double x, const SystemConfig &cfg, const TracyWidomMoments &tw)
{
    return LargeNCdf(cfg, tw)(x);
}

} // namespace risnr
