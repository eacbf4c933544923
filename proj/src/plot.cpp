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

#include "risnr/plot.hpp"

#include "risnr/format.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

namespace risnr {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 200.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const std::array<const char *, 8> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string &s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string num(double v)
{
    // Two decimals are plenty for pixel coordinates.
    return format_double(std::round(v * 100.0) / 100.0);
}

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    double map(double v) const
    {
        const double t = log ? std::log10(v) : v;
        return (t - lo) / (hi - lo);
    }
};

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

} // namespace

void write_svg_chart(std::ostream &out, const PlotAxes &axes, const std::vector<PlotSeries> &series)
{
    Axis ax{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), axes.log_x};
    Axis ay{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), axes.log_y};
    for (const auto &s : series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (usable(s.x[i], ax.log) && usable(s.y[i], ay.log)) {
                const double tx = ax.log ? std::log10(s.x[i]) : s.x[i];
                const double ty = ay.log ? std::log10(s.y[i]) : s.y[i];
                ax.lo = std::min(ax.lo, tx);
                ax.hi = std::max(ax.hi, tx);
                ay.lo = std::min(ay.lo, ty);
                ay.hi = std::max(ay.hi, ty);
            }
        }
    }
    if (!(ax.lo <= ax.hi)) {
        ax.lo = 0.0;
        ax.hi = 1.0;
    }
    if (!(ay.lo <= ay.hi)) {
        ay.lo = 0.0;
        ay.hi = 1.0;
    }
    if (ax.hi == ax.lo) {
        ax.hi = ax.lo + 1.0;
    }
    if (ay.hi == ay.lo) {
        ay.hi = ay.lo + 1.0;
    }

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const auto px = [&](double v) { return kLeft + pw * ax.map(v); };
    const auto py = [&](double v) { return kTop + ph * (1.0 - ay.map(v)); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
        << "\" fill=\"white\"/>\n";
    out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\""
        << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(axes.title) << "</text>\n";
    out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 16)
        << "\" text-anchor=\"middle\">" << escape(axes.x_label) << "</text>\n";
    out << "<text x=\"20\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << num(kTop + ph / 2) << ")\">" << escape(axes.y_label) << "</text>\n";

    // Five ticks per axis, labelled in data units.
    for (int i = 0; i <= 4; ++i) {
        const double f = i / 4.0;
        const double tx = ax.lo + f * (ax.hi - ax.lo);
        const double ty = ay.lo + f * (ay.hi - ay.lo);
        const double vx = ax.log ? std::pow(10.0, tx) : tx;
        const double vy = ay.log ? std::pow(10.0, ty) : ty;
        const double sx = kLeft + f * pw;
        const double sy = kTop + (1.0 - f) * ph;
        out << "<line x1=\"" << num(sx) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(sx) << "\" y2=\""
            << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(sx) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">"
            << format_double(std::round(vx * 1e4) / 1e4) << "</text>\n";
        out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(sy) << "\" x2=\"" << num(kLeft) << "\" y2=\""
            << num(sy) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy + 4) << "\" text-anchor=\"end\">"
            << format_double(std::round(vy * 1e4) / 1e4) << "</text>\n";
    }

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto &s = series[k];
        const char *color = kColors[k % kColors.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], ax.log) || !usable(s.y[i], ay.log)) {
                continue;
            }
            out << (first ? "" : " ") << num(px(s.x[i])) << ',' << num(py(s.y[i]));
            first = false;
        }
        out << "\"/>\n";
        const double ly = kTop + 14.0 + 18.0 * static_cast<double>(k);
        out << "<line x1=\"" << num(kWidth - kRight + 12) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
            << num(kWidth - kRight + 32) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(kWidth - kRight + 38) << "\" y=\"" << num(ly) << "\">" << escape(s.name)
            << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace risnr
