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

#include "risnr/channel.hpp"

#include "risnr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace risnr {

std::string to_string(ChannelKind kind) { return kind == ChannelKind::rr ? "rr" : "lr"; }

ChannelKind parse_channel_kind(std::string_view text)
{
    if (text == "rr" || text == "RR") {
        return ChannelKind::rr;
    }
    if (text == "lr" || text == "LR") {
        return ChannelKind::lr;
    }
    throw ParameterDomainError("unknown channel kind '" + std::string(text) + "' (expected rr or lr)");
}

void SystemConfig::validate() const
{
    if (n_tx < 1 || n_rx < 1) {
        throw ParameterDomainError("N_T and N_R must be at least 1");
    }
    if (n_ris < std::max(n_tx, n_rx)) {
        throw ParameterDomainError("N = " + std::to_string(n_ris) + " must be >= max(N_T, N_R) = " +
                                   std::to_string(std::max(n_tx, n_rx)));
    }
    if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
        throw ParameterDomainError("gamma0 must be positive and finite");
    }
}

ComplexMat draw_receive_channel(const SystemConfig &cfg, PhiloxEngine &engine)
{
    return sample_complex_gaussian(cfg.n_rx, cfg.n_ris, engine);
}

RayleighPair draw_rayleigh_pair(const SystemConfig &cfg, PhiloxEngine &engine)
{
    if (cfg.kind != ChannelKind::rr) {
        throw ConfigMismatchError("draw_rayleigh_pair needs an RR configuration");
    }
    cfg.validate();
    RayleighPair pair;
    pair.g = draw_receive_channel(cfg, engine);
    pair.h = sample_complex_gaussian(cfg.n_ris, cfg.n_tx, engine);
    return pair;
}

RayleighPair draw_rayleigh_pair(const SystemConfig &cfg, const RngStream &stream)
{
    auto engine = stream.engine();
    return draw_rayleigh_pair(cfg, engine);
}

ComplexVec array_response(std::size_t size, const ArrayGeometry &geom)
{
    if (size == 0) {
        throw ShapeError("array_response needs size >= 1");
    }
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(size));
    const double step = geom.element_spacing_wavelengths * std::sin(geom.steering_angle);
    ComplexVec a(static_cast<Eigen::Index>(size));
    for (Eigen::Index t = 0; t < a.size(); ++t) {
        a(t) = std::polar(amplitude, -2.0 * std::numbers::pi * step * static_cast<double>(t));
    }
    return a;
}

ComplexMat los_channel(const SystemConfig &cfg, const ArrayGeometry &geom_tx, const ArrayGeometry &geom_ris)
{
    if (cfg.kind != ChannelKind::lr) {
        throw ConfigMismatchError("los_channel needs an LR configuration");
    }
    cfg.validate();
    const ComplexVec a_tx = array_response(cfg.n_tx, geom_tx);
    const ComplexVec a_ris = array_response(cfg.n_ris, geom_ris);
    const double gain = std::sqrt(static_cast<double>(cfg.n_tx * cfg.n_rx));
    return gain * a_ris * a_tx.adjoint();
}

} // namespace risnr
