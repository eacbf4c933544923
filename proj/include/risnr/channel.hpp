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

// Channel matrices of the transmitter-RIS-receiver link.

#pragma once

#include "risnr/rng.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace risnr {

// rr: Rayleigh on both hops. lr: deterministic line of sight on the
// transmitter-RIS hop, Rayleigh on the RIS-receiver hop.
enum class ChannelKind { rr, lr };

std::string to_string(ChannelKind kind);
ChannelKind parse_channel_kind(std::string_view text);

struct SystemConfig {
    std::size_t n_ris = 64; // N, RIS elements
    std::size_t n_tx = 4;   // N_T
    std::size_t n_rx = 4;   // N_R
    double gamma0 = 1.0;    // link-budget scaling, a constant
    ChannelKind kind = ChannelKind::rr;
    PhaseNoiseModel noise;

    // Throws ParameterDomainError unless N >= max(N_T, N_R) >= 1 and gamma0 > 0.
    void validate() const;
};

// Uniform linear array. Element t has phase 2*pi*t*spacing*sin(steering_angle).
struct ArrayGeometry {
    double element_spacing_wavelengths = 0.5;
    double steering_angle = 0.0;
};

struct RayleighPair {
    ComplexMat g; // N_R x N, RIS -> receiver
    ComplexMat h; // N x N_T, transmitter -> RIS
};

// Draws G then H from the engine. Throws ConfigMismatchError for LR configs.
RayleighPair draw_rayleigh_pair(const SystemConfig &cfg, PhiloxEngine &engine);
RayleighPair draw_rayleigh_pair(const SystemConfig &cfg, const RngStream &stream);

// N_R x N receive-side Rayleigh matrix, shared by both channel kinds.
ComplexMat draw_receive_channel(const SystemConfig &cfg, PhiloxEngine &engine);

// Unit-norm constant-modulus response (1/sqrt(size)) exp(-j 2 pi f(t)).
ComplexVec array_response(std::size_t size, const ArrayGeometry &geom);

// H = sqrt(N_T N_R) a_RIS a_T^H, rank one with ||H||_F^2 = N_T N_R.
// Throws ConfigMismatchError for RR configs.
ComplexMat los_channel(const SystemConfig &cfg, const ArrayGeometry &geom_tx, const ArrayGeometry &geom_ris);

} // namespace risnr
