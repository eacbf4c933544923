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

// Counter-based random streams, phase-noise laws and their trigonometric moments.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace risnr {

using ComplexMat = Eigen::MatrixXcd;
using ComplexVec = Eigen::VectorXcd;

// Philox4x32-10 counter-based generator. The key is the master seed, the upper
// half of the counter is the stream index, the lower half counts blocks within
// the stream. Output is 64 bits per call (two 32-bit words of a block).
class PhiloxEngine {
public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint32_t, 4>;

    PhiloxEngine(std::uint64_t key, std::uint64_t stream) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    // The raw bijection, exposed for known-answer tests.
    static Block encrypt(Block counter, std::array<std::uint32_t, 2> key) noexcept;

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    Block buffer_{};
    int used_ = 4;
};

// Value object naming one independent stream of a run. Sample i of a Monte
// Carlo run always draws from RngStream{seed, i}, so results do not depend on
// the order in which samples are produced.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    PhiloxEngine engine() const noexcept { return PhiloxEngine(master_seed, stream_index); }
};

namespace noise {
struct Zero {};
struct UniformFull {};
struct UniformScaled {
    double epsilon;
};
struct VonMises {
    double kappa;
};
} // namespace noise

// Zero-mean, symmetric phase-noise law applied independently to every RIS element.
class PhaseNoiseModel {
public:
    using Law = std::variant<noise::Zero, noise::UniformFull, noise::UniformScaled, noise::VonMises>;

    PhaseNoiseModel() = default;
    // Throws ParameterDomainError for epsilon outside (0, 1] or kappa <= 0.
    // UniformScaled{1} is stored as UniformFull.
    PhaseNoiseModel(Law law);

    static PhaseNoiseModel zero() { return {noise::Zero{}}; }
    static PhaseNoiseModel uniform_full() { return {noise::UniformFull{}}; }
    static PhaseNoiseModel uniform_scaled(double epsilon) { return {noise::UniformScaled{epsilon}}; }
    static PhaseNoiseModel von_mises(double kappa) { return {noise::VonMises{kappa}}; }

    // Fig. 1 style parameterization: 0 -> Zero, 1 -> UniformFull, otherwise UniformScaled.
    static PhaseNoiseModel from_epsilon(double epsilon);

    const Law &law() const noexcept { return law_; }
    std::string describe() const;

private:
    Law law_ = noise::Zero{};
};

// E{cos d}, E{sin d}, E{cos^2 d}, E{sin^2 d}.
struct TrigMoments {
    double c1 = 1.0;
    double s1 = 0.0;
    double c2 = 1.0;
    double s2 = 0.0;
};

TrigMoments trig_moments(const PhaseNoiseModel &model);

// E{sin 2d}; zero for every supported law since all are symmetric.
double sin2_mean(const PhaseNoiseModel &model);

std::vector<double> sample_phase_noise(const PhaseNoiseModel &model, std::size_t n, PhiloxEngine &engine);
std::vector<double> sample_phase_noise(const PhaseNoiseModel &model, std::size_t n, const RngStream &stream);

// i.i.d. CN(0, 1) entries: real and imaginary parts N(0, 1/2). Filled column by column.
ComplexMat sample_complex_gaussian(std::size_t rows, std::size_t cols, PhiloxEngine &engine);
ComplexMat sample_complex_gaussian(std::size_t rows, std::size_t cols, const RngStream &stream);

// Best-Fisher rejection sampler for VM(0, kappa).
double sample_von_mises(double kappa, PhiloxEngine &engine);

} // namespace risnr
