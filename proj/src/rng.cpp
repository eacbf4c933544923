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

#include "risnr/rng.hpp"

#include "risnr/errors.hpp"
#include "risnr/special.hpp"

#include <algorithm>
#include <cmath>
#include <locale>
#include <numbers>
#include <random>
#include <sstream>

namespace risnr {

// ---- Philox4x32-10 -------------------------------------------------------

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) noexcept
{
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

} // namespace

PhiloxEngine::Block PhiloxEngine::encrypt(Block ctr, std::array<std::uint32_t, 2> key) noexcept
{
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

PhiloxEngine::PhiloxEngine(std::uint64_t key, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)}, stream_(stream)
{
}

void PhiloxEngine::refill() noexcept
{
    const Block ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                    static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    buffer_ = encrypt(ctr, key_);
    ++block_;
    used_ = 0;
}

PhiloxEngine::result_type PhiloxEngine::operator()() noexcept
{
    if (used_ >= 4) {
        refill();
    }
    const std::uint64_t lo = buffer_[used_];
    const std::uint64_t hi = buffer_[used_ + 1];
    used_ += 2;
    return (hi << 32) | lo;
}

// ---- phase-noise laws ----------------------------------------------------

PhaseNoiseModel::PhaseNoiseModel(Law law) : law_(law)
{
    if (const auto *scaled = std::get_if<noise::UniformScaled>(&law_)) {
        const double eps = scaled->epsilon;
        if (!(eps > 0.0 && eps <= 1.0)) {
            throw ParameterDomainError("uniform-scaled phase noise needs epsilon in (0, 1], got " +
                                       std::to_string(eps));
        }
        if (eps == 1.0) {
            law_ = noise::UniformFull{};
        }
    } else if (const auto *vm = std::get_if<noise::VonMises>(&law_)) {
        if (!(vm->kappa > 0.0) || !std::isfinite(vm->kappa)) {
            throw ParameterDomainError("von Mises phase noise needs kappa > 0, got " + std::to_string(vm->kappa));
        }
    }
}

PhaseNoiseModel PhaseNoiseModel::from_epsilon(double epsilon)
{
    if (epsilon == 0.0) {
        return zero();
    }
    return uniform_scaled(epsilon);
}

std::string PhaseNoiseModel::describe() const
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    std::visit(
        [&os](const auto &law) {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, noise::Zero>) {
                os << "zero";
            } else if constexpr (std::is_same_v<T, noise::UniformFull>) {
                os << "uniform(-pi,pi)";
            } else if constexpr (std::is_same_v<T, noise::UniformScaled>) {
                os << "uniform(-" << law.epsilon << "pi," << law.epsilon << "pi)";
            } else {
                os << "von-mises(kappa=" << law.kappa << ")";
            }
        },
        law_);
    return os.str();
}

TrigMoments trig_moments(const PhaseNoiseModel &model)
{
    return std::visit(
        [](const auto &law) -> TrigMoments {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, noise::Zero>) {
                return {1.0, 0.0, 1.0, 0.0};
            } else if constexpr (std::is_same_v<T, noise::UniformFull>) {
                return {0.0, 0.0, 0.5, 0.5};
            } else if constexpr (std::is_same_v<T, noise::UniformScaled>) {
                const double s2 = 0.5 * (1.0 - special::sinc(2.0 * law.epsilon));
                return {special::sinc(law.epsilon), 0.0, 1.0 - s2, s2};
            } else {
                // Ratios of scaled functions: the e^{-kappa} factors cancel.
                const double k = law.kappa;
                const double i0 = special::bessel_i0_scaled(k);
                const double i1 = special::bessel_i1_scaled(k);
                const double s2 = i1 / (k * i0);
                return {i1 / i0, 0.0, 1.0 - s2, s2};
            }
        },
        model.law());
}

double sin2_mean(const PhaseNoiseModel &) { return 0.0; }

double sample_von_mises(double kappa, PhiloxEngine &engine)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (kappa < 1e-8) {
        return std::numbers::pi * (2.0 * unit(engine) - 1.0);
    }
    const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
    const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
    const double r = (1.0 + rho * rho) / (2.0 * rho);
    for (;;) {
        const double u1 = unit(engine);
        const double u2 = unit(engine);
        const double u3 = unit(engine);
        const double z = std::cos(std::numbers::pi * u1);
        const double f = (1.0 + r * z) / (r + z);
        const double c = kappa * (r - f);
        if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
            const double angle = std::acos(std::clamp(f, -1.0, 1.0));
            return u3 > 0.5 ? angle : -angle;
        }
    }
}

std::vector<double> sample_phase_noise(const PhaseNoiseModel &model, std::size_t n, PhiloxEngine &engine)
{
    if (n == 0) {
        throw ParameterDomainError("sample_phase_noise needs n >= 1");
    }
    std::vector<double> angles(n, 0.0);
    std::visit(
        [&](const auto &law) {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, noise::UniformFull>) {
                std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
                for (auto &a : angles) {
                    a = dist(engine);
                }
            } else if constexpr (std::is_same_v<T, noise::UniformScaled>) {
                const double bound = law.epsilon * std::numbers::pi;
                std::uniform_real_distribution<double> dist(-bound, bound);
                for (auto &a : angles) {
                    a = dist(engine);
                }
            } else if constexpr (std::is_same_v<T, noise::VonMises>) {
                for (auto &a : angles) {
                    a = sample_von_mises(law.kappa, engine);
                }
            }
        },
        model.law());
    return angles;
}

std::vector<double> sample_phase_noise(const PhaseNoiseModel &model, std::size_t n, const RngStream &stream)
{
    auto engine = stream.engine();
    return sample_phase_noise(model, n, engine);
}

ComplexMat sample_complex_gaussian(std::size_t rows, std::size_t cols, PhiloxEngine &engine)
{
    if (rows == 0 || cols == 0) {
        throw ShapeError("sample_complex_gaussian needs rows, cols >= 1");
    }
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const double re = normal(engine);
            const double im = normal(engine);
            m(i, j) = {re, im};
        }
    }
    return m;
}

ComplexMat sample_complex_gaussian(std::size_t rows, std::size_t cols, const RngStream &stream)
{
    auto engine = stream.engine();
    return sample_complex_gaussian(rows, cols, engine);
}

} // namespace risnr
