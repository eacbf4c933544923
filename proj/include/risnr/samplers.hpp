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
#include "risnr/rng.hpp"
#include "risnr/spectra.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace risnr {

enum class Route { exact, eid, large_n };

std::string to_string(Route route);
Route parse_route(std::string_view text);

// How the eigenpair (l, k) is chosen in the exact route. The default picks the
// pair that is best for coherent combining and then applies the phase noise;
// noisy_max takes the maximum after the noise has been applied.
enum class PairSelection { noise_free_optimum, noisy_max };

// Below this N the large-N construction is only a rough approximation.
inline constexpr std::size_t kLargeNMinimum = 16;

double snr_rr_exact(const ComplexMat &g, const ComplexMat &h, const std::vector<double> &noise_angles, double gamma0,
                    PairSelection selection = PairSelection::noise_free_optimum);
double snr_lr_exact(const ComplexMat &g, const std::vector<double> &noise_angles, double gamma0, std::size_t n_tx,
                    PairSelection selection = PairSelection::noise_free_optimum);

// One exact-route draw: fading, phase noise, then snr_rr_exact / snr_lr_exact.
double snr_exact_sample(const SystemConfig &cfg, const RngStream &stream,
                        PairSelection selection = PairSelection::noise_free_optimum);

double snr_eid_sample(const SystemConfig &cfg, PhiloxEngine &engine, const TracyWidomMoments &tw = {});
double snr_eid_sample(const SystemConfig &cfg, const RngStream &stream, const TracyWidomMoments &tw = {});

double snr_largen_sample(const SystemConfig &cfg, PhiloxEngine &engine, const TracyWidomMoments &tw = {});
double snr_largen_sample(const SystemConfig &cfg, const RngStream &stream, const TracyWidomMoments &tw = {});

// Empty when the configuration is inside the intended regime of the route.
std::string regime_warning(const SystemConfig &cfg, Route route);

struct SampleSet {
    std::vector<double> values;
    SystemConfig config;
    Route route = Route::exact;
    std::uint64_t master_seed = 0;
    std::size_t n_samples = 0;
    std::vector<std::string> warnings;
};

struct MonteCarloOptions {
    std::size_t workers = 1; // 0 picks the hardware concurrency
    PairSelection selection = PairSelection::noise_free_optimum;
    TracyWidomMoments tw{};
};

// Sample i always comes from RngStream{master_seed, i}, so the result does not
// depend on the number of workers.
SampleSet run_monte_carlo(const SystemConfig &cfg, Route route, std::size_t n_samples, std::uint64_t master_seed,
                          const MonteCarloOptions &options = {});

void write_csv(std::ostream &out, const SampleSet &set);

} // namespace risnr
