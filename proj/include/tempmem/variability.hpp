/* Copyright 2026 The tempmem Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Device-to-device and cycle-to-cycle variation, and the Monte Carlo harness
// that compares rank-order and exact-timing fidelity over many trials.
//
// Every trial draws from its own random stream derived from (seed, trial
// index), so the serial and OpenMP kernels produce bit-identical reports.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "tempmem/crossbar.hpp"
#include "tempmem/device.hpp"
#include "tempmem/recording.hpp"
#include "tempmem/wavefront.hpp"

namespace tempmem {

using Rng = std::mt19937_64;

struct VariationSpec {
  double d2d_sigma = 0.01;   // relative spread of r_on across devices
  double c2c_sigma = 0.042;  // relative spread of each programming pulse
  std::uint64_t seed = 1;
};

void validate(const VariationSpec& spec);

/// Independent stream for trial `index`.
Rng trial_stream(std::uint64_t seed, std::uint64_t index);

/// Lognormal factor with mean 1 and relative standard deviation rel_sigma.
/// Returns exactly 1 without consuming the stream when rel_sigma == 0.
double lognormal_factor(double rel_sigma, Rng& rng);

/// Row-major rows x cols grid of `base` with r_on scaled per device.
std::vector<DeviceParams> sample_array(const DeviceParams& base, double d2d_sigma,
                                       std::size_t rows, std::size_t cols, Rng& rng);

/// Same, seeded from spec.seed.
std::vector<DeviceParams> sample_array(const DeviceParams& base, const VariationSpec& spec,
                                       std::size_t rows, std::size_t cols);

double perturb_pulse(double duration, const VariationSpec& spec, Rng& rng);

/// `channels` event times spanning exactly [0, span_ns]: one channel at 0, one
/// at span_ns, the rest uniform in between, in random channel positions.
Wavefront random_wavefront(std::size_t channels, double span_ns, Rng& rng);

struct TrialScenario {
  ArrayConfig array;
  DeviceParams device;
  RoundTripOptions roundtrip;
  std::optional<Wavefront> wavefront;  // fixed input; otherwise random per trial
  std::size_t channels = 8;
  double span_ns = kDefaultWindowNs;
};

struct TrialOutcome {
  double tau = 0.0;
  double rms_ns = 0.0;
  double max_abs_ns = 0.0;
  double effective_bits = 0.0;
  double recall_energy_j = 0.0;
  double write_energy_j = 0.0;
  bool rank_exact = false;    // tau == 1
  bool timing_exact = false;  // rms <= span / 64
  bool converged = true;
};

/// 5-bit exact-timing criterion.
bool meets_timing_criterion(double span_ns, double rms_ns);

TrialOutcome run_trial(const TrialScenario& scn, const VariationSpec& spec, std::uint64_t index);

std::vector<TrialOutcome> run_trials_serial(const TrialScenario& scn, const VariationSpec& spec,
                                            std::size_t n_trials);
/// OpenMP kernel. threads == 0 uses the OpenMP default.
std::vector<TrialOutcome> run_trials_parallel(const TrialScenario& scn, const VariationSpec& spec,
                                              std::size_t n_trials, int threads = 0);

struct TrialReport {
  std::size_t n_trials = 0;
  double rank_exact_rate = 0.0;
  double timing_exact_rate = 0.0;
  double mean_tau = 0.0;
  double rms_timing_ns = 0.0;  // mean over trials
  double effective_bits_mean = 0.0;
  double energy_mean_j = 0.0;  // write + recall
  double write_energy_mean_j = 0.0;
  double recall_energy_mean_j = 0.0;
  double convergence_rate = 0.0;

  friend bool operator==(const TrialReport&, const TrialReport&) = default;
};

/// Reduces outcomes in index order.
TrialReport summarize(std::span<const TrialOutcome> outcomes);

enum class Execution { serial, parallel };

TrialReport monte_carlo(const TrialScenario& scn, const VariationSpec& spec, std::size_t n_trials,
                        Execution exec = Execution::parallel, int threads = 0);

}  // namespace tempmem
