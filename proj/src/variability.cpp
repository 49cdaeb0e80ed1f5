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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tempmem/variability.hpp"

namespace tempmem {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void validate(const VariationSpec& spec) {
  if (!(spec.d2d_sigma >= 0.0 && spec.c2c_sigma >= 0.0))
    throw std::invalid_argument("variation: sigmas must be >= 0");
}

Rng trial_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed ^ splitmix64(index + 1)));
}

double lognormal_factor(double rel_sigma, Rng& rng) {
  if (rel_sigma == 0.0) return 1.0;
  const double s = std::sqrt(std::log1p(rel_sigma * rel_sigma));
  std::normal_distribution<double> z(0.0, 1.0);
  return std::exp(s * z(rng) - 0.5 * s * s);
}

std::vector<DeviceParams> sample_array(const DeviceParams& base, double d2d_sigma,
                                       std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<DeviceParams> grid(rows * cols, base);
  for (auto& p : grid) p.r_on = base.r_on * lognormal_factor(d2d_sigma, rng);
  return grid;
}

std::vector<DeviceParams> sample_array(const DeviceParams& base, const VariationSpec& spec,
                                       std::size_t rows, std::size_t cols) {
  validate(spec);
  Rng rng(spec.seed);
  return sample_array(base, spec.d2d_sigma, rows, cols, rng);
}

double perturb_pulse(double duration, const VariationSpec& spec, Rng& rng) {
  if (!(duration >= 0.0)) throw std::domain_error("perturb_pulse: duration must be >= 0");
  return duration * lognormal_factor(spec.c2c_sigma, rng);
}

Wavefront random_wavefront(std::size_t channels, double span_ns, Rng& rng) {
  if (channels == 0) throw std::domain_error("random_wavefront: need at least one channel");
  if (!(span_ns >= 0.0)) throw std::domain_error("random_wavefront: span must be >= 0");
  std::vector<double> t(channels, 0.0);
  std::uniform_real_distribution<double> u(0.0, span_ns);
  if (channels > 1) t[1] = span_ns;
  for (std::size_t i = 2; i < channels; ++i) t[i] = u(rng);
  // Fisher-Yates with an explicit draw so the order does not depend on the
  // library's shuffle implementation.
  for (std::size_t i = channels; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(t[i - 1], t[pick(rng)]);
  }
  return Wavefront(std::move(t));
}

bool meets_timing_criterion(double span_ns, double rms_ns) {
  return span_ns > 0.0 ? rms_ns <= span_ns / 64.0 : rms_ns == 0.0;
}

TrialOutcome run_trial(const TrialScenario& scn, const VariationSpec& spec, std::uint64_t index) {
  Rng rng = trial_stream(spec.seed, index);
  const Wavefront w = scn.wavefront ? *scn.wavefront : random_wavefront(scn.channels, scn.span_ns, rng);

  ArrayConfig cfg = scn.array;
  cfg.rows = w.size();
  cfg.cols = std::max(cfg.cols, scn.roundtrip.column + 1);
  ArrayState state(cfg, scn.device);
  if (spec.d2d_sigma > 0.0)
    state.set_device_params(sample_array(scn.device, spec.d2d_sigma, cfg.rows, cfg.cols, rng));

  PulseNoise noise;
  if (spec.c2c_sigma > 0.0) noise = [&](double d) { return perturb_pulse(d, spec, rng); };

  const RoundTripResult rt = round_trip(state, cfg, scn.device, w, scn.roundtrip, noise);

  TrialOutcome o;
  o.tau = rt.tau;
  o.rms_ns = rt.error.rms;
  o.max_abs_ns = rt.error.max_abs;
  o.effective_bits = rt.effective_bits;
  o.recall_energy_j = rt.recall_energy.per_line * static_cast<double>(rt.recall_energy.lines);
  o.write_energy_j = rt.capture.write_energy;
  o.rank_exact = rt.tau == 1.0;
  o.timing_exact = meets_timing_criterion(rt.input.span(), rt.error.rms);
  o.converged = rt.capture.all_converged();
  return o;
}

TrialReport summarize(std::span<const TrialOutcome> outcomes) {
  TrialReport r;
  r.n_trials = outcomes.size();
  if (outcomes.empty()) return r;
  std::size_t rank_ok = 0, timing_ok = 0, conv = 0;
  for (const auto& o : outcomes) {
    rank_ok += o.rank_exact ? 1 : 0;
    timing_ok += o.timing_exact ? 1 : 0;
    conv += o.converged ? 1 : 0;
    r.mean_tau += o.tau;
    r.rms_timing_ns += o.rms_ns;
    r.effective_bits_mean += o.effective_bits;
    r.write_energy_mean_j += o.write_energy_j;
    r.recall_energy_mean_j += o.recall_energy_j;
  }
  const double n = static_cast<double>(outcomes.size());
  r.rank_exact_rate = static_cast<double>(rank_ok) / n;
  r.timing_exact_rate = static_cast<double>(timing_ok) / n;
  r.convergence_rate = static_cast<double>(conv) / n;
  r.mean_tau /= n;
  r.rms_timing_ns /= n;
  r.effective_bits_mean /= n;
  r.write_energy_mean_j /= n;
  r.recall_energy_mean_j /= n;
  r.energy_mean_j = r.write_energy_mean_j + r.recall_energy_mean_j;
  return r;
}

}  // namespace tempmem
