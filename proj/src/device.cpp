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

#include "tempmem/device.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tempmem {

namespace {

// Composite Simpson on [a, b]. The integrand here is smooth on the scale of
// tau_w, so a handful of panels per tau_w is plenty.
template <typename F>
double simpson(F&& f, double a, double b, int panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += f(a + i * h) * ((i % 2 != 0) ? 4.0 : 2.0);
  return sum * h / 3.0;
}

int panels_for(double length, double scale) {
  const int n = static_cast<int>(std::ceil(64.0 * length / scale));
  return std::clamp(n, 8, 4096);
}

}  // namespace

void validate(const DeviceParams& p) {
  if (!(p.r_on > 0.0 && p.r_on < p.r_off_max))
    throw std::invalid_argument("device: require 0 < r_on < r_off_max");
  if (!(p.amp_a > 0.0)) throw std::invalid_argument("device: require amp_a > 0");
  if (!(p.tau_w > 0.0)) throw std::invalid_argument("device: require tau_w > 0");
  if (!(p.v_prog_threshold > 0.0 && p.v_prog_threshold < p.v_write_nominal))
    throw std::invalid_argument("device: require 0 < v_prog_threshold < v_write_nominal");
  if (!(p.v_zero > 0.0)) throw std::invalid_argument("device: require v_zero > 0");
}

double resistance_of(double stress, const DeviceParams& p) {
  if (!(stress >= 0.0)) throw std::domain_error("resistance_of: stress must be >= 0");
  return std::min(p.r_on + p.amp_a * std::log1p(stress / p.tau_w), p.r_off_max);
}

double stress_for_resistance(double r, const DeviceParams& p) {
  if (!(r >= p.r_on && r < p.r_off_max))
    throw std::domain_error("stress_for_resistance: resistance outside [r_on, r_off_max)");
  return p.tau_w * std::expm1((r - p.r_on) / p.amp_a);
}

double stress_rate(double v, const DeviceParams& p) {
  if (std::abs(v) < p.v_prog_threshold || v > 0.0) return 0.0;
  return std::sinh(-v / p.v_zero) / std::sinh(p.v_write_nominal / p.v_zero);
}

DeviceState apply_pulse(DeviceState s, double v, double duration, const DeviceParams& p) {
  if (!(duration >= 0.0)) throw std::domain_error("apply_pulse: duration must be >= 0");
  if (duration == 0.0 || std::abs(v) < p.v_prog_threshold) return s;
  if (v > 0.0) return initialize_on(s);
  s.stress += duration * stress_rate(v, p);
  return s;
}

DeviceParams calibrate_amp(double r_span, double t_span, DeviceParams p) {
  if (!(r_span > 0.0)) throw std::domain_error("calibrate_amp: r_span must be > 0");
  if (!(t_span > 0.0)) throw std::domain_error("calibrate_amp: t_span must be > 0");
  p.amp_a = r_span / std::log1p(t_span / p.tau_w);
  return p;
}

double pulse_energy(const DeviceState& s, double v, double duration, const DeviceParams& p) {
  if (!(duration >= 0.0)) throw std::domain_error("pulse_energy: duration must be >= 0");
  if (duration == 0.0 || v == 0.0) return 0.0;
  constexpr double kNs = 1e-9;
  const double v2 = v * v;

  if (std::abs(v) < p.v_prog_threshold) return v2 / resistance(s, p) * duration * kNs;
  // Ideal SET: the device sits at r_on for the whole pulse.
  if (v > 0.0) return v2 / p.r_on * duration * kNs;

  const double rate = stress_rate(v, p);
  const auto conductance = [&](double t) { return 1.0 / resistance_of(s.stress + rate * t, p); };

  // Split at the clamp point so both pieces are smooth.
  const double s_clamp = p.tau_w * std::expm1((p.r_off_max - p.r_on) / p.amp_a);
  const double t_clamp = std::max(0.0, (s_clamp - s.stress) / rate);
  if (t_clamp >= duration)
    return v2 * simpson(conductance, 0.0, duration, panels_for(rate * duration, p.tau_w)) * kNs;

  const double before =
      t_clamp > 0.0 ? simpson(conductance, 0.0, t_clamp, panels_for(rate * t_clamp, p.tau_w)) : 0.0;
  const double after = (duration - t_clamp) / p.r_off_max;
  return v2 * (before + after) * kNs;
}

}  // namespace tempmem
