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

// Behavioral memristor model.
//
// Units throughout: resistance in ohm, time in ns, voltage in V, energy in J.
// The resistance state is carried as accumulated programming stress s (ns of
// equivalent nominal-voltage RESET pulse). Resistance follows
//
//   R(s) = r_on + amp_a * ln(1 + s / tau_w),   clamped at r_off_max
//
// which is close to linear for s << tau_w and compresses logarithmically
// beyond it.

#include <cmath>
#include <stdexcept>
#include <string>

namespace tempmem {

/// Thrown when an operation is called on state that violates its documented
/// precondition (as opposed to a bad numeric argument, which is a domain_error).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Nominal programming window: a t_span pulse at nominal write voltage moves a
/// fresh device from r_on to r_on + r_span.
inline constexpr double kDefaultWindowNs = 40.0;
inline constexpr double kDefaultSpanOhm = 30.0e3;

struct DeviceParams {
  double r_on = 10.0e3;
  double r_off_max = 1.0e6;
  double tau_w = 200.0;
  double amp_a = kDefaultSpanOhm / std::log1p(kDefaultWindowNs / 200.0);
  double v_prog_threshold = 1.0;
  double v_zero = 0.35;
  double v_write_nominal = 1.4;
};

/// Throws std::invalid_argument naming the first violated invariant.
void validate(const DeviceParams& p);

struct DeviceState {
  double stress = 0.0;  // ns, >= 0

  friend bool operator==(const DeviceState&, const DeviceState&) = default;
};

/// Resistance at a given stress. Throws std::domain_error for negative stress.
double resistance_of(double stress, const DeviceParams& p);

inline double resistance(const DeviceState& s, const DeviceParams& p) {
  return resistance_of(s.stress, p);
}

/// Inverse of resistance_of on [r_on, r_off_max).
double stress_for_resistance(double r, const DeviceParams& p);

/// Stress accumulated per ns of pulse at device voltage v, relative to the
/// nominal write voltage. Zero below the programming threshold and for the
/// SET polarity.
double stress_rate(double v, const DeviceParams& p);

/// Applies a rectangular pulse of duration ns at device voltage v.
///   |v| <  v_prog_threshold : no change (reads are non-disturbing)
///   v  <= -v_prog_threshold : RESET, stress grows by duration * stress_rate(v)
///   v  >=  v_prog_threshold : ideal SET back to stress 0
DeviceState apply_pulse(DeviceState s, double v, double duration, const DeviceParams& p);

inline DeviceState initialize_on(DeviceState) { return DeviceState{}; }

/// Returns p with amp_a chosen so that a t_span pulse at nominal voltage moves
/// a fresh device by exactly r_span.
DeviceParams calibrate_amp(double r_span, double t_span, DeviceParams p);

/// Joule energy (J) dissipated in the device by a pulse of `duration` ns at
/// voltage v starting from state s, integrating v^2 / R(t) along the stress
/// trajectory.
double pulse_energy(const DeviceState& s, double v, double duration, const DeviceParams& p);

}  // namespace tempmem
