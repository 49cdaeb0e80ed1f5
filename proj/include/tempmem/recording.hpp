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

// Wavefront capture into a crossbar column.
//
// Native path: the first edge starts a RESET-polarity write on the source
// line; every other device sees -v_write until its own bit-line edge arrives,
// so device i is stressed for exactly t_i - min(t).
//
// Digital path: a counter (optionally refined by a vernier line) timestamps
// each edge relative to the first; the counts become resistance targets for a
// program/verify loop.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tempmem/crossbar.hpp"
#include "tempmem/device.hpp"
#include "tempmem/wavefront.hpp"

namespace tempmem {

/// Maps a nominal pulse duration (ns) to the duration actually applied. Used
/// to inject cycle-to-cycle programming noise; an empty function is ideal.
using PulseNoise = std::function<double(double)>;

struct CaptureResult {
  std::vector<double> pulses;             // total applied RESET time per channel, ns
  std::vector<double> final_resistances;  // ohm
  std::vector<int> iterations;            // program/verify cycles (1 for native)
  std::vector<bool> failed;               // digital path: did not reach tolerance
  double write_energy = 0.0;              // J
  bool span_exceeds_window = false;       // native path: input wider than linear window

  bool all_converged() const;
};

/// SETs every device of `col` back to ON and enables the column.
void initialize_column(ArrayState& state, std::size_t col);

/// True if every device in `col` is at stress 0.
bool column_is_on(const ArrayState& state, std::size_t col);

struct NativeCaptureOptions {
  double v_write = 1.4;                 // V, applied in RESET polarity
  double window_ns = kDefaultWindowNs;  // linear programming window
};

CaptureResult capture_native(ArrayState& state, const ArrayConfig& cfg, std::size_t col,
                             const Wavefront& w, const NativeCaptureOptions& opts,
                             const PulseNoise& noise = {});

enum class QuantizerKind { counter, vernier };

struct QuantizerSpec {
  QuantizerKind kind = QuantizerKind::counter;
  double t_clk = 1.0;   // ns
  double t_fine = 0.1;  // ns, vernier only
};

void validate(const QuantizerSpec& q);

struct Quantized {
  std::vector<std::int64_t> coarse;
  std::vector<std::int64_t> fine;  // all zero for a plain counter

  /// Measured delay of channel i in units of t_clk.
  double clocks(std::size_t i, const QuantizerSpec& q) const;
};

/// Floor quantization of the delays after the first edge.
Quantized quantize(const Wavefront& w, const QuantizerSpec& q);

struct ClosedLoopOptions {
  double v_write = 1.4;  // V, RESET polarity
  double tol = 1e-3;     // relative
  double step_ns = 0.01;
  int max_iters = 10000;
};

/// RESET-only program/verify: pulses each device by step_ns until
/// |R - target| <= tol * target. A device that overshoots or runs out of
/// iterations is flagged in `failed`; the rest of the column still runs.
CaptureResult program_closed_loop(ArrayState& state, const ArrayConfig& cfg, std::size_t col,
                                  std::span<const double> targets, const ClosedLoopOptions& opts,
                                  const PulseNoise& noise = {});

struct DigitalCaptureOptions {
  QuantizerSpec quantizer;
  double slope = kDefaultSpanOhm / kDefaultWindowNs;  // ohm per t_clk count
  ClosedLoopOptions loop;
};

/// Slope that maps a t_span window onto r_span, in ohm per clock count.
double default_slope(double r_span, double t_span, double t_clk);

/// quantize + program_closed_loop with targets nominal.r_on + slope * count.
CaptureResult capture_digital(ArrayState& state, const ArrayConfig& cfg,
                              const DeviceParams& nominal, std::size_t col, const Wavefront& w,
                              const DigitalCaptureOptions& opts, const PulseNoise& noise = {});

enum class CapturePath { native, digital };

enum class ScaleMode {
  none,       // recall at cfg.c_line
  fixed,      // recall at RoundTripOptions::scale_cap
  match_span  // pick the capacitance that maps the recalled resistance spread onto the input span
};

struct RoundTripOptions {
  CapturePath path = CapturePath::native;
  std::size_t column = 0;
  NativeCaptureOptions native;
  DigitalCaptureOptions digital;
  ScaleMode scale = ScaleMode::none;
  double scale_cap = 1.0e-12;  // F, for ScaleMode::fixed
};

struct RoundTripResult {
  Wavefront input;   // normalized
  Wavefront output;  // normalized
  double tau = 1.0;
  TimingError error;
  double effective_bits = kPrecisionCapBits;
  double recall_cap = 0.0;  // F
  EnergyReport recall_energy;
  CaptureResult capture;
};

/// initialize -> capture -> reset_lines -> playback, then compare. The bit
/// lines are left charged by the playback.
RoundTripResult round_trip(ArrayState& state, const ArrayConfig& cfg, const DeviceParams& nominal,
                           const Wavefront& w, const RoundTripOptions& opts,
                           const PulseNoise& noise = {});

}  // namespace tempmem
