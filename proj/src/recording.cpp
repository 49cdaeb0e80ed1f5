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

#include "tempmem/recording.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tempmem {

namespace {

// Decimal inputs like 9.7 ns land a hair below their grid point after the
// subtraction; snap values within this many counts of the next integer up.
constexpr double kCountSnap = 1e-9;

std::int64_t floor_count(double x) { return static_cast<std::int64_t>(std::floor(x + kCountSnap)); }

void check_column(const ArrayState& state, const ArrayConfig& cfg, std::size_t col) {
  if (state.rows() != cfg.rows || state.cols() != cfg.cols)
    throw std::domain_error("capture: array state does not match config");
  if (col >= cfg.cols) throw std::domain_error("capture: column index out of range");
}

CaptureResult empty_result(std::size_t rows) {
  CaptureResult r;
  r.pulses.assign(rows, 0.0);
  r.final_resistances.assign(rows, 0.0);
  r.iterations.assign(rows, 0);
  r.failed.assign(rows, false);
  return r;
}

}  // namespace

bool CaptureResult::all_converged() const {
  return std::none_of(failed.begin(), failed.end(), [](bool f) { return f; });
}

void initialize_column(ArrayState& state, std::size_t col) {
  if (col >= state.cols()) throw std::domain_error("initialize_column: column index out of range");
  for (std::size_t i = 0; i < state.rows(); ++i) {
    Cell& c = state.cell(i, col);
    c.state = initialize_on(c.state);
  }
  state.enabled_col = col;
}

bool column_is_on(const ArrayState& state, std::size_t col) {
  for (std::size_t i = 0; i < state.rows(); ++i)
    if (state.cell(i, col).state.stress != 0.0) return false;
  return true;
}

CaptureResult capture_native(ArrayState& state, const ArrayConfig& cfg, std::size_t col,
                             const Wavefront& w, const NativeCaptureOptions& opts,
                             const PulseNoise& noise) {
  check_column(state, cfg, col);
  if (w.size() != cfg.rows) throw std::domain_error("capture_native: wavefront width != rows");
  if (!column_is_on(state, col))
    throw PreconditionError("capture_native: column is not initialized to the ON state");

  CaptureResult out = empty_result(cfg.rows);
  out.span_exceeds_window = w.span() > opts.window_ns;

  const double v = -opts.v_write;
  const double t_first = w.min();
  for (std::size_t i = 0; i < cfg.rows; ++i) {
    Cell& c = state.cell(i, col);
    if (opts.v_write < c.params.v_prog_threshold)
      throw std::domain_error("capture_native: v_write below programming threshold");
    double d = w[i] - t_first;
    if (noise && d > 0.0) d = noise(d);
    out.write_energy += pulse_energy(c.state, v, d, c.params);
    c.state = apply_pulse(c.state, v, d, c.params);
    out.pulses[i] = d;
    out.iterations[i] = 1;
    out.final_resistances[i] = resistance(c.state, c.params);
  }
  state.enabled_col = col;
  // Bit lines end the capture pulled up to the write level.
  std::fill(state.line_voltage.begin(), state.line_voltage.end(), opts.v_write);
  return out;
}

void validate(const QuantizerSpec& q) {
  if (!(q.t_clk > 0.0)) throw std::invalid_argument("quantizer: require t_clk > 0");
  if (q.kind == QuantizerKind::vernier && !(q.t_fine > 0.0 && q.t_fine < q.t_clk))
    throw std::invalid_argument("quantizer: require 0 < t_fine < t_clk");
}

double Quantized::clocks(std::size_t i, const QuantizerSpec& q) const {
  const double c = static_cast<double>(coarse[i]);
  if (q.kind == QuantizerKind::counter) return c;
  return c + static_cast<double>(fine[i]) * q.t_fine / q.t_clk;
}

Quantized quantize(const Wavefront& w, const QuantizerSpec& q) {
  validate(q);
  Quantized out;
  out.coarse.resize(w.size());
  out.fine.assign(w.size(), 0);
  const double t_first = w.min();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double delay = w[i] - t_first;
    out.coarse[i] = floor_count(delay / q.t_clk);
    if (q.kind == QuantizerKind::vernier) {
      const double residue = delay - static_cast<double>(out.coarse[i]) * q.t_clk;
      out.fine[i] = std::max<std::int64_t>(0, floor_count(residue / q.t_fine));
    }
  }
  return out;
}

CaptureResult program_closed_loop(ArrayState& state, const ArrayConfig& cfg, std::size_t col,
                                  std::span<const double> targets, const ClosedLoopOptions& opts,
                                  const PulseNoise& noise) {
  check_column(state, cfg, col);
  if (targets.size() != cfg.rows) throw std::domain_error("program_closed_loop: target count != rows");
  if (!(opts.step_ns > 0.0)) throw std::domain_error("program_closed_loop: step must be > 0");
  if (!(opts.tol >= 0.0)) throw std::domain_error("program_closed_loop: tol must be >= 0");
  for (double t : targets)
    if (!(std::isfinite(t) && t > 0.0))
      throw std::domain_error("program_closed_loop: targets must be finite and > 0");
  if (!column_is_on(state, col))
    throw PreconditionError("program_closed_loop: column is not initialized to the ON state");

  CaptureResult out = empty_result(cfg.rows);
  const double v = -opts.v_write;
  for (std::size_t i = 0; i < cfg.rows; ++i) {
    Cell& c = state.cell(i, col);
    if (opts.v_write < c.params.v_prog_threshold)
      throw std::domain_error("program_closed_loop: v_write below programming threshold");
    const double target = targets[i];
    double r = resistance(c.state, c.params);
    int it = 0;
    for (;;) {
      if (std::abs(r - target) <= opts.tol * target) break;
      if (r > target || it >= opts.max_iters) {
        out.failed[i] = true;
        break;
      }
      const double d = noise ? noise(opts.step_ns) : opts.step_ns;
      out.write_energy += pulse_energy(c.state, v, d, c.params);
      c.state = apply_pulse(c.state, v, d, c.params);
      out.pulses[i] += d;
      ++it;
      r = resistance(c.state, c.params);
    }
    out.iterations[i] = it;
    out.final_resistances[i] = r;
  }
  state.enabled_col = col;
  return out;
}

double default_slope(double r_span, double t_span, double t_clk) {
  if (!(r_span > 0.0 && t_span > 0.0 && t_clk > 0.0))
    throw std::domain_error("default_slope: arguments must be > 0");
  return r_span / (t_span / t_clk);
}

CaptureResult capture_digital(ArrayState& state, const ArrayConfig& cfg,
                              const DeviceParams& nominal, std::size_t col, const Wavefront& w,
                              const DigitalCaptureOptions& opts, const PulseNoise& noise) {
  if (w.size() != cfg.rows) throw std::domain_error("capture_digital: wavefront width != rows");
  if (!(opts.slope > 0.0)) throw std::domain_error("capture_digital: slope must be > 0");
  const Quantized q = quantize(w, opts.quantizer);
  std::vector<double> targets(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    targets[i] = nominal.r_on + opts.slope * q.clocks(i, opts.quantizer);
  auto out = program_closed_loop(state, cfg, col, targets, opts.loop, noise);
  std::fill(state.line_voltage.begin(), state.line_voltage.end(), opts.loop.v_write);
  return out;
}

RoundTripResult round_trip(ArrayState& state, const ArrayConfig& cfg, const DeviceParams& nominal,
                           const Wavefront& w, const RoundTripOptions& opts,
                           const PulseNoise& noise) {
  check_column(state, cfg, opts.column);
  initialize_column(state, opts.column);

  CaptureResult cap = opts.path == CapturePath::native
                          ? capture_native(state, cfg, opts.column, w, opts.native, noise)
                          : capture_digital(state, cfg, nominal, opts.column, w, opts.digital, noise);
  reset_lines(state);

  double c_recall = cfg.c_line;
  if (opts.scale == ScaleMode::fixed) {
    c_recall = opts.scale_cap;
  } else if (opts.scale == ScaleMode::match_span) {
    const auto r = state.column_resistances(opts.column);
    const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    if (w.span() > 0.0 && *hi > *lo) c_recall = matched_capacitance(w.span(), *hi - *lo, cfg);
  }
  RecallResult rec = playback(state, cfg, opts.column, c_recall);

  Wavefront input = normalize(w);
  Wavefront output = normalize(rec.wavefront);
  const TimingError err = timing_error(input, output);
  const double span = input.span();
  double bits = err.rms == 0.0 ? kPrecisionCapBits : 0.0;
  if (span > 0.0) bits = effective_bits(span, err.rms);
  const double tau = kendall_tau(rank_of(input), rank_of(output));
  RoundTripResult out{.input = std::move(input),
                      .output = std::move(output),
                      .tau = tau,
                      .error = err,
                      .effective_bits = bits,
                      .recall_cap = c_recall,
                      .recall_energy = rec.energy,
                      .capture = std::move(cap)};
  return out;
}

}  // namespace tempmem
