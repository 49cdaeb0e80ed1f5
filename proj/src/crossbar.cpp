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

#include "tempmem/crossbar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tempmem {

void validate(const ArrayConfig& cfg) {
  if (cfg.rows < 1 || cfg.cols < 1) throw std::invalid_argument("array: require rows, cols >= 1");
  if (!(cfg.theta > 0.0 && cfg.theta < 1.0))
    throw std::invalid_argument("array: require 0 < theta < 1");
  if (!(cfg.c_line > 0.0)) throw std::invalid_argument("array: require c_line > 0");
  if (!(cfg.v_read > 0.0 && cfg.v_read < cfg.v_dd))
    throw std::invalid_argument("array: require 0 < v_read < v_dd");
  if (!(cfg.t_shifter >= 0.0)) throw std::invalid_argument("array: require t_shifter >= 0");
}

double threshold_log_factor(const ArrayConfig& cfg) { return -std::log1p(-cfg.theta); }

ArrayState::ArrayState(const ArrayConfig& cfg, const DeviceParams& params)
    : line_voltage(cfg.rows, 0.0),
      rows_(cfg.rows),
      cols_(cfg.cols),
      cells_(cfg.rows * cfg.cols, Cell{params, DeviceState{}}) {
  validate(cfg);
  validate(params);
}

double ArrayState::resistance(std::size_t row, std::size_t col) const {
  const Cell& c = cell(row, col);
  return tempmem::resistance(c.state, c.params);
}

std::vector<double> ArrayState::column_resistances(std::size_t col) const {
  if (col >= cols_) throw std::domain_error("column index out of range");
  std::vector<double> r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) r[i] = resistance(i, col);
  return r;
}

void ArrayState::set_device_params(const std::vector<DeviceParams>& params) {
  if (params.size() != cells_.size())
    throw std::invalid_argument("set_device_params: grid size mismatch");
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    validate(params[k]);
    cells_[k].params = params[k];
  }
}

bool ArrayState::lines_discharged() const {
  return std::all_of(line_voltage.begin(), line_voltage.end(), [](double v) { return v == 0.0; });
}

bool ArrayState::same_devices(const ArrayState& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t k = 0; k < cells_.size(); ++k)
    if (!(cells_[k].state == other.cells_[k].state)) return false;
  return true;
}

RecallResult recall_scaled(const ArrayState& state, const ArrayConfig& cfg, std::size_t col,
                           double c_new) {
  if (state.rows() != cfg.rows || state.cols() != cfg.cols)
    throw std::domain_error("recall: array state does not match config");
  if (col >= cfg.cols) throw std::domain_error("recall: column index out of range");
  if (!(c_new > 0.0)) throw std::domain_error("recall: capacitance must be > 0");
  if (!state.lines_discharged()) throw PreconditionError("recall: bit lines are not discharged");

  const double tau_factor = c_new * threshold_log_factor(cfg) * 1e9;  // ns per ohm
  std::vector<double> edges(cfg.rows);
  for (std::size_t i = 0; i < cfg.rows; ++i)
    edges[i] = state.resistance(i, col) * tau_factor + cfg.t_shifter;

  // A fully charged line has drawn Q * V = C * V^2 from the supply; half sits
  // on the capacitor and half was lost in the device, whatever its resistance.
  EnergyReport e;
  e.lines = cfg.rows;
  e.per_line = c_new * cfg.v_read * cfg.v_read;
  e.stored = 0.5 * e.per_line * static_cast<double>(cfg.rows);
  e.dissipated = e.stored;
  return {Wavefront(std::move(edges)), e};
}

RecallResult recall(const ArrayState& state, const ArrayConfig& cfg, std::size_t col) {
  return recall_scaled(state, cfg, col, cfg.c_line);
}

RecallResult playback(ArrayState& state, const ArrayConfig& cfg, std::size_t col,
                      std::optional<double> c_new) {
  auto out = recall_scaled(state, cfg, col, c_new.value_or(cfg.c_line));
  state.enabled_col = col;
  std::fill(state.line_voltage.begin(), state.line_voltage.end(), cfg.v_read);
  return out;
}

void reset_lines(ArrayState& state) {
  std::fill(state.line_voltage.begin(), state.line_voltage.end(), 0.0);
}

double dynamic_range(const ArrayConfig& cfg, const DeviceParams& params, double r_max) {
  if (!(r_max >= params.r_on)) throw std::domain_error("dynamic_range: r_max below r_on");
  return (r_max - params.r_on) * cfg.c_line * threshold_log_factor(cfg) * 1e9;
}

double matched_capacitance(double span_ns, double delta_r, const ArrayConfig& cfg) {
  if (!(span_ns > 0.0) || !(delta_r > 0.0))
    throw std::domain_error("matched_capacitance: span and delta_r must be > 0");
  return span_ns * 1e-9 / (delta_r * threshold_log_factor(cfg));
}

}  // namespace tempmem
