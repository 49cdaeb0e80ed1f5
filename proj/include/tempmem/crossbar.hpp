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

// 1T1R crossbar state and the RC recall engine.
//
// Rows are bit lines (output channels), columns are source lines (stored
// wavefronts). Recall drives one source line to v_read and each bit line
// capacitor charges through its cross-point device; the bit line's digital
// edge fires when the capacitor crosses theta * v_read:
//
//   t_i = R_i * c_line * ln(1 / (1 - theta)) + t_shifter

#include <cstddef>
#include <optional>
#include <vector>

#include "tempmem/device.hpp"
#include "tempmem/wavefront.hpp"

namespace tempmem {

struct ArrayConfig {
  std::size_t rows = 4;
  std::size_t cols = 1;
  double c_line = 1.0e-12;  // F
  double v_read = 0.7746;   // V
  double v_dd = 1.8;        // V
  double theta = 0.7364;    // V_th / v_read
  double t_shifter = 0.0;   // ns
};

void validate(const ArrayConfig& cfg);

/// ln(1 / (1 - theta)): RC time constants to reach the comparator threshold.
double threshold_log_factor(const ArrayConfig& cfg);

struct Cell {
  DeviceParams params;
  DeviceState state;
};

/// Grid of cells plus the electrical state of the bit lines. Device params are
/// stored per cell so device-to-device spread can be represented.
class ArrayState {
 public:
  ArrayState(const ArrayConfig& cfg, const DeviceParams& params);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Cell& cell(std::size_t row, std::size_t col) { return cells_.at(row * cols_ + col); }
  const Cell& cell(std::size_t row, std::size_t col) const { return cells_.at(row * cols_ + col); }

  double resistance(std::size_t row, std::size_t col) const;
  std::vector<double> column_resistances(std::size_t col) const;

  /// Replaces all device params; `params` is row-major, rows * cols long.
  void set_device_params(const std::vector<DeviceParams>& params);

  std::vector<double> line_voltage;  // per bit line, V
  std::optional<std::size_t> enabled_col;

  bool lines_discharged() const;
  /// Device states only; line voltages are not compared.
  bool same_devices(const ArrayState& other) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Cell> cells_;
};

/// Energies in J. `stored` and `dissipated` are totals over all `lines`.
struct EnergyReport {
  double per_line = 0.0;
  double stored = 0.0;
  double dissipated = 0.0;
  std::size_t lines = 0;
};

struct RecallResult {
  Wavefront wavefront;  // absolute times from the source-line trigger
  EnergyReport energy;
};

/// Reads column `col`. Requires discharged bit lines (PreconditionError) and
/// a valid column (std::domain_error). Does not modify `state`.
RecallResult recall(const ArrayState& state, const ArrayConfig& cfg, std::size_t col);

/// recall with the per-line capacitance replaced by c_new.
RecallResult recall_scaled(const ArrayState& state, const ArrayConfig& cfg, std::size_t col,
                           double c_new);

/// recall on a live array: the column is enabled and the bit lines are left
/// charged to v_read until reset_lines.
RecallResult playback(ArrayState& state, const ArrayConfig& cfg, std::size_t col,
                      std::optional<double> c_new = std::nullopt);

/// Discharges every bit line. Device states are untouched.
void reset_lines(ArrayState& state);

/// Recall time window spanned by resistances r_on .. r_max.
double dynamic_range(const ArrayConfig& cfg, const DeviceParams& params, double r_max);

/// Line capacitance that maps a resistance spread delta_r onto span_ns.
double matched_capacitance(double span_ns, double delta_r, const ArrayConfig& cfg);

}  // namespace tempmem
