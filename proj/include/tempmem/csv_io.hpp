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

// CSV formats. Every file has a header row. Units: ns for times, ohm for
// resistances, fJ for energies, pF for capacitances. Numbers are written in
// the shortest form that parses back to the same double, so output is
// byte-stable and round-trips exactly.

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempmem/crossbar.hpp"
#include "tempmem/recording.hpp"
#include "tempmem/variability.hpp"
#include "tempmem/wavefront.hpp"

namespace tempmem {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_number(double x);

// channel,time_ns  (channels 0..N-1, each exactly once, any row order)
void write_wavefront_csv(std::ostream& out, const Wavefront& w);
Wavefront read_wavefront_csv(std::istream& in, const std::string& source = "<wavefront>");

// row,col,resistance_ohm
struct ResistanceGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};
void write_grid_csv(std::ostream& out, const ArrayState& state);
ResistanceGrid read_grid_csv(std::istream& in, const std::string& source = "<grid>");

/// Sets each device's stress so that its resistance matches the grid.
void load_grid(ArrayState& state, const ResistanceGrid& grid);

// channel,pulse_ns,resistance_ohm,iterations
struct CaptureRow {
  std::size_t channel = 0;
  double pulse_ns = 0.0;
  double resistance_ohm = 0.0;
  int iterations = 0;
};
void write_capture_csv(std::ostream& out, const CaptureResult& r);
std::vector<CaptureRow> read_capture_csv(std::istream& in, const std::string& source = "<capture>");

// per_line_fj,stored_fj,dissipated_fj,lines
void write_energy_csv(std::ostream& out, const EnergyReport& e);

// tau,rms_ns,max_abs_ns,effective_bits,recall_cap_pf,recall_energy_fj,write_energy_fj,converged
void write_metrics_csv(std::ostream& out, const RoundTripResult& r);

// Single-row report; read_trial_report_csv returns energies in J again.
void write_trial_report_csv(std::ostream& out, const TrialReport& r);
TrialReport read_trial_report_csv(std::istream& in, const std::string& source = "<report>");
void write_trial_report_text(std::ostream& out, const TrialReport& r);

// trial,tau,rms_ns,max_abs_ns,effective_bits,rank_exact,timing_exact,converged,recall_energy_fj,write_energy_fj
void write_trials_csv(std::ostream& out, const std::vector<TrialOutcome>& trials);

}  // namespace tempmem
