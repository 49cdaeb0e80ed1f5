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

#include "tempmem/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace tempmem {

namespace {

constexpr double kFemto = 1e15;
constexpr double kPico = 1e12;

struct Table {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line;  // source line of each row
};

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    auto field = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
      field.remove_suffix(1);
    out.emplace_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Table read_table(std::istream& in, std::string_view header, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  const auto expected = split(header);
  Table t;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split(line);
    if (!have_header) {
      if (fields != expected)
        throw CsvError(fmt::format("{}:{}: expected header '{}'", source, lineno, header));
      have_header = true;
      continue;
    }
    if (fields.size() != expected.size())
      throw CsvError(fmt::format("{}:{}: expected {} fields, got {}", source, lineno, expected.size(),
                                 fields.size()));
    t.rows.push_back(std::move(fields));
    t.line.push_back(lineno);
  }
  if (!have_header) throw CsvError(fmt::format("{}: missing header '{}'", source, header));
  return t;
}

double field_double(const std::string& v, const std::string& source, std::size_t line) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw CsvError(fmt::format("{}:{}: expected a number, got '{}'", source, line, v));
  return x;
}

std::size_t field_index(const std::string& v, const std::string& source, std::size_t line) {
  std::size_t x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw CsvError(fmt::format("{}:{}: expected a non-negative integer, got '{}'", source, line, v));
  return x;
}

constexpr std::string_view kReportHeader =
    "n_trials,rank_exact_rate,timing_exact_rate,mean_tau,rms_timing_ns,effective_bits_mean,"
    "energy_mean_fj,write_energy_mean_fj,recall_energy_mean_fj,convergence_rate";

}  // namespace

std::string format_number(double x) { return fmt::format("{}", x); }

void write_wavefront_csv(std::ostream& out, const Wavefront& w) {
  out << "channel,time_ns\n";
  for (std::size_t i = 0; i < w.size(); ++i) out << i << ',' << format_number(w[i]) << '\n';
}

Wavefront read_wavefront_csv(std::istream& in, const std::string& source) {
  const Table t = read_table(in, "channel,time_ns", source);
  if (t.rows.empty()) throw CsvError(fmt::format("{}: no channels", source));
  std::vector<double> times(t.rows.size(), 0.0);
  std::vector<bool> seen(t.rows.size(), false);
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    const std::size_t ch = field_index(t.rows[k][0], source, t.line[k]);
    if (ch >= times.size() || seen[ch])
      throw CsvError(fmt::format("{}:{}: channel indices must be 0..{} with no repeats", source,
                                 t.line[k], times.size() - 1));
    seen[ch] = true;
    times[ch] = field_double(t.rows[k][1], source, t.line[k]);
  }
  try {
    return Wavefront(std::move(times));
  } catch (const std::domain_error& e) {
    throw CsvError(fmt::format("{}: {}", source, e.what()));
  }
}

void write_grid_csv(std::ostream& out, const ArrayState& state) {
  out << "row,col,resistance_ohm\n";
  for (std::size_t r = 0; r < state.rows(); ++r)
    for (std::size_t c = 0; c < state.cols(); ++c)
      out << r << ',' << c << ',' << format_number(state.resistance(r, c)) << '\n';
}

ResistanceGrid read_grid_csv(std::istream& in, const std::string& source) {
  const Table t = read_table(in, "row,col,resistance_ohm", source);
  if (t.rows.empty()) throw CsvError(fmt::format("{}: empty grid", source));
  ResistanceGrid g;
  struct Entry {
    std::size_t r, c;
    double v;
    std::size_t line;
  };
  std::vector<Entry> entries;
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    Entry e{field_index(t.rows[k][0], source, t.line[k]), field_index(t.rows[k][1], source, t.line[k]),
            field_double(t.rows[k][2], source, t.line[k]), t.line[k]};
    g.rows = std::max(g.rows, e.r + 1);
    g.cols = std::max(g.cols, e.c + 1);
    entries.push_back(e);
  }
  if (entries.size() != g.rows * g.cols)
    throw CsvError(fmt::format("{}: grid is not a complete {}x{} rectangle", source, g.rows, g.cols));
  g.values.assign(g.rows * g.cols, 0.0);
  std::vector<bool> seen(g.values.size(), false);
  for (const auto& e : entries) {
    const auto k = e.r * g.cols + e.c;
    if (seen[k]) throw CsvError(fmt::format("{}:{}: duplicate cell ({}, {})", source, e.line, e.r, e.c));
    seen[k] = true;
    g.values[k] = e.v;
  }
  return g;
}

void load_grid(ArrayState& state, const ResistanceGrid& grid) {
  if (grid.rows != state.rows() || grid.cols != state.cols())
    throw std::domain_error("load_grid: grid dimensions do not match the array");
  for (std::size_t r = 0; r < grid.rows; ++r)
    for (std::size_t c = 0; c < grid.cols; ++c) {
      Cell& cell = state.cell(r, c);
      cell.state.stress = stress_for_resistance(grid.at(r, c), cell.params);
    }
}

void write_capture_csv(std::ostream& out, const CaptureResult& r) {
  out << "channel,pulse_ns,resistance_ohm,iterations\n";
  for (std::size_t i = 0; i < r.pulses.size(); ++i)
    out << i << ',' << format_number(r.pulses[i]) << ',' << format_number(r.final_resistances[i]) << ','
        << r.iterations[i] << '\n';
}

std::vector<CaptureRow> read_capture_csv(std::istream& in, const std::string& source) {
  const Table t = read_table(in, "channel,pulse_ns,resistance_ohm,iterations", source);
  std::vector<CaptureRow> rows;
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    const auto& f = t.rows[k];
    rows.push_back({field_index(f[0], source, t.line[k]), field_double(f[1], source, t.line[k]),
                    field_double(f[2], source, t.line[k]),
                    static_cast<int>(field_index(f[3], source, t.line[k]))});
  }
  return rows;
}

void write_energy_csv(std::ostream& out, const EnergyReport& e) {
  out << "per_line_fj,stored_fj,dissipated_fj,lines\n"
      << format_number(e.per_line * kFemto) << ',' << format_number(e.stored * kFemto) << ','
      << format_number(e.dissipated * kFemto) << ',' << e.lines << '\n';
}

void write_metrics_csv(std::ostream& out, const RoundTripResult& r) {
  out << "tau,rms_ns,max_abs_ns,effective_bits,recall_cap_pf,recall_energy_fj,write_energy_fj,converged\n"
      << format_number(r.tau) << ',' << format_number(r.error.rms) << ','
      << format_number(r.error.max_abs) << ',' << format_number(r.effective_bits) << ','
      << format_number(r.recall_cap * kPico) << ','
      << format_number(r.recall_energy.per_line * static_cast<double>(r.recall_energy.lines) * kFemto)
      << ',' << format_number(r.capture.write_energy * kFemto) << ','
      << (r.capture.all_converged() ? 1 : 0) << '\n';
}

void write_trial_report_csv(std::ostream& out, const TrialReport& r) {
  out << kReportHeader << '\n'
      << r.n_trials << ',' << format_number(r.rank_exact_rate) << ','
      << format_number(r.timing_exact_rate) << ',' << format_number(r.mean_tau) << ','
      << format_number(r.rms_timing_ns) << ',' << format_number(r.effective_bits_mean) << ','
      << format_number(r.energy_mean_j * kFemto) << ',' << format_number(r.write_energy_mean_j * kFemto)
      << ',' << format_number(r.recall_energy_mean_j * kFemto) << ','
      << format_number(r.convergence_rate) << '\n';
}

TrialReport read_trial_report_csv(std::istream& in, const std::string& source) {
  const Table t = read_table(in, kReportHeader, source);
  if (t.rows.size() != 1) throw CsvError(fmt::format("{}: expected exactly one data row", source));
  const auto& f = t.rows[0];
  const auto d = [&](std::size_t i) { return field_double(f[i], source, t.line[0]); };
  TrialReport r;
  r.n_trials = field_index(f[0], source, t.line[0]);
  r.rank_exact_rate = d(1);
  r.timing_exact_rate = d(2);
  r.mean_tau = d(3);
  r.rms_timing_ns = d(4);
  r.effective_bits_mean = d(5);
  r.energy_mean_j = d(6) / kFemto;
  r.write_energy_mean_j = d(7) / kFemto;
  r.recall_energy_mean_j = d(8) / kFemto;
  r.convergence_rate = d(9);
  return r;
}

void write_trial_report_text(std::ostream& out, const TrialReport& r) {
  fmt::print(out, "trials               {}\n", r.n_trials);
  fmt::print(out, "rank_exact_rate      {:.6f}\n", r.rank_exact_rate);
  fmt::print(out, "timing_exact_rate    {:.6f}   (rms <= span/64)\n", r.timing_exact_rate);
  fmt::print(out, "mean_tau             {:.6f}\n", r.mean_tau);
  fmt::print(out, "rms_timing_ns        {:.6f}\n", r.rms_timing_ns);
  fmt::print(out, "effective_bits_mean  {:.6f}\n", r.effective_bits_mean);
  fmt::print(out, "energy_mean_fj       {:.6f}\n", r.energy_mean_j * kFemto);
  fmt::print(out, "  write              {:.6f}\n", r.write_energy_mean_j * kFemto);
  fmt::print(out, "  recall             {:.6f}\n", r.recall_energy_mean_j * kFemto);
  fmt::print(out, "convergence_rate     {:.6f}\n", r.convergence_rate);
}

void write_trials_csv(std::ostream& out, const std::vector<TrialOutcome>& trials) {
  out << "trial,tau,rms_ns,max_abs_ns,effective_bits,rank_exact,timing_exact,converged,"
         "recall_energy_fj,write_energy_fj\n";
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto& o = trials[i];
    out << i << ',' << format_number(o.tau) << ',' << format_number(o.rms_ns) << ','
        << format_number(o.max_abs_ns) << ',' << format_number(o.effective_bits) << ','
        << (o.rank_exact ? 1 : 0) << ',' << (o.timing_exact ? 1 : 0) << ',' << (o.converged ? 1 : 0)
        << ',' << format_number(o.recall_energy_j * kFemto) << ','
        << format_number(o.write_energy_j * kFemto) << '\n';
  }
}

}  // namespace tempmem
