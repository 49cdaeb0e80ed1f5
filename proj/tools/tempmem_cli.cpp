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

// tempmem: scenario runner for the temporal memory simulator.
//
//   tempmem recall    --input grid.csv      [--scenario s.cfg] [--out dir]
//   tempmem capture   --input wavefront.csv [--path native|digital]
//   tempmem roundtrip --input wavefront.csv [--path native|digital]
//   tempmem sweep     [--input wavefront.csv] [--trials n] [--seed s] [--serial | --threads n]
//   tempmem calibrate [--scenario s.cfg]

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tempmem/crossbar.hpp"
#include "tempmem/csv_io.hpp"
#include "tempmem/recording.hpp"
#include "tempmem/scenario.hpp"
#include "tempmem/variability.hpp"
#include "tempmem/wavefront.hpp"

namespace fs = std::filesystem;
using namespace tempmem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;

struct Options {
  std::string scenario;
  std::string input;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> path;
  std::optional<std::size_t> column;
  bool serial = false;
  int threads = 0;
};

Scenario resolve(const Options& o) {
  Scenario s;
  if (!o.scenario.empty()) {
    s = load_scenario(o.scenario);
  } else {
    std::istringstream empty;
    s = parse_scenario(empty, "<defaults>");
  }
  if (o.seed) s.variation.seed = *o.seed;
  if (o.trials) s.trials = *o.trials;
  if (o.column) s.roundtrip.column = *o.column;
  if (o.path) s.roundtrip.path = *o.path == "digital" ? CapturePath::digital : CapturePath::native;
  return s;
}

Wavefront load_wavefront(const std::string& path) {
  if (path.empty()) throw ScenarioError("--input <wavefront.csv> is required for this command");
  std::ifstream in(path);
  if (!in) throw CsvError(fmt::format("{}: cannot open", path));
  return read_wavefront_csv(in, path);
}

template <typename Writer>
void emit(const fs::path& dir, const std::string& name, Writer&& write) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", (dir / name).string()));
  write(out);
}

ArrayConfig config_for(const Scenario& s, std::size_t rows) {
  ArrayConfig cfg = s.array;
  cfg.rows = rows;
  cfg.cols = std::max(cfg.cols, s.roundtrip.column + 1);
  return cfg;
}

void report_capture(const CaptureResult& r) {
  if (r.span_exceeds_window)
    std::cerr << "warning: wavefront span exceeds the linear programming window\n";
  for (std::size_t i = 0; i < r.failed.size(); ++i)
    if (r.failed[i]) std::cerr << fmt::format("warning: channel {} did not converge\n", i);
}

int cmd_recall(const Options& o) {
  const Scenario s = resolve(o);
  if (o.input.empty()) throw ScenarioError("--input <grid.csv> is required for recall");
  std::ifstream in(o.input);
  if (!in) throw CsvError(fmt::format("{}: cannot open", o.input));
  const ResistanceGrid grid = read_grid_csv(in, o.input);

  ArrayConfig cfg = s.array;
  cfg.rows = grid.rows;
  cfg.cols = grid.cols;
  ArrayState state(cfg, s.device);
  load_grid(state, grid);
  const double c = s.roundtrip.scale == ScaleMode::fixed ? s.roundtrip.scale_cap : cfg.c_line;
  const RecallResult r = recall_scaled(state, cfg, s.roundtrip.column, c);

  emit(o.out, "recall_wavefront.csv", [&](std::ostream& f) { write_wavefront_csv(f, r.wavefront); });
  emit(o.out, "energy.csv", [&](std::ostream& f) { write_energy_csv(f, r.energy); });
  return 0;
}

int cmd_capture(const Options& o) {
  const Scenario s = resolve(o);
  const Wavefront w = load_wavefront(o.input);
  const ArrayConfig cfg = config_for(s, w.size());
  ArrayState state(cfg, s.device);
  initialize_column(state, s.roundtrip.column);
  const CaptureResult r =
      s.roundtrip.path == CapturePath::native
          ? capture_native(state, cfg, s.roundtrip.column, w, s.roundtrip.native)
          : capture_digital(state, cfg, s.device, s.roundtrip.column, w, s.roundtrip.digital);
  report_capture(r);
  emit(o.out, "capture.csv", [&](std::ostream& f) { write_capture_csv(f, r); });
  emit(o.out, "grid.csv", [&](std::ostream& f) { write_grid_csv(f, state); });
  return 0;
}

int cmd_roundtrip(const Options& o) {
  const Scenario s = resolve(o);
  const Wavefront w = load_wavefront(o.input);
  const ArrayConfig cfg = config_for(s, w.size());
  ArrayState state(cfg, s.device);
  const RoundTripResult r = round_trip(state, cfg, s.device, w, s.roundtrip);
  report_capture(r.capture);
  emit(o.out, "input_wavefront.csv", [&](std::ostream& f) { write_wavefront_csv(f, r.input); });
  emit(o.out, "output_wavefront.csv", [&](std::ostream& f) { write_wavefront_csv(f, r.output); });
  emit(o.out, "capture.csv", [&](std::ostream& f) { write_capture_csv(f, r.capture); });
  emit(o.out, "energy.csv", [&](std::ostream& f) { write_energy_csv(f, r.recall_energy); });
  emit(o.out, "metrics.csv", [&](std::ostream& f) { write_metrics_csv(f, r); });
  return 0;
}

int cmd_sweep(const Options& o) {
  const Scenario s = resolve(o);
  TrialScenario scn;
  scn.array = s.array;
  scn.device = s.device;
  scn.roundtrip = s.roundtrip;
  scn.channels = s.channels;
  scn.span_ns = s.span_ns;
  if (!o.input.empty()) scn.wavefront = load_wavefront(o.input);

  const auto trials = o.serial ? run_trials_serial(scn, s.variation, s.trials)
                               : run_trials_parallel(scn, s.variation, s.trials, o.threads);
  const TrialReport report = summarize(trials);
  emit(o.out, "trial_report.csv", [&](std::ostream& f) { write_trial_report_csv(f, report); });
  emit(o.out, "trial_report.txt", [&](std::ostream& f) { write_trial_report_text(f, report); });
  emit(o.out, "trials.csv", [&](std::ostream& f) { write_trials_csv(f, trials); });
  return 0;
}

int cmd_calibrate(const Options& o) {
  const Scenario s = resolve(o);
  if (!(s.calibrate_energy_fj > 0.0)) throw ScenarioError("calibrate.energy_fj must be > 0");
  const DeviceParams dev = calibrate_amp(s.r_span, s.t_span, s.device);
  const double c = s.array.c_line;
  // theta maps the r_span window onto t_span at this capacitance; v_read gives
  // the requested energy per line.
  const double theta = -std::expm1(-s.t_span * 1e-9 / (s.r_span * c));
  const double v_read = std::sqrt(s.calibrate_energy_fj * 1e-15 / c);
  emit(o.out, "calibration.csv", [&](std::ostream& f) {
    f << "amp_a_ohm,theta,v_read,c_line_pf,t_span_ns,r_span_ohm,energy_fj\n"
      << format_number(dev.amp_a) << ',' << format_number(theta) << ',' << format_number(v_read) << ','
      << format_number(c * 1e12) << ',' << format_number(s.t_span) << ',' << format_number(s.r_span)
      << ',' << format_number(s.calibrate_energy_fj) << '\n';
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resistive temporal memory simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::string path;
  app.add_option("--scenario", o.scenario, "Scenario config file")->check(CLI::ExistingFile);
  app.add_option("--input", o.input, "Input wavefront CSV (recall: resistance grid CSV)");
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed (overrides variation.seed)");
  app.add_option("--trials", o.trials, "Monte Carlo trial count (overrides sweep.trials)")
      ->check(CLI::PositiveNumber);
  app.add_option("--path", o.path, "Capture path")->check(CLI::IsMember({"native", "digital"}));
  app.add_option("--column", o.column, "Crossbar column (overrides capture.column)");
  app.add_flag("--serial", o.serial, "sweep: use the serial reference kernel");
  app.add_option("--threads", o.threads, "sweep: OpenMP thread count (0 = default)")
      ->check(CLI::NonNegativeNumber);

  auto* recall = app.add_subcommand("recall", "Recall a column of a resistance grid as a wavefront");
  auto* capture = app.add_subcommand("capture", "Capture a wavefront into a fresh column");
  auto* roundtrip = app.add_subcommand("roundtrip", "Capture then recall a wavefront and compare");
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo variability sweep");
  auto* calibrate = app.add_subcommand("calibrate", "Derive amp_a, theta and v_read from targets");

  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(o.out);
    if (recall->parsed()) return cmd_recall(o);
    if (capture->parsed()) return cmd_capture(o);
    if (roundtrip->parsed()) return cmd_roundtrip(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (calibrate->parsed()) return cmd_calibrate(o);
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CsvError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::logic_error& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
