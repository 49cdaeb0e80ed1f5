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

// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion also has a wall-clock budget that counts toward its verdict.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "tempmem/crossbar.hpp"
#include "tempmem/device.hpp"
#include "tempmem/recording.hpp"
#include "tempmem/variability.hpp"
#include "tempmem/wavefront.hpp"

using namespace tempmem;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + ("FAILED " + what);
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.require(secs < budget_s, fmt::format("runtime {:.3f}s >= {}s", secs, budget_s));
  if (!v.pass) ++failures;
  fmt::print("[{}] AC{} {} ({:.3f}s < {}s) :: {}\n", v.pass ? "PASS" : "FAIL", id, title, secs, budget_s,
             v.detail);
  std::fflush(stdout);
}

ArrayConfig rows_cfg(std::size_t rows) {
  ArrayConfig cfg;
  cfg.rows = rows;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const DeviceParams dev;

  criterion(1, "recall energy is C*Vread^2 per line, independent of state", 1.0, [&](Verdict& v) {
    ArrayConfig cfg;
    cfg.rows = 16;
    cfg.cols = 4;
    const double expected = cfg.c_line * cfg.v_read * cfg.v_read;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> r(dev.r_on, 200e3);
    bool identical = true, split = true;
    for (int grid = 0; grid < 100; ++grid) {
      ArrayState s(cfg, dev);
      for (std::size_t i = 0; i < cfg.rows; ++i)
        for (std::size_t c = 0; c < cfg.cols; ++c)
          s.cell(i, c).state.stress = stress_for_resistance(r(rng), dev);
      for (std::size_t c = 0; c < cfg.cols; ++c) {
        const auto e = recall(s, cfg, c).energy;
        identical &= e.per_line == expected;
        split &= e.stored == e.dissipated && e.stored / static_cast<double>(e.lines) == 0.5 * expected;
      }
    }
    v.require(identical, "per-line energy bit-identical to C*V^2 across 100 grids");
    v.require(split, "stored == dissipated == C*V^2/2 per line");
    v.require(std::abs(expected * 1e15 - 600.0) <= 0.01, "C*V^2 within 0.01 fJ of 600 fJ");
    v.note(fmt::format("per_line={:.4f} fJ stored=dissipated={:.4f} fJ/line", expected * 1e15, expected * 0.5e15));
  });

  criterion(2, "10/20/30/40 kOhm recall at 13.33/26.67/40.00/53.33 ns +-10 ps", 1.0, [&](Verdict& v) {
    const auto cfg = rows_cfg(4);
    ArrayState s(cfg, dev);
    const double rs[] = {10e3, 20e3, 30e3, 40e3};
    for (std::size_t i = 0; i < 4; ++i) s.cell(i, 0).state.stress = stress_for_resistance(rs[i], dev);
    const auto w = recall(s, cfg, 0).wavefront;
    const double expect[] = {13.33, 26.67, 40.00, 53.33};
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(w[i] - expect[i]));
    v.require(worst <= 0.010, "every edge within 10 ps");
    v.require(std::abs(w.span() - 40.0) <= 0.010, "span of the 10-40 kOhm window is 40 ns");
    v.require(std::abs(dynamic_range(cfg, dev, 40e3) - 40.0) <= 0.010, "dynamic_range(40 kOhm) = 40 ns");
    v.note(fmt::format("edges=[{:.4f}, {:.4f}, {:.4f}, {:.4f}] worst={:.2f} ps", w[0], w[1], w[2], w[3], worst * 1e3));
  });

  criterion(3, "native round trip, 100 random 4-channel wavefronts, matched C", 5.0, [&](Verdict& v) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> t(0.0, 40.0), off(0.0, 100.0);
    int tau_ok = 0, rms_ok = 0;
    double worst_ratio = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double o = off(rng);
      const Wavefront w({o + t(rng), o + t(rng), o + t(rng), o + t(rng)});
      const auto cfg = rows_cfg(4);
      ArrayState s(cfg, dev);
      RoundTripOptions opt;
      opt.scale = ScaleMode::match_span;
      const auto rt = round_trip(s, cfg, dev, w, opt);
      tau_ok += rt.tau == 1.0 ? 1 : 0;
      const double ratio = rt.error.rms / w.span();
      rms_ok += ratio <= 0.10 ? 1 : 0;
      worst_ratio = std::max(worst_ratio, ratio);
    }
    v.require(tau_ok == 100, fmt::format("tau == 1 in 100/100 (got {})", tau_ok));
    v.require(rms_ok == 100, fmt::format("rms <= 10% of span in 100/100 (got {})", rms_ok));
    v.note(fmt::format("tau=1: {}/100, worst rms/span={:.4f}", tau_ok, worst_ratio));
  });

  criterion(4, "first-arriving channel ends capture at exactly r_on", 5.0, [&](Verdict& v) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> t(0.0, 40.0), off(0.0, 1000.0);
    int ok = 0;
    for (int k = 0; k < 1000; ++k) {
      const std::size_t n = 2 + k % 15;
      const double o = off(rng);
      std::vector<double> times(n);
      for (auto& x : times) x = o + t(rng);
      const Wavefront w(times);
      const auto cfg = rows_cfg(n);
      ArrayState s(cfg, dev);
      const auto r = capture_native(s, cfg, 0, w, {});
      ok += r.final_resistances[rank_of(w).order.front()] == dev.r_on ? 1 : 0;
    }
    v.require(ok == 1000, fmt::format("exact r_on in 1000/1000 (got {})", ok));
    v.note(fmt::format("{}/1000 exact", ok));
  });

  criterion(5, "log compression beyond the window, linear inside it", 1.0, [&](Verdict& v) {
    auto increments = [&](double d) {
      std::vector<double> inc;
      DeviceState s;
      double prev = resistance(s, dev);
      for (int k = 0; k < 4; ++k) {
        s = apply_pulse(s, -dev.v_write_nominal, d, dev);
        const double r = resistance(s, dev);
        inc.push_back(r - prev);
        prev = r;
      }
      return inc;
    };
    const auto longp = increments(100.0);
    bool decreasing = true;
    for (int k = 1; k < 4; ++k) decreasing &= longp[k] < longp[k - 1];
    v.require(decreasing, "100/200/300/400 ns increments strictly decrease");

    const auto shortp = increments(10.0);
    const double mean = (shortp[0] + shortp[1] + shortp[2] + shortp[3]) / 4.0;
    double dev_max = 0.0;
    for (double x : shortp) dev_max = std::max(dev_max, std::abs(x - mean) / mean);
    v.require(dev_max <= 0.10, "10/20/30/40 ns increments within 10% of their mean");
    v.note(fmt::format("long incs=[{:.0f}, {:.0f}, {:.0f}, {:.0f}] ohm; short incs=[{:.0f}, {:.0f}, {:.0f}, {:.0f}] ohm, max dev {:.2f}%",
                       longp[0], longp[1], longp[2], longp[3], shortp[0], shortp[1], shortp[2], shortp[3],
                       dev_max * 100));
  });

  criterion(6, "digital path: 1 ns clock, 0.1% tol, rms <= 1 ns over 40 ns", 5.0, [&](Verdict& v) {
    Rng rng(6);
    RoundTripOptions opt;
    opt.path = CapturePath::digital;
    opt.digital.quantizer = {QuantizerKind::counter, 1.0, 0.1};
    opt.digital.loop.tol = 1e-3;
    opt.digital.slope = default_slope(kDefaultSpanOhm, kDefaultWindowNs, 1.0);
    double worst = 0.0;
    int converged = 0, max_it = 0;
    const int trials = 100;
    for (int k = 0; k < trials; ++k) {
      const Wavefront w = random_wavefront(8, 40.0, rng);
      const auto cfg = rows_cfg(8);
      ArrayState s(cfg, dev);
      const auto rt = round_trip(s, cfg, dev, w, opt);
      worst = std::max(worst, rt.error.rms);
      converged += rt.capture.all_converged() ? 1 : 0;
      for (int it : rt.capture.iterations) max_it = std::max(max_it, it);
    }
    v.require(worst <= 1.0, "rms <= 1 ns on every wavefront");
    v.require(converged == trials, "closed loop converged on every channel");
    v.require(max_it <= opt.digital.loop.max_iters, "iterations within bound");
    v.note(fmt::format("worst rms={:.4f} ns, converged {}/{}, max iterations {} of {}", worst, converged, trials,
                       max_it, opt.digital.loop.max_iters));
  });

  criterion(7, "Monte Carlo: rank-order success >= 5-bit timing success, 4-5 bits", 60.0, [&](Verdict& v) {
    TrialScenario scn;  // native path, 8 channels, 40 ns, fixed 1 pF recall
    const VariationSpec spec{0.01, 0.042, 1};
    const auto r = monte_carlo(scn, spec, 1000);
    v.require(r.rank_exact_rate >= r.timing_exact_rate, "rank_exact_rate >= timing_exact_rate");
    v.require(r.effective_bits_mean >= 4.0 && r.effective_bits_mean <= 5.0, "effective bits mean in [4, 5]");
    // Regression values from the first oracle run (seed 1, 1000 trials).
    v.require(std::abs(r.rank_exact_rate - 0.612) <= 1e-12, "rank_exact_rate matches pinned value");
    v.require(std::abs(r.timing_exact_rate - 0.067) <= 1e-12, "timing_exact_rate matches pinned value");
    v.require(std::abs(r.effective_bits_mean - 4.276077178954) <= 1e-9, "effective_bits_mean matches pinned value");
    v.note(fmt::format("rank_exact={} timing_exact={} bits={:.12f} mean_tau={:.6f} rms={:.4f} ns",
                       r.rank_exact_rate, r.timing_exact_rate, r.effective_bits_mean, r.mean_tau, r.rms_timing_ns));
  });

  criterion(8, "sweep reports byte-identical across runs, serial vs parallel", 60.0, [&](Verdict& v) {
    const fs::path dir = fs::temp_directory_path() / "tempmem_acceptance_sweep";
    fs::remove_all(dir);
    auto sweep = [&](const std::string& sub, const std::string& extra) {
      const std::string cmd = fmt::format("{} sweep --trials 1000 --seed 8 {} --out {} 2>/dev/null", TEMPMEM_CLI,
                                          extra, (dir / sub).string());
      const int st = std::system(cmd.c_str());
      return WIFEXITED(st) && WEXITSTATUS(st) == 0;
    };
    v.require(sweep("p1", "--threads 4"), "parallel run 1 exits 0");
    v.require(sweep("p2", "--threads 4"), "parallel run 2 exits 0");
    v.require(sweep("p3", "--threads 2"), "parallel run 3 exits 0");
    v.require(sweep("s1", "--serial"), "serial run exits 0");
    for (const char* f : {"trial_report.csv", "trial_report.txt", "trials.csv"}) {
      const auto ref = slurp(dir / "p1" / f);
      v.require(!ref.empty(), fmt::format("{} written", f));
      for (const char* other : {"p2", "p3", "s1"})
        v.require(slurp(dir / other / f) == ref, fmt::format("{}/{} identical to p1", other, f));
    }
    v.note(fmt::format("trials.csv {} bytes, identical across 3 parallel + 1 serial runs",
                       fs::file_size(dir / "p1" / "trials.csv")));
    fs::remove_all(dir);
  });

  fmt::print("{} of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
