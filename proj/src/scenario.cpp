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

#include "tempmem/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <utility>

#include <fmt/format.h>

namespace tempmem {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view v) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size() || !std::isfinite(x))
    throw std::invalid_argument(fmt::format("expected a number, got '{}'", v));
  return x;
}

std::uint64_t to_uint(std::string_view v) {
  std::uint64_t x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw std::invalid_argument(fmt::format("expected a non-negative integer, got '{}'", v));
  return x;
}

// Values set explicitly, as opposed to derived after parsing.
struct Explicit {
  bool amp_a = false;
  bool slope = false;
  bool window = false;
};

using Setter = std::function<void(Scenario&, Explicit&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    auto num = [&t](std::string key, auto field) {
      t.emplace(std::move(key), [field](Scenario& s, Explicit&, std::string_view v) {
        field(s) = to_double(v);
      });
    };
    t.emplace("array.c_line_pf", [](Scenario& s, Explicit&, std::string_view v) {
      s.array.c_line = to_double(v) * 1e-12;
    });
    num("array.v_read", [](Scenario& s) -> double& { return s.array.v_read; });
    num("array.v_dd", [](Scenario& s) -> double& { return s.array.v_dd; });
    num("array.theta", [](Scenario& s) -> double& { return s.array.theta; });
    num("array.t_shifter_ns", [](Scenario& s) -> double& { return s.array.t_shifter; });
    num("device.r_on_ohm", [](Scenario& s) -> double& { return s.device.r_on; });
    num("device.r_off_max_ohm", [](Scenario& s) -> double& { return s.device.r_off_max; });
    num("device.tau_w_ns", [](Scenario& s) -> double& { return s.device.tau_w; });
    num("device.v_prog_threshold", [](Scenario& s) -> double& { return s.device.v_prog_threshold; });
    num("device.v_zero", [](Scenario& s) -> double& { return s.device.v_zero; });
    num("device.v_write_nominal", [](Scenario& s) -> double& { return s.device.v_write_nominal; });
    num("device.r_span_ohm", [](Scenario& s) -> double& { return s.r_span; });
    num("device.t_span_ns", [](Scenario& s) -> double& { return s.t_span; });
    num("variation.d2d_sigma", [](Scenario& s) -> double& { return s.variation.d2d_sigma; });
    num("variation.c2c_sigma", [](Scenario& s) -> double& { return s.variation.c2c_sigma; });
    num("quantizer.t_clk_ns", [](Scenario& s) -> double& { return s.roundtrip.digital.quantizer.t_clk; });
    num("quantizer.t_fine_ns", [](Scenario& s) -> double& { return s.roundtrip.digital.quantizer.t_fine; });
    num("capture.tol", [](Scenario& s) -> double& { return s.roundtrip.digital.loop.tol; });
    num("capture.step_ns", [](Scenario& s) -> double& { return s.roundtrip.digital.loop.step_ns; });
    num("sweep.span_ns", [](Scenario& s) -> double& { return s.span_ns; });
    num("calibrate.energy_fj", [](Scenario& s) -> double& { return s.calibrate_energy_fj; });

    t.emplace("array.rows", [](Scenario& s, Explicit&, std::string_view v) { s.array.rows = to_uint(v); });
    t.emplace("array.cols", [](Scenario& s, Explicit&, std::string_view v) { s.array.cols = to_uint(v); });
    t.emplace("variation.seed", [](Scenario& s, Explicit&, std::string_view v) { s.variation.seed = to_uint(v); });
    t.emplace("capture.column", [](Scenario& s, Explicit&, std::string_view v) { s.roundtrip.column = to_uint(v); });
    t.emplace("capture.max_iters", [](Scenario& s, Explicit&, std::string_view v) {
      const auto n = to_uint(v);
      if (n > 100'000'000) throw std::invalid_argument("max_iters too large");
      s.roundtrip.digital.loop.max_iters = static_cast<int>(n);
    });
    t.emplace("sweep.trials", [](Scenario& s, Explicit&, std::string_view v) { s.trials = to_uint(v); });
    t.emplace("sweep.channels", [](Scenario& s, Explicit&, std::string_view v) { s.channels = to_uint(v); });

    t.emplace("device.amp_a_ohm", [](Scenario& s, Explicit& e, std::string_view v) {
      s.device.amp_a = to_double(v);
      e.amp_a = true;
    });
    t.emplace("capture.slope_ohm_per_count", [](Scenario& s, Explicit& e, std::string_view v) {
      s.roundtrip.digital.slope = to_double(v);
      e.slope = true;
    });
    t.emplace("capture.window_ns", [](Scenario& s, Explicit& e, std::string_view v) {
      s.roundtrip.native.window_ns = to_double(v);
      e.window = true;
    });
    t.emplace("capture.v_write", [](Scenario& s, Explicit&, std::string_view v) {
      s.roundtrip.native.v_write = s.roundtrip.digital.loop.v_write = to_double(v);
    });
    t.emplace("capture.path", [](Scenario& s, Explicit&, std::string_view v) {
      if (v == "native")
        s.roundtrip.path = CapturePath::native;
      else if (v == "digital")
        s.roundtrip.path = CapturePath::digital;
      else
        throw std::invalid_argument(fmt::format("expected native|digital, got '{}'", v));
    });
    t.emplace("quantizer.kind", [](Scenario& s, Explicit&, std::string_view v) {
      auto& q = s.roundtrip.digital.quantizer;
      if (v == "counter")
        q.kind = QuantizerKind::counter;
      else if (v == "vernier")
        q.kind = QuantizerKind::vernier;
      else
        throw std::invalid_argument(fmt::format("expected counter|vernier, got '{}'", v));
    });
    t.emplace("recall.scale_cap_pf", [](Scenario& s, Explicit&, std::string_view v) {
      if (v == "none") {
        s.roundtrip.scale = ScaleMode::none;
      } else if (v == "match") {
        s.roundtrip.scale = ScaleMode::match_span;
      } else {
        s.roundtrip.scale = ScaleMode::fixed;
        s.roundtrip.scale_cap = to_double(v) * 1e-12;
      }
    });
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::string> scenario_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

Scenario parse_scenario(std::istream& in, std::string_view source) {
  Scenario s;
  Explicit ex;
  std::string line;
  std::size_t lineno = 0;
  std::map<std::string, std::size_t, std::less<>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ScenarioError(fmt::format("{}:{}: expected 'key = value'", source, lineno));
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end())
      throw ScenarioError(fmt::format("{}:{}: unknown key '{}'", source, lineno, key));
    if (const auto prev = seen.find(key); prev != seen.end())
      throw ScenarioError(
          fmt::format("{}:{}: duplicate key '{}' (first set on line {})", source, lineno, key, prev->second));
    seen.emplace(std::string(key), lineno);
    try {
      it->second(s, ex, value);
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(fmt::format("{}:{}: {}: {}", source, lineno, key, e.what()));
    }
  }

  try {
    if (!ex.amp_a) s.device = calibrate_amp(s.r_span, s.t_span, s.device);
    if (!ex.window) s.roundtrip.native.window_ns = s.t_span;
    validate(s.array);
    validate(s.device);
    validate(s.variation);
    validate(s.roundtrip.digital.quantizer);
    if (!ex.slope) s.roundtrip.digital.slope = default_slope(s.r_span, s.t_span, s.quantizer().t_clk);
    if (!(s.roundtrip.digital.slope > 0.0)) throw std::invalid_argument("capture: require slope > 0");
    if (!(s.roundtrip.digital.loop.tol >= 0.0)) throw std::invalid_argument("capture: require tol >= 0");
    if (!(s.roundtrip.digital.loop.step_ns > 0.0)) throw std::invalid_argument("capture: require step_ns > 0");
    if (s.roundtrip.native.v_write < s.device.v_prog_threshold)
      throw std::invalid_argument("capture: require v_write >= v_prog_threshold");
    if (s.roundtrip.scale == ScaleMode::fixed && !(s.roundtrip.scale_cap > 0.0))
      throw std::invalid_argument("recall: require scale_cap_pf > 0");
    if (s.channels < 1) throw std::invalid_argument("sweep: require channels >= 1");
    if (s.trials < 1) throw std::invalid_argument("sweep: require trials >= 1");
  } catch (const std::exception& e) {
    throw ScenarioError(fmt::format("{}: {}", source, e.what()));
  }
  return s;
}

void write_scenario(std::ostream& out, const Scenario& s) {
  const auto num = [](double x) { return fmt::format("{}", x); };
  const auto& q = s.quantizer();
  const auto& rt = s.roundtrip;
  std::string scale = "none";
  if (rt.scale == ScaleMode::match_span) scale = "match";
  if (rt.scale == ScaleMode::fixed) scale = num(rt.scale_cap * 1e12);

  const std::pair<const char*, std::string> entries[] = {
      {"array.rows", std::to_string(s.array.rows)},
      {"array.cols", std::to_string(s.array.cols)},
      {"array.c_line_pf", num(s.array.c_line * 1e12)},
      {"array.v_read", num(s.array.v_read)},
      {"array.v_dd", num(s.array.v_dd)},
      {"array.theta", num(s.array.theta)},
      {"array.t_shifter_ns", num(s.array.t_shifter)},
      {"device.r_on_ohm", num(s.device.r_on)},
      {"device.r_off_max_ohm", num(s.device.r_off_max)},
      {"device.amp_a_ohm", num(s.device.amp_a)},
      {"device.tau_w_ns", num(s.device.tau_w)},
      {"device.v_prog_threshold", num(s.device.v_prog_threshold)},
      {"device.v_zero", num(s.device.v_zero)},
      {"device.v_write_nominal", num(s.device.v_write_nominal)},
      {"device.r_span_ohm", num(s.r_span)},
      {"device.t_span_ns", num(s.t_span)},
      {"variation.d2d_sigma", num(s.variation.d2d_sigma)},
      {"variation.c2c_sigma", num(s.variation.c2c_sigma)},
      {"variation.seed", std::to_string(s.variation.seed)},
      {"quantizer.kind", q.kind == QuantizerKind::counter ? "counter" : "vernier"},
      {"quantizer.t_clk_ns", num(q.t_clk)},
      {"quantizer.t_fine_ns", num(q.t_fine)},
      {"capture.path", rt.path == CapturePath::native ? "native" : "digital"},
      {"capture.column", std::to_string(rt.column)},
      {"capture.v_write", num(rt.native.v_write)},
      {"capture.window_ns", num(rt.native.window_ns)},
      {"capture.tol", num(rt.digital.loop.tol)},
      {"capture.step_ns", num(rt.digital.loop.step_ns)},
      {"capture.max_iters", std::to_string(rt.digital.loop.max_iters)},
      {"capture.slope_ohm_per_count", num(rt.digital.slope)},
      {"recall.scale_cap_pf", scale},
      {"sweep.trials", std::to_string(s.trials)},
      {"sweep.channels", std::to_string(s.channels)},
      {"sweep.span_ns", num(s.span_ns)},
      {"calibrate.energy_fj", num(s.calibrate_energy_fj)},
  };
  for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(fmt::format("{}: cannot open scenario file", path.string()));
  return parse_scenario(in, path.string());
}

}  // namespace tempmem
