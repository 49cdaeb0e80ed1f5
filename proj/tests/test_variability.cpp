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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "tempmem/variability.hpp"

using namespace tempmem;
using doctest::Approx;

namespace {

double rel_std(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  return std::sqrt(sq / (n - 1.0)) / mean;
}

TrialScenario fixed_scenario() {
  TrialScenario scn;
  scn.wavefront = Wavefront({0.0, 12.5, 3.0, 40.0, 27.0, 33.3, 8.0, 19.0});
  return scn;
}

}  // namespace

TEST_CASE("sample_array") {
  const DeviceParams base;
  SUBCASE("zero sigma reproduces the base device") {
    VariationSpec spec{0.0, 0.0, 5};
    for (const auto& p : sample_array(base, spec, 4, 3)) CHECK(p.r_on == base.r_on);
  }
  SUBCASE("deterministic in the seed") {
    VariationSpec spec{0.045, 0.0, 99};
    const auto a = sample_array(base, spec, 8, 8);
    const auto b = sample_array(base, spec, 8, 8);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].r_on == b[k].r_on);
    spec.seed = 100;
    const auto c = sample_array(base, spec, 8, 8);
    CHECK(c[0].r_on != a[0].r_on);
  }
  SUBCASE("empirical spread") {
    const VariationSpec spec{0.01, 0.0, 7};
    const auto grid = sample_array(base, spec, 100, 100);
    std::vector<double> r;
    for (const auto& p : grid) r.push_back(p.r_on);
    const double s = rel_std(r);
    CHECK(s >= 0.009);
    CHECK(s <= 0.011);
    for (const auto& p : grid) CHECK(p.amp_a == base.amp_a);
  }
  CHECK_THROWS_AS(sample_array(base, VariationSpec{-0.1, 0.0, 1}, 1, 1), std::invalid_argument);
}

TEST_CASE("perturb_pulse") {
  Rng rng(3);
  CHECK(perturb_pulse(17.0, VariationSpec{0.0, 0.0, 1}, rng) == 17.0);
  CHECK(perturb_pulse(0.0, VariationSpec{0.0, 0.042, 1}, rng) == 0.0);
  CHECK_THROWS_AS(perturb_pulse(-1.0, VariationSpec{}, rng), std::domain_error);

  const VariationSpec spec{0.0, 0.042, 1};
  std::vector<double> d(100000);
  for (auto& x : d) x = perturb_pulse(10.0, spec, rng);
  CHECK(rel_std(d) == Approx(0.042).epsilon(0.03));
  CHECK(std::accumulate(d.begin(), d.end(), 0.0) / d.size() == Approx(10.0).epsilon(1e-3));
}

TEST_CASE("trial streams") {
  Rng a = trial_stream(1, 0), b = trial_stream(1, 0), c = trial_stream(1, 1), d = trial_stream(2, 0);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("random_wavefront") {
  Rng rng(5);
  for (std::size_t n : {1, 2, 3, 8, 32}) {
    const auto w = random_wavefront(n, 40.0, rng);
    CHECK(w.size() == n);
    CHECK(w.min() == 0.0);
    CHECK(w.max() == (n > 1 ? 40.0 : 0.0));
  }
  CHECK_THROWS_AS(random_wavefront(0, 40.0, rng), std::domain_error);
}

TEST_CASE("noise-free Monte Carlo collapses onto the deterministic round trip") {
  const auto scn = fixed_scenario();
  const VariationSpec spec{0.0, 0.0, 42};
  const auto report = monte_carlo(scn, spec, 16);

  ArrayConfig cfg = scn.array;
  cfg.rows = scn.wavefront->size();
  ArrayState s(cfg, scn.device);
  const auto rt = round_trip(s, cfg, scn.device, *scn.wavefront, scn.roundtrip);

  // Every trial reproduces the deterministic result exactly; the means agree
  // up to summation rounding.
  for (const auto& o : run_trials_serial(scn, spec, 16)) {
    CHECK(o.tau == rt.tau);
    CHECK(o.rms_ns == rt.error.rms);
    CHECK(o.effective_bits == rt.effective_bits);
    CHECK(o.write_energy_j == rt.capture.write_energy);
  }
  CHECK(report.n_trials == 16);
  CHECK(report.rank_exact_rate == 1.0);
  CHECK(report.mean_tau == 1.0);
  CHECK(report.rms_timing_ns == Approx(rt.error.rms).epsilon(1e-14));
  CHECK(report.effective_bits_mean == Approx(rt.effective_bits).epsilon(1e-14));
  CHECK(report.write_energy_mean_j == Approx(rt.capture.write_energy).epsilon(1e-14));
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
  TrialScenario scn;
  const VariationSpec spec{0.01, 0.042, 2024};
  const auto serial = run_trials_serial(scn, spec, 200);
  const auto parallel = run_trials_parallel(scn, spec, 200, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].tau == parallel[i].tau);
    CHECK(serial[i].rms_ns == parallel[i].rms_ns);
    CHECK(serial[i].write_energy_j == parallel[i].write_energy_j);
  }
  CHECK(summarize(serial) == summarize(parallel));
  CHECK(monte_carlo(scn, spec, 200, Execution::serial) == monte_carlo(scn, spec, 200, Execution::parallel, 3));
}

TEST_CASE("digital path under noise stays converged") {
  TrialScenario scn;
  scn.roundtrip.path = CapturePath::digital;
  scn.channels = 4;
  const VariationSpec spec{0.0, 0.042, 9};
  const auto r = monte_carlo(scn, spec, 20);
  CHECK(r.convergence_rate == 1.0);
  CHECK(r.rms_timing_ns < 1.0);
}

TEST_CASE("more cycle-to-cycle noise lowers mean tau") {
  TrialScenario scn;
  double prev = 2.0;
  for (double c2c : {0.0, 0.042, 0.1, 0.2}) {
    const auto r = monte_carlo(scn, VariationSpec{0.01, c2c, 77}, 400);
    CHECK(r.mean_tau < prev);
    prev = r.mean_tau;
  }
}

TEST_CASE("rank-order success dominates 5-bit timing success") {
  TrialScenario scn;
  for (double d2d : {0.0, 0.01, 0.045})
    for (double c2c : {0.0, 0.042, 0.1}) {
      const auto r = monte_carlo(scn, VariationSpec{d2d, c2c, 5}, 300);
      CHECK(r.rank_exact_rate >= r.timing_exact_rate);
    }
}

TEST_CASE("meets_timing_criterion") {
  CHECK(meets_timing_criterion(40.0, 0.625));
  CHECK_FALSE(meets_timing_criterion(40.0, 0.626));
  CHECK(meets_timing_criterion(0.0, 0.0));
  CHECK_FALSE(meets_timing_criterion(0.0, 0.1));
}

TEST_CASE("monte_carlo argument checks") {
  CHECK_THROWS_AS(monte_carlo(TrialScenario{}, VariationSpec{}, 0), std::domain_error);
  CHECK_THROWS_AS(monte_carlo(TrialScenario{}, VariationSpec{0.0, -1.0, 1}, 1), std::invalid_argument);
}
