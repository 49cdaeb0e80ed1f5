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

// Monte Carlo kernels. run_trials_serial is the reference the OpenMP kernel is
// tested against; both must return bit-identical outcomes.

#include <exception>
#include <stdexcept>

#include <omp.h>

#include "tempmem/variability.hpp"

namespace tempmem {

std::vector<TrialOutcome> run_trials_serial(const TrialScenario& scn, const VariationSpec& spec,
                                            std::size_t n_trials) {
  validate(spec);
  std::vector<TrialOutcome> out(n_trials);
  for (std::size_t i = 0; i < n_trials; ++i) out[i] = run_trial(scn, spec, i);
  return out;
}

std::vector<TrialOutcome> run_trials_parallel(const TrialScenario& scn, const VariationSpec& spec,
                                              std::size_t n_trials, int threads) {
  validate(spec);
  std::vector<TrialOutcome> out(n_trials);
  std::exception_ptr error;
  const auto n = static_cast<long long>(n_trials);
  const int team = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 8) num_threads(team)
  for (long long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = run_trial(scn, spec, static_cast<std::uint64_t>(i));
    } catch (...) {
#pragma omp critical(tempmem_mc_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

TrialReport monte_carlo(const TrialScenario& scn, const VariationSpec& spec, std::size_t n_trials,
                        Execution exec, int threads) {
  if (n_trials < 1) throw std::domain_error("monte_carlo: need at least one trial");
  const auto outcomes = exec == Execution::serial ? run_trials_serial(scn, spec, n_trials)
                                                  : run_trials_parallel(scn, spec, n_trials, threads);
  return summarize(outcomes);
}

}  // namespace tempmem
