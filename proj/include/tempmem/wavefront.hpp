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

// Single-event-per-channel wavefronts and the metrics used to compare them.

#include <cstddef>
#include <span>
#include <vector>

namespace tempmem {

/// One event time (ns) per channel; the channel is the index. Times are finite
/// and non-negative, and there is at least one channel.
class Wavefront {
 public:
  explicit Wavefront(std::vector<double> times);

  std::size_t size() const { return times_.size(); }
  double operator[](std::size_t i) const { return times_[i]; }
  std::span<const double> times() const { return times_; }

  double min() const;
  double max() const;
  double span() const { return max() - min(); }

  friend bool operator==(const Wavefront&, const Wavefront&) = default;

 private:
  std::vector<double> times_;
};

/// Channel indices sorted by ascending time; ties go to the lower channel.
struct RankOrder {
  std::vector<std::size_t> order;

  friend bool operator==(const RankOrder&, const RankOrder&) = default;
};

/// Shifts so that the earliest event is at t = 0.
Wavefront normalize(const Wavefront& w);

RankOrder rank_of(const Wavefront& w);

/// Kendall rank correlation between two orderings of the same channels.
/// Throws std::domain_error on mismatched sizes or if either is not a
/// permutation.
double kendall_tau(const RankOrder& a, const RankOrder& b);

struct TimingError {
  double rms = 0.0;      // ns
  double max_abs = 0.0;  // ns
};

/// Per-channel error between two wavefronts after normalizing both.
TimingError timing_error(const Wavefront& a, const Wavefront& b);

inline constexpr double kPrecisionCapBits = 8.0;

/// log2(span / (2 * rms)): the number of levels across `span` whose half-LSB
/// equals the rms error. Capped at kPrecisionCapBits, which is also the value
/// for rms == 0.
double effective_bits(double span, double rms);

}  // namespace tempmem
