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

#include "tempmem/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tempmem {

Wavefront::Wavefront(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) throw std::domain_error("wavefront: need at least one channel");
  for (double t : times_)
    if (!std::isfinite(t) || t < 0.0)
      throw std::domain_error("wavefront: event times must be finite and >= 0");
}

double Wavefront::min() const { return *std::min_element(times_.begin(), times_.end()); }
double Wavefront::max() const { return *std::max_element(times_.begin(), times_.end()); }

Wavefront normalize(const Wavefront& w) {
  const double t0 = w.min();
  std::vector<double> out(w.times().begin(), w.times().end());
  for (double& t : out) t -= t0;
  return Wavefront(std::move(out));
}

RankOrder rank_of(const Wavefront& w) {
  RankOrder r;
  r.order.resize(w.size());
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  return r;
}

namespace {

// position[channel] = place of that channel in the ordering
std::vector<std::size_t> positions(const RankOrder& r) {
  const std::size_t n = r.order.size();
  std::vector<std::size_t> pos(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t ch = r.order[k];
    if (ch >= n || pos[ch] != n) throw std::domain_error("kendall_tau: not a permutation");
    pos[ch] = k;
  }
  return pos;
}

}  // namespace

double kendall_tau(const RankOrder& a, const RankOrder& b) {
  if (a.order.size() != b.order.size())
    throw std::domain_error("kendall_tau: channel counts differ");
  const std::size_t n = a.order.size();
  if (n < 2) return 1.0;
  const auto pa = positions(a);
  const auto pb = positions(b);
  long long score = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same = (pa[i] < pa[j]) == (pb[i] < pb[j]);
      score += same ? 1 : -1;
    }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return static_cast<double>(score) / pairs;
}

TimingError timing_error(const Wavefront& a, const Wavefront& b) {
  if (a.size() != b.size()) throw std::domain_error("timing_error: channel counts differ");
  const double a0 = a.min();
  const double b0 = b.min();
  TimingError e;
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = (a[i] - a0) - (b[i] - b0);
    sq += d * d;
    e.max_abs = std::max(e.max_abs, std::abs(d));
  }
  e.rms = std::sqrt(sq / static_cast<double>(a.size()));
  return e;
}

double effective_bits(double span, double rms) {
  if (!(span > 0.0)) throw std::domain_error("effective_bits: span must be > 0");
  if (rms <= 0.0) return kPrecisionCapBits;
  return std::min(kPrecisionCapBits, std::log2(span / (2.0 * rms)));
}

}  // namespace tempmem
