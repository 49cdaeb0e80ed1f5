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

// Scenario files: flat `key = value` text with dotted section keys, `#`
// comments and blank lines. Units are fixed by the key suffix (ns, ohm, pf,
// fj). Unknown keys and malformed values are errors reported with the line
// number.
//
//   array.c_line_pf = 1.0
//   capture.path    = native   # or digital
//   recall.scale_cap_pf = match

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tempmem/crossbar.hpp"
#include "tempmem/device.hpp"
#include "tempmem/recording.hpp"
#include "tempmem/variability.hpp"

namespace tempmem {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  ArrayConfig array;
  DeviceParams device;
  VariationSpec variation;
  RoundTripOptions roundtrip;  // path, column, capture and scale settings

  double r_span = kDefaultSpanOhm;   // linear programming window, resistance side
  double t_span = kDefaultWindowNs;  // and time side
  double calibrate_energy_fj = 600.0;

  std::size_t trials = 1000;
  std::size_t channels = 8;
  double span_ns = kDefaultWindowNs;

  const QuantizerSpec& quantizer() const { return roundtrip.digital.quantizer; }
};

/// Parses a scenario. `source` names the input in error messages. Derived
/// values (amp_a, digital slope, native window) are filled in from the
/// programming window unless set explicitly, then every component is
/// validated.
Scenario parse_scenario(std::istream& in, std::string_view source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

/// Writes every key, explicit values included, so that parse_scenario of the
/// output reproduces `s`.
void write_scenario(std::ostream& out, const Scenario& s);

/// Every key parse_scenario accepts, in a stable order.
std::vector<std::string> scenario_keys();

}  // namespace tempmem
