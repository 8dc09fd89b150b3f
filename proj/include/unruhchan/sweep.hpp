// Copyright 2026 The unruhchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "unruhchan/info.hpp"
#include "unruhchan/optimize.hpp"
#include "unruhchan/unruh.hpp"

namespace unruhchan {

enum class ChannelSelection { classical, quantum, both };
enum class OutputFormat { csv, svg, both };

/// Inclusive r range start:stop:step.
struct RRange {
  double start = 0.0;
  double stop = 2.5;
  double step = 0.1;

  /// Parses "start:stop:step" or a single value.
  static RRange parse(const std::string& text);
  std::vector<double> values() const;
};

struct SweepSpec {
  RRange r;
  std::vector<double> qr = {M_SQRT1_2, 0.8, 0.9, 1.0};
  std::vector<double> alpha2 = {0.5};
  Rail rail = Rail::single;
  ChannelSelection channel = ChannelSelection::both;
  std::optional<std::size_t> cutoff;  // empty = auto
  std::optional<std::size_t> cutoff_cap;
  double tol = kDefaultTolerance;
  std::size_t jobs = 1;

  void validate() const;
};

struct ResultRow {
  double r = 0.0;
  double qR = 0.0;
  double alpha2 = 0.0;
  Rail rail = Rail::single;
  std::string measure;  // holevo, cohinfo or cond
  Receiver receiver = Receiver::rob;
  double value = 0.0;
  double deficit = 0.0;
  std::size_t cutoff = 0;
};

inline constexpr const char* kCsvHeader = "r,qR,alpha2,rail,measure,receiver,value,deficit,N";
inline constexpr const char* kOptCsvHeader = "r,alpha2_opt,qR_opt,value,measure,rail,evals";

/// Rows in r-major, then q_R, then α² order; within a point holevo, cohinfo,
/// cond, each for R then Rbar.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

/// 12 significant digits, "%.12g".
std::string format_value(double value);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_opt_csv(std::ostream& out, const std::vector<OptResult>& rows);

/// Parses a comma-separated q_R list. Values in [0.7071, 1/√2] snap to
/// exactly 1/√2; anything else outside [1/√2, 1] is a UsageError.
std::vector<double> parse_qr_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace unruhchan
