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

#include "unruhchan/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "unruhchan/errors.hpp"
#include "unruhchan/parallel.hpp"

namespace unruhchan {
namespace {

constexpr double kQrDisplayFloor = 0.7071;

double parse_double(const std::string& token, const char* what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size() || !std::isfinite(value)) {
    throw UsageError(std::string("cannot parse ") + what + " '" + token + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

RRange RRange::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const double r = parse_double(parts[0], "r");
    return {r, r, 1.0};
  }
  if (parts.size() != 3) {
    throw UsageError("r range must be start:stop:step, got '" + text + "'");
  }
  RRange range{parse_double(parts[0], "r start"), parse_double(parts[1], "r stop"),
               parse_double(parts[2], "r step")};
  if (!(range.step > 0.0)) throw UsageError("r step must be positive");
  if (range.stop < range.start) throw UsageError("r stop must not precede start");
  return range;
}

std::vector<double> RRange::values() const {
  if (!(step > 0.0)) throw UsageError("r step must be positive");
  if (start < 0.0) throw UsageError("r must be nonnegative");
  const auto count =
      static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(start + static_cast<double>(i) * step);
  }
  return out;
}

void SweepSpec::validate() const {
  (void)r.values();
  if (qr.empty() || alpha2.empty()) throw UsageError("qr and alpha2 lists must be nonempty");
  for (double q : qr) (void)UnruhWeights::from_qr(q);
  for (double a : alpha2) {
    if (!(a >= 0.0 && a <= 1.0)) throw UsageError("alpha2 values must lie in [0, 1]");
  }
  if (!(tol > 0.0)) throw UsageError("tol must be positive");
  if (cutoff && *cutoff < kMinCutoff) throw UsageError("nmax must be at least 2");
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  struct Point {
    double r, qR, alpha2;
  };
  std::vector<Point> points;
  for (double r : spec.r.values()) {
    for (double q : spec.qr) {
      for (double a : spec.alpha2) points.push_back({r, q, a});
    }
  }
  std::vector<std::vector<ResultRow>> per_point(points.size());
  parallel_for(points.size(), spec.jobs, [&](std::size_t i) {
    const auto& pt = points[i];
    ChannelParams params;
    params.rindler.r = pt.r;
    params.weights = UnruhWeights::from_qr(pt.qR);
    params.alpha2 = pt.alpha2;
    params.rail = spec.rail;
    params.cutoff = spec.cutoff;
    params.cutoff_cap = spec.cutoff_cap;
    params.tol = spec.tol;
    auto& rows = per_point[i];
    auto emit = [&](const char* measure, Receiver who, double value, double deficit,
                    std::size_t n) {
      rows.push_back({pt.r, pt.qR, pt.alpha2, spec.rail, measure, who, value, deficit, n});
    };
    if (spec.channel != ChannelSelection::quantum) {
      params.kind = ChannelKind::classical;
      const auto h = holevo_pair(params);
      emit("holevo", Receiver::rob, h.rob, h.deficit, h.cutoff);
      emit("holevo", Receiver::anti_rob, h.anti_rob, h.deficit, h.cutoff);
    }
    if (spec.channel != ChannelSelection::classical) {
      params.kind = ChannelKind::quantum;
      const auto c = conditional_pair(params);
      emit("cohinfo", Receiver::rob, -c.rob.direct, c.deficit, c.cutoff);
      emit("cohinfo", Receiver::anti_rob, -c.anti_rob.direct, c.deficit, c.cutoff);
      emit("cond", Receiver::rob, c.rob.direct, c.deficit, c.cutoff);
      emit("cond", Receiver::anti_rob, c.anti_rob.direct, c.deficit, c.cutoff);
    }
  });
  std::vector<ResultRow> rows;
  for (auto& chunk : per_point) {
    rows.insert(rows.end(), chunk.begin(), chunk.end());
  }
  return rows;
}

std::string format_value(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    out << format_value(row.r) << ',' << format_value(row.qR) << ','
        << format_value(row.alpha2) << ',' << to_string(row.rail) << ','
        << row.measure << ',' << to_string(row.receiver) << ','
        << format_value(row.value) << ',' << format_value(row.deficit) << ','
        << row.cutoff << '\n';
  }
}

void write_opt_csv(std::ostream& out, const std::vector<OptResult>& rows) {
  out << kOptCsvHeader << '\n';
  for (const auto& row : rows) {
    out << format_value(row.r) << ',' << format_value(row.alpha2_opt) << ','
        << format_value(row.qR_opt) << ',' << format_value(row.value) << ','
        << to_string(row.measure) << ',' << to_string(row.rail) << ',' << row.evals
        << '\n';
  }
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& token : split(text, ',')) out.push_back(parse_double(token, "value"));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<double> parse_qr_list(const std::string& text) {
  auto values = parse_double_list(text);
  for (auto& q : values) {
    if (q >= kQrDisplayFloor && q < M_SQRT1_2 + 5e-6) q = M_SQRT1_2;
    (void)UnruhWeights::from_qr(q);
  }
  return values;
}

}  // namespace unruhchan
