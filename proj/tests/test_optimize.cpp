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

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "unruhchan/errors.hpp"
#include "unruhchan/optimize.hpp"

using namespace unruhchan;

namespace {

const double kLowQr = std::sqrt(0.5);

OptimizerSettings roomy() {
  OptimizerSettings s;
  s.cutoff_cap = 4096;
  return s;
}

}  // namespace

TEST_CASE("simplex finds interior and boundary optima") {
  // The simplex minimizes.
  auto bowl = [](std::array<double, 2> x) {
    return (x[0] - 0.3) * (x[0] - 0.3) + 2 * (x[1] - 0.8) * (x[1] - 0.8);
  };
  const auto in = nelder_mead(bowl, {0.5, 0.9}, {0.1, 0.05}, {0, kLowQr}, {1, 1}, 1e-14, 1000);
  CHECK(std::abs(in.x[0] - 0.3) < 1e-5);
  CHECK(std::abs(in.x[1] - 0.8) < 1e-5);
  CHECK(in.evals > 0);

  auto tilted = [](std::array<double, 2> x) { return (x[0] - 0.5) * (x[0] - 0.5) - x[1]; };
  const auto edge = nelder_mead(tilted, {0.2, 0.8}, {0.05, 0.05}, {0, kLowQr}, {1, 1}, 1e-14, 1000);
  CHECK(edge.x[1] == 1.0);
  CHECK(std::abs(edge.x[0] - 0.5) < 1e-4);
}

TEST_CASE("coherent information prefers the single-mode weights") {
  for (double r : {0.2, 0.6, 1.0, 1.4}) {
    const auto res = maximize(Measure::coherent, Rail::single, Receiver::rob, r, roomy());
    CAPTURE(r);
    CHECK(std::abs(res.qR_opt - 1.0) < 1e-3);
    CHECK(res.value >= evaluate_measure(Measure::coherent, Rail::single, Receiver::rob, r, 0.5,
                                        1.0, roomy()) - 1e-12);
  }
}

TEST_CASE("dual-rail coherent information is optimal at even weights") {
  auto s = roomy();
  for (double r : {0.2, 0.6}) {
    const auto res = maximize(Measure::coherent, Rail::dual, Receiver::rob, r, s);
    CAPTURE(r);
    CHECK(std::abs(res.alpha2_opt - 0.5) < 1e-3);
    CHECK(std::abs(res.qR_opt - 1.0) < 1e-3);
  }
}

TEST_CASE("Holevo at small r keeps the single-mode weights") {
  const auto res = maximize(Measure::holevo, Rail::single, Receiver::rob, 0.5, roomy());
  CHECK(std::abs(res.qR_opt - 1.0) < 1e-3);
  // Vacuum weight sits slightly below one half; equivalently the excitation
  // weight sits slightly above.
  CHECK(res.alpha2_opt > 0.4);
  CHECK(res.alpha2_opt < 0.5);
  CHECK(res.measure == Measure::holevo);
  CHECK(res.cutoff > 0);
}

TEST_CASE("optimizer is deterministic") {
  const auto a = maximize(Measure::holevo, Rail::single, Receiver::rob, 1.1, roomy());
  const auto b = maximize(Measure::holevo, Rail::single, Receiver::rob, 1.1, roomy());
  CHECK(a.value == b.value);
  CHECK(a.alpha2_opt == b.alpha2_opt);
  CHECK(a.qR_opt == b.qR_opt);
  CHECK(a.evals == b.evals);
  auto threaded = roomy();
  threaded.jobs = 3;
  const auto c = maximize(Measure::holevo, Rail::single, Receiver::rob, 1.1, threaded);
  CHECK(c.value == a.value);
  CHECK(c.evals == a.evals);
}

TEST_CASE("optimum dominates the canonical anchors") {
  for (Measure m : {Measure::holevo, Measure::coherent}) {
    for (double r : {0.0, 0.4, 0.9, 1.3, 1.8}) {
      const auto res = maximize(m, Rail::single, Receiver::rob, r, roomy());
      for (double q : {1.0, kLowQr}) {
        const double anchor = evaluate_measure(m, Rail::single, Receiver::rob, r, 0.5, q, roomy());
        CHECK(res.value >= anchor - 1e-12);
      }
    }
  }
}

TEST_CASE("optimizer matches a dense brute-force scan") {
  const double r = 0.3;
  const auto s = roomy();
  const auto res = maximize(Measure::holevo, Rail::single, Receiver::rob, r, s);
  double best = -1.0;
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const double a2 = i / 200.0;
      const double q = kLowQr + (1.0 - kLowQr) * j / 100.0;
      best = std::max(best, evaluate_measure(Measure::holevo, Rail::single, Receiver::rob, r, a2, q, s));
    }
  }
  CHECK(std::abs(res.value - best) < 1e-4);
  CHECK(res.value >= best - 1e-12);
}

TEST_CASE("anti-Rob objective uses the mirrored weights") {
  const double v = evaluate_measure(Measure::holevo, Rail::single, Receiver::anti_rob, 0.7, 0.4, 0.9, roomy());
  ChannelParams p;
  p.rindler.r = 0.7;
  p.alpha2 = 0.4;
  p.weights = UnruhWeights::from_qr(0.9).swapped();
  p.cutoff_cap = 4096;
  CHECK(std::abs(v - holevo_pair(p).rob) < 1e-14);
}

TEST_CASE("objective failures name the point") {
  OptimizerSettings tight;
  tight.cutoff_cap = 8;
  try {
    evaluate_measure(Measure::holevo, Rail::single, Receiver::rob, 2.0, 0.5, 1.0, tight);
    FAIL("expected a truncation error");
  } catch (const TruncationError& err) {
    const std::string what = err.what();
    CHECK(what.find("alpha2") != std::string::npos);
    CHECK(what.find("qR") != std::string::npos);
  }
  CHECK_THROWS_AS(maximize(Measure::holevo, Rail::single, Receiver::rob, -1.0), UsageError);
}

TEST_CASE("SMA crossover for Holevo") {
  const auto cross = sma_crossover(Rail::single, roomy());
  CHECK(cross.r_star >= 0.8);
  CHECK(cross.r_star <= 1.3);
  CHECK(cross.upper - cross.lower <= 0.02 + 1e-12);

  // Scan oracle: once the optimum leaves qR = 1 it never comes back.
  bool departed = false;
  for (int k = 0; k <= 18; ++k) {
    const double r = 0.2 + 0.1 * k;
    const bool off = maximize(Measure::holevo, Rail::single, Receiver::rob, r, roomy()).qR_opt < 1.0 - 1e-3;
    CAPTURE(r);
    if (departed) CHECK(off);
    departed = departed || off;
    if (r < cross.lower) CHECK_FALSE(off);
    if (r > cross.upper) CHECK(off);
  }

  CHECK_THROWS_AS(sma_crossover(Rail::single, roomy(), 0.2, 0.4), BracketError);
}

TEST_CASE("optimal Holevo curve") {
  std::vector<double> grid;
  for (int k = 0; k <= 12; ++k) grid.push_back(0.2 * k);
  const auto curve = optimal_curve(Measure::holevo, Rail::single, grid, roomy());
  REQUIRE(curve.size() == grid.size());
  double lo = 1.0, hi = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(curve[i].r == grid[i]);
    if (i) CHECK(curve[i].value <= curve[i - 1].value + 1e-9);
    CHECK(curve[i].alpha2_opt >= 0.4);
    CHECK(curve[i].alpha2_opt <= 0.5);
    if (grid[i] > 1.2) {
      lo = std::min(lo, curve[i].alpha2_opt);
      hi = std::max(hi, curve[i].alpha2_opt);
    }
  }
  CHECK(hi - lo > 1e-3);

  const auto cold = optimal_curve(Measure::holevo, Rail::single, grid, roomy(), Receiver::rob, false);
  for (std::size_t i = 0; i < curve.size(); ++i) CHECK(std::abs(cold[i].value - curve[i].value) < 1e-7);

  const std::vector<double> unsorted{0.5, 0.2};
  CHECK_THROWS_AS(optimal_curve(Measure::holevo, Rail::single, unsorted, roomy()), UsageError);
}

TEST_CASE("dual-rail optimized Holevo is at least the single-rail value") {
  for (double r : {0.2, 0.6}) {
    const auto s = maximize(Measure::holevo, Rail::single, Receiver::rob, r, roomy());
    const auto d = maximize(Measure::holevo, Rail::dual, Receiver::rob, r, roomy());
    CHECK(d.value >= s.value - 1e-9);
  }
}
