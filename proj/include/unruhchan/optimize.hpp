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

// Maximization of the channel measures over the sender-controlled
// parameters (α², q_R) at fixed squeezing r.
//
// The search runs a fixed 21×21 grid over [0, 1] × [1/√2, 1] and then a
// bounded downhill simplex seeded at the best grid cell. Everything is
// deterministic: grid order, simplex seeding and tie-breaks are fixed.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unruhchan/info.hpp"
#include "unruhchan/unruh.hpp"

namespace unruhchan {

enum class Measure { holevo, coherent };

std::string to_string(Measure measure);

struct OptResult {
  double r = 0.0;
  double alpha2_opt = 0.5;
  double qR_opt = 1.0;
  double value = 0.0;
  Measure measure = Measure::holevo;
  Rail rail = Rail::single;
  Receiver receiver = Receiver::rob;
  std::size_t evals = 0;
  std::size_t cutoff = 0;
};

struct OptimizerSettings {
  /// Truncation tolerance handed to the state builders.
  double tol = kDefaultTolerance;
  std::optional<std::size_t> cutoff;
  std::optional<std::size_t> cutoff_cap;
  std::size_t grid_points = 21;
  /// Simplex stops once the spread of objective values drops below this.
  double objective_tol = 1e-8;
  std::size_t max_iterations = 400;
  /// Worker threads for the grid stage.
  std::size_t jobs = 1;
};

inline constexpr double kTieTolerance = 1e-10;

/// Measure for one receiver at one parameter point. Anti-Rob values are
/// computed as Rob values of the weight-swapped Unruh mode.
double evaluate_measure(Measure measure, Rail rail, Receiver receiver, double r,
                        double alpha2, double qR, const OptimizerSettings& settings);

struct SimplexResult {
  std::array<double, 2> x{};
  double value = 0.0;
  std::size_t evals = 0;
  std::size_t iterations = 0;
};

/// Box-constrained Nelder–Mead minimization of `f`. Trial points are
/// projected onto [lower, upper] before evaluation.
SimplexResult nelder_mead(const std::function<double(std::array<double, 2>)>& f,
                          std::array<double, 2> start, std::array<double, 2> step,
                          std::array<double, 2> lower, std::array<double, 2> upper,
                          double tol, std::size_t max_iterations);

/// Grid + simplex maximization. `hint` (α², q_R) seeds the simplex instead
/// of the best grid cell when it scores at least as well.
OptResult maximize(Measure measure, Rail rail, Receiver receiver, double r,
                   const OptimizerSettings& settings = {},
                   std::optional<std::array<double, 2>> hint = std::nullopt);

struct Crossover {
  double r_star = 0.0;
  double lower = 0.0;  // largest r seen with q_R,opt = 1
  double upper = 0.0;  // smallest r seen with q_R,opt < 1
  std::size_t steps = 0;
};

/// Squeezing at which the optimal Holevo q_R leaves 1, by bisection of the
/// indicator q_R,opt < 1 − 1e-3 on [lo, hi] down to `width`.
Crossover sma_crossover(Rail rail, const OptimizerSettings& settings = {},
                        double lo = 0.2, double hi = 2.0, double width = 0.02);

/// One OptResult per r in ascending `r_grid`, each refinement warm-started
/// from the previous optimum.
std::vector<OptResult> optimal_curve(Measure measure, Rail rail,
                                     std::span<const double> r_grid,
                                     const OptimizerSettings& settings = {},
                                     Receiver receiver = Receiver::rob,
                                     bool warm_start = true);

}  // namespace unruhchan
