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

#include "unruhchan/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "unruhchan/errors.hpp"
#include "unruhchan/parallel.hpp"

namespace unruhchan {

std::string to_string(Measure measure) {
  return measure == Measure::holevo ? "holevo" : "cohinfo";
}

namespace {

constexpr double kQrMin = M_SQRT1_2;
constexpr double kCrossoverMargin = 1e-3;

ChannelParams point_params(Rail rail, double r, double alpha2,
                           const UnruhWeights& weights,
                           const OptimizerSettings& settings) {
  ChannelParams p;
  p.rindler.r = r;
  p.weights = weights;
  p.alpha2 = alpha2;
  p.rail = rail;
  p.cutoff = settings.cutoff;
  p.cutoff_cap = settings.cutoff_cap;
  p.tol = settings.tol;
  return p;
}

std::size_t resolved_cutoff(double r, Rail rail, const OptimizerSettings& settings) {
  if (settings.cutoff) return *settings.cutoff;
  return auto_cutoff(r, settings.tol, rail,
                     settings.cutoff_cap.value_or(cutoff_cap_from_env()));
}

// Strictly better, or tied within kTieTolerance and closer to the SMA corner
// (larger q_R, then larger α²).
bool prefer(double value, double alpha2, double qR, double best_value,
            double best_alpha2, double best_qR) {
  if (value > best_value + kTieTolerance) return true;
  if (value < best_value - kTieTolerance) return false;
  if (qR != best_qR) return qR > best_qR;
  return alpha2 > best_alpha2;
}

}  // namespace

double evaluate_measure(Measure measure, Rail rail, Receiver receiver, double r,
                        double alpha2, double qR,
                        const OptimizerSettings& settings) {
  auto weights = UnruhWeights::unrestricted(qR);
  // The region swap maps anti-Rob's view of (q_R, q_L) onto Rob's view of
  // (q_L, q_R) exactly, so only Rob's measure is ever computed.
  if (receiver == Receiver::anti_rob) weights = weights.swapped();
  auto params = point_params(rail, r, alpha2, weights, settings);
  try {
    if (measure == Measure::holevo) {
      params.kind = ChannelKind::classical;
      return holevo(build_classical_ensemble(params), Receiver::rob);
    }
    params.kind = ChannelKind::quantum;
    return coherent_information(build_quantum_state(params).state, Receiver::rob);
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << e.what() << " [objective at r = " << r << ", alpha2 = " << alpha2
        << ", qR = " << qR << "]";
    if (dynamic_cast<const TruncationError*>(&e)) throw TruncationError(msg.str());
    if (dynamic_cast<const NumericError*>(&e)) throw NumericError(msg.str());
    throw UsageError(msg.str());
  }
}

SimplexResult nelder_mead(const std::function<double(std::array<double, 2>)>& f,
                          std::array<double, 2> start, std::array<double, 2> step,
                          std::array<double, 2> lower, std::array<double, 2> upper,
                          double tol, std::size_t max_iterations) {
  using Point = std::array<double, 2>;
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
  SimplexResult out;
  auto project = [&](Point p) {
    for (std::size_t k = 0; k < 2; ++k) p[k] = std::clamp(p[k], lower[k], upper[k]);
    return p;
  };
  auto eval = [&](const Point& p) {
    ++out.evals;
    return f(p);
  };
  auto along = [](const Point& from, const Point& to, double t) {
    return Point{from[0] + t * (to[0] - from[0]), from[1] + t * (to[1] - from[1])};
  };

  std::array<Point, 3> x{project(start), project({start[0] + step[0], start[1]}),
                         project({start[0], start[1] + step[1]})};
  std::array<double, 3> fx{};
  for (std::size_t k = 0; k < 3; ++k) fx[k] = eval(x[k]);

  std::array<std::size_t, 3> idx{0, 1, 2};
  for (; out.iterations < max_iterations; ++out.iterations) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fx[a] < fx[b]; });
    const auto best = idx[0], mid = idx[1], worst = idx[2];
    if (std::abs(fx[worst] - fx[best]) < tol) break;

    const Point centroid{0.5 * (x[best][0] + x[mid][0]), 0.5 * (x[best][1] + x[mid][1])};
    const Point xr = project(along(centroid, x[worst], -kReflect));
    const double fr = eval(xr);
    if (fr < fx[best]) {
      const Point xe = project(along(centroid, x[worst], -kExpand));
      const double fe = eval(xe);
      if (fe < fr) {
        x[worst] = xe;
        fx[worst] = fe;
      } else {
        x[worst] = xr;
        fx[worst] = fr;
      }
      continue;
    }
    if (fr < fx[mid]) {
      x[worst] = xr;
      fx[worst] = fr;
      continue;
    }
    const bool outside = fr < fx[worst];
    const Point xc = outside ? project(along(centroid, xr, kContract))
                             : project(along(centroid, x[worst], kContract));
    const double fc = eval(xc);
    if (fc < (outside ? fr : fx[worst])) {
      x[worst] = xc;
      fx[worst] = fc;
      continue;
    }
    for (auto k : {mid, worst}) {
      x[k] = project(along(x[best], x[k], kShrink));
      fx[k] = eval(x[k]);
    }
  }
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fx[a] < fx[b]; });
  out.x = x[idx[0]];
  out.value = fx[idx[0]];
  return out;
}

OptResult maximize(Measure measure, Rail rail, Receiver receiver, double r,
                   const OptimizerSettings& settings,
                   std::optional<std::array<double, 2>> hint) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw UsageError("maximize: r must be finite and nonnegative");
  }
  if (settings.grid_points < 2) throw UsageError("maximize: grid needs >= 2 points");

  OptimizerSettings pinned = settings;
  pinned.cutoff = resolved_cutoff(r, rail, settings);

  OptResult out;
  out.r = r;
  out.measure = measure;
  out.rail = rail;
  out.receiver = receiver;
  out.cutoff = *pinned.cutoff;

  auto objective = [&](double alpha2, double qR) {
    return evaluate_measure(measure, rail, receiver, r, alpha2, qR, pinned);
  };

  const std::size_t g = settings.grid_points;
  const double da = 1.0 / static_cast<double>(g - 1);
  const double dq = (1.0 - kQrMin) / static_cast<double>(g - 1);
  auto grid_alpha = [&](std::size_t i) { return i + 1 == g ? 1.0 : i * da; };
  auto grid_qr = [&](std::size_t j) { return j + 1 == g ? 1.0 : kQrMin + j * dq; };

  std::vector<double> values(g * g);
  parallel_for(values.size(), settings.jobs, [&](std::size_t k) {
    values[k] = objective(grid_alpha(k / g), grid_qr(k % g));
  });
  out.evals = values.size();

  double best_a = grid_alpha(0), best_q = grid_qr(0), best_v = values[0];
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double a = grid_alpha(k / g), q = grid_qr(k % g);
    if (prefer(values[k], a, q, best_v, best_a, best_q)) {
      best_a = a;
      best_q = q;
      best_v = values[k];
    }
  }

  std::array<double, 2> seed{best_a, best_q};
  if (hint) {
    const std::array<double, 2> h{std::clamp((*hint)[0], 0.0, 1.0),
                                  std::clamp((*hint)[1], kQrMin, 1.0)};
    const double hv = objective(h[0], h[1]);
    ++out.evals;
    if (hv >= best_v) seed = h;
  }

  // Simplex steps of one grid cell, pointing into the box.
  const std::array<double, 2> step{seed[0] + da > 1.0 ? -da : da,
                                   seed[1] + dq > 1.0 ? -dq : dq};
  auto simplex = nelder_mead(
      [&](std::array<double, 2> p) { return -objective(p[0], p[1]); }, seed, step,
      {0.0, kQrMin}, {1.0, 1.0}, settings.objective_tol, settings.max_iterations);
  out.evals += simplex.evals;

  out.alpha2_opt = best_a;
  out.qR_opt = best_q;
  out.value = best_v;
  if (prefer(-simplex.value, simplex.x[0], simplex.x[1], best_v, best_a, best_q)) {
    out.alpha2_opt = simplex.x[0];
    out.qR_opt = simplex.x[1];
    out.value = -simplex.value;
  }
  return out;
}

Crossover sma_crossover(Rail rail, const OptimizerSettings& settings, double lo,
                        double hi, double width) {
  if (!(lo < hi) || !(width > 0.0)) {
    throw UsageError("sma_crossover: need lo < hi and width > 0");
  }
  auto departed = [&](double r) {
    return maximize(Measure::holevo, rail, Receiver::rob, r, settings).qR_opt <
           1.0 - kCrossoverMargin;
  };
  Crossover out;
  const bool at_lo = departed(lo);
  const bool at_hi = departed(hi);
  if (at_lo || !at_hi) {
    std::ostringstream msg;
    msg << "sma_crossover: optimal qR does not leave 1 inside [" << lo << ", "
        << hi << "] (departed at lo: " << at_lo << ", at hi: " << at_hi << ")";
    throw BracketError(msg.str());
  }
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    (departed(mid) ? hi : lo) = mid;
    ++out.steps;
  }
  out.lower = lo;
  out.upper = hi;
  out.r_star = 0.5 * (lo + hi);
  return out;
}

std::vector<OptResult> optimal_curve(Measure measure, Rail rail,
                                     std::span<const double> r_grid,
                                     const OptimizerSettings& settings,
                                     Receiver receiver, bool warm_start) {
  if (!std::is_sorted(r_grid.begin(), r_grid.end())) {
    throw UsageError("optimal_curve: r grid must be ascending");
  }
  std::vector<OptResult> curve;
  curve.reserve(r_grid.size());
  std::optional<std::array<double, 2>> hint;
  for (double r : r_grid) {
    curve.push_back(maximize(measure, rail, receiver, r, settings, hint));
    if (warm_start) hint = std::array<double, 2>{curve.back().alpha2_opt, curve.back().qR_opt};
  }
  return curve;
}

}  // namespace unruhchan
