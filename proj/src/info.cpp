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

#include "unruhchan/info.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "unruhchan/errors.hpp"

namespace unruhchan {

std::string to_string(Receiver receiver) {
  return receiver == Receiver::rob ? "R" : "Rbar";
}

Receiver other(Receiver receiver) {
  return receiver == Receiver::rob ? Receiver::anti_rob : Receiver::rob;
}

std::vector<std::string> receiver_modes(const ModeLayout& layout,
                                        Receiver receiver) {
  // Region I labels start with exactly one 'I', region II with two.
  const std::size_t want = receiver == Receiver::rob ? 1 : 2;
  std::vector<std::string> modes;
  for (const auto& label : layout.labels()) {
    const auto run = label.find_first_not_of('I');
    const std::size_t count = run == std::string::npos ? label.size() : run;
    if (count == want) modes.push_back(label);
  }
  if (modes.empty()) {
    throw UsageError("layout has no modes for receiver " + to_string(receiver));
  }
  return modes;
}

double entropy_bits(std::span<const double> spectrum) {
  double s = 0.0;
  for (double p : spectrum) {
    if (p > 1e-14) s -= p * std::log2(p);
  }
  return s;
}

double binary_entropy(double p) {
  const double q[] = {p, 1.0 - p};
  return entropy_bits(q);
}

double von_neumann_entropy(const DensityMatrix& rho, double trace_tol) {
  const auto tr = rho.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > trace_tol) {
    std::ostringstream msg;
    msg << "von_neumann_entropy: trace " << tr.real() << " deviates from 1";
    throw NumericError(msg.str());
  }
  const auto spectrum = hermitian_spectrum(rho);
  return entropy_bits(spectrum);
}

double holevo(const ClassicalEnsemble& ensemble, Receiver receiver) {
  if (ensemble.branches.empty()) throw UsageError("holevo: empty ensemble");
  double mean_entropy = 0.0;
  double total = 0.0;
  std::optional<DensityMatrix> mixture;
  for (const auto& branch : ensemble.branches) {
    if (branch.probability < 0.0) {
      throw UsageError("holevo: negative branch probability");
    }
    total += branch.probability;
    const auto keep = receiver_modes(branch.state.layout(), receiver);
    auto sigma = reduce_from_vector(branch.state, keep);
    if (branch.probability > 0.0) {
      mean_entropy += branch.probability * von_neumann_entropy(sigma);
    }
    DensityMatrix::Sparse weighted = branch.probability * sigma.elements();
    if (!mixture) {
      mixture.emplace(sigma.layout(), std::move(weighted));
    } else {
      if (!(mixture->layout() == sigma.layout())) {
        throw UsageError("holevo: branches live on different layouts");
      }
      DensityMatrix::Sparse sum = mixture->elements() + weighted;
      mixture.emplace(sigma.layout(), std::move(sum));
    }
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw UsageError("holevo: branch probabilities must sum to 1");
  }
  return von_neumann_entropy(*mixture) - mean_entropy;
}

namespace {

std::vector<std::string> with_alice(std::vector<std::string> modes) {
  modes.insert(modes.begin(), kAliceLabel);
  return modes;
}

double reduced_entropy(const StateVector& state,
                       std::span<const std::string> keep) {
  return von_neumann_entropy(reduce_from_vector(state, keep));
}

ConditionalEntropyRoutes checked_routes(double s_ax, double s_x, double s_other,
                                        Receiver receiver) {
  ConditionalEntropyRoutes routes{s_ax - s_x, s_other - s_x};
  if (std::abs(routes.direct - routes.shortcut) > kShortcutTolerance) {
    std::ostringstream msg;
    msg << "conditional entropy for " << to_string(receiver)
        << ": direct route " << routes.direct << " and pure-state shortcut "
        << routes.shortcut << " disagree; the state is not globally pure "
        << "(insufficient cutoff?)";
    throw NumericError(msg.str());
  }
  return routes;
}

}  // namespace

ConditionalEntropyRoutes conditional_entropy_routes(const StateVector& state,
                                                    Receiver receiver) {
  const auto& layout = state.layout();
  if (!layout.contains(kAliceLabel)) {
    throw UsageError("conditional_entropy: state has no sender mode 'A'");
  }
  const auto mine = receiver_modes(layout, receiver);
  const auto theirs = receiver_modes(layout, other(receiver));
  const double s_ax = reduced_entropy(state, with_alice(mine));
  const double s_x = reduced_entropy(state, mine);
  const double s_other = reduced_entropy(state, theirs);
  return checked_routes(s_ax, s_x, s_other, receiver);
}

double conditional_entropy(const StateVector& state, Receiver receiver) {
  return conditional_entropy_routes(state, receiver).direct;
}

double coherent_information(const StateVector& state, Receiver receiver) {
  return -conditional_entropy(state, receiver);
}

HolevoPair holevo_pair(ChannelParams params) {
  params.kind = ChannelKind::classical;
  auto ensemble = build_classical_ensemble(params);
  return {holevo(ensemble, Receiver::rob), holevo(ensemble, Receiver::anti_rob),
          ensemble.deficit, ensemble.cutoff};
}

ConditionalPair conditional_pair(ChannelParams params) {
  params.kind = ChannelKind::quantum;
  auto built = build_quantum_state(params);
  const auto& layout = built.state.layout();
  const auto rob = receiver_modes(layout, Receiver::rob);
  const auto anti = receiver_modes(layout, Receiver::anti_rob);
  const double s_ar = reduced_entropy(built.state, with_alice(rob));
  const double s_r = reduced_entropy(built.state, rob);
  const double s_abar = reduced_entropy(built.state, with_alice(anti));
  const double s_rbar = reduced_entropy(built.state, anti);
  return {checked_routes(s_ar, s_r, s_rbar, Receiver::rob),
          checked_routes(s_abar, s_rbar, s_r, Receiver::anti_rob), built.deficit,
          built.cutoff};
}

InfoResult channel_report(const ChannelParams& params) {
  const auto classical = holevo_pair(params);
  const auto quantum = conditional_pair(params);
  InfoResult out;
  out.holevo_R = classical.rob;
  out.holevo_Rbar = classical.anti_rob;
  out.cond_R = quantum.rob.direct;
  out.cond_Rbar = quantum.anti_rob.direct;
  out.cohinfo_R = -out.cond_R;
  out.cohinfo_Rbar = -out.cond_Rbar;
  out.deficit = std::max(classical.deficit, quantum.deficit);
  out.cutoff = quantum.cutoff;
  return out;
}

}  // namespace unruhchan
