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
#include <span>
#include <string>
#include <vector>

#include "unruhchan/fock.hpp"
#include "unruhchan/unruh.hpp"

namespace unruhchan {

/// Rob observes region I, anti-Rob region II.
enum class Receiver { rob, anti_rob };

std::string to_string(Receiver receiver);
Receiver other(Receiver receiver);

/// Labels in `layout` that belong to the receiver's region (for example
/// {I} or {I+, I-} for Rob).
std::vector<std::string> receiver_modes(const ModeLayout& layout,
                                        Receiver receiver);

/// Shannon entropy in bits of an eigenvalue list; values below 1e-14 are
/// dropped (0 log 0 = 0).
double entropy_bits(std::span<const double> spectrum);
double binary_entropy(double p);

/// S(ρ) = −Tr ρ log₂ ρ. Throws NumericError when |Tr ρ − 1| > trace_tol.
double von_neumann_entropy(const DensityMatrix& rho, double trace_tol = 1e-8);

/// χ = S(Σ p_x σ_x) − Σ p_x S(σ_x) with σ_x the receiver's share of branch x.
double holevo(const ClassicalEnsemble& ensemble, Receiver receiver);

/// Both routes to S(A|X) for a globally pure state.
struct ConditionalEntropyRoutes {
  double direct = 0.0;    // S(ρ_{A,X}) − S(ρ_X)
  double shortcut = 0.0;  // S(ρ_{X̄}) − S(ρ_X)
};

inline constexpr double kShortcutTolerance = 1e-6;

/// Computes S(A|X) directly and via purity. Throws NumericError when the two
/// disagree by more than 1e-6.
ConditionalEntropyRoutes conditional_entropy_routes(const StateVector& state,
                                                    Receiver receiver);
double conditional_entropy(const StateVector& state, Receiver receiver);
double coherent_information(const StateVector& state, Receiver receiver);

struct InfoResult {
  double holevo_R = 0.0;
  double holevo_Rbar = 0.0;
  double cohinfo_R = 0.0;
  double cohinfo_Rbar = 0.0;
  double cond_R = 0.0;
  double cond_Rbar = 0.0;
  double deficit = 0.0;
  std::size_t cutoff = 0;
};

struct HolevoPair {
  double rob = 0.0;
  double anti_rob = 0.0;
  double deficit = 0.0;
  std::size_t cutoff = 0;
};

struct ConditionalPair {
  ConditionalEntropyRoutes rob;
  ConditionalEntropyRoutes anti_rob;
  double deficit = 0.0;
  std::size_t cutoff = 0;
};

/// Classical half of the report (kind is ignored).
/// Both pairs ignore `params.kind` and build the state they need.
HolevoPair holevo_pair(ChannelParams params);
/// Quantum half of the report; four reductions shared by both receivers.
ConditionalPair conditional_pair(ChannelParams params);

/// Every measure for both receivers at one parameter point.
InfoResult channel_report(const ChannelParams& params);

}  // namespace unruhchan
