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

// Channel inputs in the Rindler basis.
//
// Each Unruh mode of frequency ω is carried by a pair of Rindler modes: one
// in region I (Rob) and one in region II (anti-Rob). The Unruh vacuum is the
// two-mode squeezed state (1/cosh r) Σ tanhⁿr |n⟩_I|n⟩_II, and a one-particle
// Unruh excitation C†|0⟩ with C = q_L C_L + q_R C_R is a superposition of a
// branch with one extra quantum in region I and a mirror branch with one
// extra quantum in region II.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "unruhchan/fock.hpp"

namespace unruhchan {

enum class Rail { single, dual };
enum class ChannelKind { classical, quantum };

std::string to_string(Rail rail);
std::string to_string(ChannelKind kind);

inline constexpr std::size_t kMinCutoff = 2;
inline constexpr std::size_t kDefaultCutoffCap = 64;
inline constexpr double kDefaultTolerance = 1e-8;

/// r = artanh(exp(−π c ω / a)). Throws DomainError unless a, ω, c > 0.
double squeezing_parameter(double acceleration, double omega, double c = 1.0);

struct RindlerParams {
  double r = 0.0;

  static RindlerParams from_acceleration(double acceleration, double omega,
                                         double c = 1.0) {
    return {squeezing_parameter(acceleration, omega, c)};
  }
};

/// Weights of the Unruh mode on its region-I (q_R) and region-II (q_L)
/// Bogoliubov components. Channel parameters restrict q_R to [1/√2, 1];
/// swapped() produces the mirrored mode used to reach the other half of the
/// range.
struct UnruhWeights {
  double qR = 1.0;
  double qL = 0.0;

  /// Validated constructor for q_R ∈ [1/√2, 1].
  static UnruhWeights from_qr(double qR);
  /// Any q_R ∈ [0, 1]; q_L = √(1 − q_R²).
  static UnruhWeights unrestricted(double qR);

  UnruhWeights swapped() const { return {qL, qR}; }
  bool is_sma() const { return qL == 0.0; }
};

struct ChannelParams {
  RindlerParams rindler;
  UnruhWeights weights;
  double alpha2 = 0.5;
  Rail rail = Rail::single;
  ChannelKind kind = ChannelKind::quantum;
  /// Fock cutoff N per Rindler mode; empty selects auto_cutoff.
  std::optional<std::size_t> cutoff;
  /// Largest N auto_cutoff may pick; empty reads UNRUHCHAN_NMAX_CAP (default 64).
  std::optional<std::size_t> cutoff_cap;
  double tol = kDefaultTolerance;

  /// Throws UsageError on out-of-range fields.
  void validate() const;
  std::size_t resolve_cutoff() const;
};

/// Cap from UNRUHCHAN_NMAX_CAP, or 64 when unset.
std::size_t cutoff_cap_from_env();

/// Probability lost by truncating the squeezed vacuum at N: tanh^{2(N+1)} r.
double vacuum_tail(double r, std::size_t cutoff);
/// Probability lost by truncating a one-particle branch at N:
/// (1 − t²)² Σ_{n ≥ N} (n + 1) t^{2n} with t = tanh r.
double excitation_tail(double r, std::size_t cutoff);

/// Smallest N ≥ 2 with both tails below tol / 4. Throws TruncationError when
/// that N exceeds `cap`.
std::size_t auto_cutoff(double r, double tol, Rail rail,
                        std::size_t cap = cutoff_cap_from_env());

/// A truncated state before renormalization; ‖state‖² = 1 − deficit.
struct TruncatedState {
  StateVector state;
  double deficit = 0.0;
  std::size_t cutoff = 0;
};

struct ModePair {
  std::string region_one = "I";
  std::string region_two = "II";
};

TruncatedState unruh_vacuum(double r, std::size_t cutoff, double tol,
                            const ModePair& modes = {});
TruncatedState unruh_excitation(double r, const UnruhWeights& weights,
                                std::size_t cutoff, double tol,
                                const ModePair& modes = {});

/// Labels of the Rindler modes in build order, e.g. {I, II} or
/// {I+, II+, I-, II-}.
std::vector<std::string> rindler_labels(Rail rail);
inline constexpr const char* kAliceLabel = "A";

/// Globally pure channel state over (A, Rindler modes), renormalized; the
/// pre-normalization deficit is carried alongside.
struct QuantumState {
  StateVector state;
  double deficit = 0.0;
  std::size_t cutoff = 0;
};

QuantumState build_quantum_state(const ChannelParams& params);

struct EnsembleBranch {
  double probability = 0.0;
  StateVector state;  // renormalized, over the Rindler modes only
  std::string symbol;
  double deficit = 0.0;
};

struct ClassicalEnsemble {
  std::vector<EnsembleBranch> branches;
  /// Largest branch deficit.
  double deficit = 0.0;
  std::size_t cutoff = 0;
};

ClassicalEnsemble build_classical_ensemble(const ChannelParams& params);

}  // namespace unruhchan
