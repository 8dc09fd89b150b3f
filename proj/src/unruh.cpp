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

#include "unruhchan/unruh.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "unruhchan/errors.hpp"

namespace unruhchan {

std::string to_string(Rail rail) {
  return rail == Rail::single ? "single" : "dual";
}

std::string to_string(ChannelKind kind) {
  return kind == ChannelKind::classical ? "classical" : "quantum";
}

double squeezing_parameter(double acceleration, double omega, double c) {
  if (!(acceleration > 0.0) || !(omega > 0.0) || !(c > 0.0)) {
    throw DomainError("squeezing_parameter: a, omega and c must be positive");
  }
  const double y = M_PI * c * omega / acceleration;
  // artanh(e^{-y}) = ½ ln((1 + e^{-y}) / (1 − e^{-y})), with 1 − e^{-y}
  // taken from expm1 so that y → 0 keeps its precision.
  const double e = std::exp(-y);
  const double r = 0.5 * std::log((1.0 + e) / -std::expm1(-y));
  if (!std::isfinite(r)) {
    throw DomainError("squeezing_parameter: r is not finite for these inputs");
  }
  return r;
}

UnruhWeights UnruhWeights::from_qr(double qR) {
  if (!(qR >= M_SQRT1_2 && qR <= 1.0)) {
    std::ostringstream msg;
    msg << "qr must lie in [0.7071, 1], got " << qR;
    throw UsageError(msg.str());
  }
  return unrestricted(qR);
}

UnruhWeights UnruhWeights::unrestricted(double qR) {
  if (!(qR >= 0.0 && qR <= 1.0)) {
    throw UsageError("unruh weight q_R must lie in [0, 1]");
  }
  return {qR, qR == 1.0 ? 0.0 : std::sqrt(1.0 - qR * qR)};
}

namespace {

void check_physical(const ChannelParams& p) {
  if (!(p.rindler.r >= 0.0) || !std::isfinite(p.rindler.r)) {
    throw UsageError("r must be finite and nonnegative");
  }
  const auto& w = p.weights;
  if (!(w.qR >= 0.0 && w.qL >= 0.0) ||
      std::abs(w.qR * w.qR + w.qL * w.qL - 1.0) > 1e-12) {
    throw UsageError("unruh weights must satisfy qR² + qL² = 1");
  }
  if (!(p.alpha2 >= 0.0 && p.alpha2 <= 1.0)) {
    throw UsageError("alpha2 must lie in [0, 1]");
  }
  if (p.cutoff && *p.cutoff < kMinCutoff) {
    throw UsageError("cutoff N must be at least 2");
  }
  if (!(p.tol > 0.0)) throw UsageError("tol must be positive");
}

double checked_deficit(double deficit, double tol, double r, std::size_t n) {
  if (deficit > tol) {
    std::ostringstream msg;
    msg << "truncation deficit " << deficit << " exceeds tol " << tol
        << " at r = " << r << " with N = " << n << "; increase N";
    throw TruncationError(msg.str());
  }
  return deficit;
}

}  // namespace

void ChannelParams::validate() const {
  check_physical(*this);
  if (weights.qR + 1e-12 < weights.qL) {
    throw UsageError("qr must lie in [0.7071, 1]");
  }
}

std::size_t ChannelParams::resolve_cutoff() const {
  if (cutoff) return *cutoff;
  return auto_cutoff(rindler.r, tol, rail, cutoff_cap.value_or(cutoff_cap_from_env()));
}

std::size_t cutoff_cap_from_env() {
  const char* raw = std::getenv("UNRUHCHAN_NMAX_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultCutoffCap;
  char* end = nullptr;
  const long long value = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || value < static_cast<long long>(kMinCutoff)) {
    throw UsageError(std::string("UNRUHCHAN_NMAX_CAP must be an integer >= 2, got '") +
                     raw + "'");
  }
  return static_cast<std::size_t>(value);
}

namespace {

// log tanh² r, or −∞ at r = 0.
double log_tanh2(double r) {
  if (r == 0.0) return -INFINITY;
  return 2.0 * std::log(std::tanh(r));
}

}  // namespace

double vacuum_tail(double r, std::size_t cutoff) {
  if (r == 0.0) return 0.0;
  return std::exp(static_cast<double>(cutoff + 1) * log_tanh2(r));
}

double excitation_tail(double r, std::size_t cutoff) {
  if (r == 0.0) return 0.0;
  // (1 − x)² Σ_{n≥N} (n+1) xⁿ = x^N (N + 1 − N x), x = tanh² r.
  const double n = static_cast<double>(cutoff);
  const double one_minus_x = 1.0 / (std::cosh(r) * std::cosh(r));
  return std::exp(n * log_tanh2(r)) * (1.0 + n * one_minus_x);
}

std::size_t auto_cutoff(double r, double tol, [[maybe_unused]] Rail rail,
                        std::size_t cap) {
  // Both rails use the same per-tail budget: a dual-rail state carries one
  // vacuum and one excitation factor, whose deficits add to at most tol / 2.
  if (!(tol > 0.0)) throw UsageError("auto_cutoff: tol must be positive");
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw UsageError("auto_cutoff: r must be finite and nonnegative");
  }
  const double budget = tol / 4.0;
  for (std::size_t n = kMinCutoff; n <= cap; ++n) {
    if (vacuum_tail(r, n) < budget && excitation_tail(r, n) < budget) return n;
  }
  std::ostringstream msg;
  msg << "auto cutoff for r = " << r << ", tol = " << tol << " needs N > " << cap
      << " (raise UNRUHCHAN_NMAX_CAP or loosen --tol)";
  throw TruncationError(msg.str());
}

TruncatedState unruh_vacuum(double r, std::size_t cutoff, double tol,
                            const ModePair& modes) {
  if (cutoff < kMinCutoff) throw UsageError("unruh_vacuum: N must be >= 2");
  if (!(r >= 0.0)) throw UsageError("unruh_vacuum: r must be nonnegative");
  const std::size_t d = cutoff + 1;
  ModeLayout layout({d, d}, {modes.region_one, modes.region_two});
  const double log_t = r == 0.0 ? -INFINITY : std::log(std::tanh(r));
  const double log_cosh = std::log(std::cosh(r));
  std::vector<StateVector::Entry> entries;
  entries.reserve(d);
  for (std::size_t n = 0; n <= cutoff; ++n) {
    const double amp = n == 0 ? 1.0 / std::cosh(r)
                              : std::exp(static_cast<double>(n) * log_t - log_cosh);
    entries.push_back({n * d + n, Complex{amp, 0.0}});
  }
  const double deficit = checked_deficit(vacuum_tail(r, cutoff), tol, r, cutoff);
  return {StateVector(std::move(layout), std::move(entries)), deficit, cutoff};
}

TruncatedState unruh_excitation(double r, const UnruhWeights& weights,
                                std::size_t cutoff, double tol,
                                const ModePair& modes) {
  if (cutoff < kMinCutoff) throw UsageError("unruh_excitation: N must be >= 2");
  if (!(r >= 0.0)) throw UsageError("unruh_excitation: r must be nonnegative");
  const std::size_t d = cutoff + 1;
  ModeLayout layout({d, d}, {modes.region_one, modes.region_two});
  const double log_t = r == 0.0 ? -INFINITY : std::log(std::tanh(r));
  const double log_cosh2 = 2.0 * std::log(std::cosh(r));
  std::vector<StateVector::Entry> entries;
  entries.reserve(2 * cutoff);
  for (std::size_t n = 0; n < cutoff; ++n) {
    // C†_R|0_U⟩ = cosh⁻²r Σ √(n+1) tanhⁿr |n+1⟩_I|n⟩_II; C†_L mirrors I ↔ II.
    const double amp =
        std::sqrt(static_cast<double>(n + 1)) *
        (n == 0 ? std::exp(-log_cosh2)
                : std::exp(static_cast<double>(n) * log_t - log_cosh2));
    if (weights.qR != 0.0) {
      entries.push_back({(n + 1) * d + n, Complex{weights.qR * amp, 0.0}});
    }
    if (weights.qL != 0.0) {
      entries.push_back({n * d + (n + 1), Complex{weights.qL * amp, 0.0}});
    }
  }
  const double deficit = checked_deficit(excitation_tail(r, cutoff), tol, r, cutoff);
  return {StateVector(std::move(layout), std::move(entries)), deficit, cutoff};
}

std::vector<std::string> rindler_labels(Rail rail) {
  if (rail == Rail::single) return {"I", "II"};
  return {"I+", "II+", "I-", "II-"};
}

namespace {

const ModePair kPlusPair{"I+", "II+"};
const ModePair kMinusPair{"I-", "II-"};

StateVector alice(std::size_t bit) {
  const std::size_t occ[] = {bit};
  return StateVector::basis(ModeLayout({2}, {kAliceLabel}), occ);
}

// Logical codewords of the chosen rail as raw (unnormalized) states.
struct Codewords {
  StateVector zero;
  StateVector one;
  double zero_norm2;
  double one_norm2;
};

Codewords codewords(const ChannelParams& p, std::size_t n) {
  const double r = p.rindler.r;
  if (p.rail == Rail::single) {
    auto vac = unruh_vacuum(r, n, p.tol);
    auto exc = unruh_excitation(r, p.weights, n, p.tol);
    return {std::move(vac.state), std::move(exc.state), 1.0 - vac.deficit,
            1.0 - exc.deficit};
  }
  auto vac_plus = unruh_vacuum(r, n, p.tol, kPlusPair);
  auto exc_plus = unruh_excitation(r, p.weights, n, p.tol, kPlusPair);
  auto vac_minus = unruh_vacuum(r, n, p.tol, kMinusPair);
  auto exc_minus = unruh_excitation(r, p.weights, n, p.tol, kMinusPair);
  const double norm2 = (1.0 - exc_plus.deficit) * (1.0 - vac_minus.deficit);
  return {tensor_product(exc_plus.state, vac_minus.state),
          tensor_product(vac_plus.state, exc_minus.state), norm2, norm2};
}

}  // namespace

QuantumState build_quantum_state(const ChannelParams& params) {
  if (params.kind != ChannelKind::quantum) {
    throw UsageError("build_quantum_state needs kind = quantum");
  }
  check_physical(params);
  const std::size_t n = params.resolve_cutoff();
  auto words = codewords(params, n);
  const double a = std::sqrt(params.alpha2);
  const double b = std::sqrt(1.0 - params.alpha2);
  StateVector raw = Complex{a, 0.0} * tensor_product(alice(0), words.zero);
  raw += Complex{b, 0.0} * tensor_product(alice(1), words.one);
  const double deficit = checked_deficit(
      1.0 - (params.alpha2 * words.zero_norm2 + (1.0 - params.alpha2) * words.one_norm2),
      params.tol, params.rindler.r, n);
  return {raw.normalized(), std::max(deficit, 0.0), n};
}

ClassicalEnsemble build_classical_ensemble(const ChannelParams& params) {
  if (params.kind != ChannelKind::classical) {
    throw UsageError("build_classical_ensemble needs kind = classical");
  }
  check_physical(params);
  const std::size_t n = params.resolve_cutoff();
  auto words = codewords(params, n);
  ClassicalEnsemble ensemble;
  ensemble.cutoff = n;
  const double d0 = checked_deficit(1.0 - words.zero_norm2, params.tol, params.rindler.r, n);
  const double d1 = checked_deficit(1.0 - words.one_norm2, params.tol, params.rindler.r, n);
  ensemble.branches.push_back({params.alpha2, words.zero.normalized(), "0", std::max(d0, 0.0)});
  ensemble.branches.push_back({1.0 - params.alpha2, words.one.normalized(), "1", std::max(d1, 0.0)});
  ensemble.deficit = std::max({d0, d1, 0.0});
  return ensemble;
}

}  // namespace unruhchan
