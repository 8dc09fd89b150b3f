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

#include "unruhchan/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "unruhchan/errors.hpp"

namespace unruhchan {

ModeLayout::ModeLayout(std::vector<std::size_t> dims,
                       std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.size() != labels_.size()) {
    throw UsageError("mode layout: dims and labels differ in length");
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : labels_) {
    if (!seen.insert(label).second) {
      throw UsageError("mode layout: duplicate label '" + label + "'");
    }
  }
  strides_.assign(dims_.size(), 1);
  total_ = 1;
  for (std::size_t k = dims_.size(); k-- > 0;) {
    if (dims_[k] == 0) {
      throw UsageError("mode layout: mode '" + labels_[k] + "' has dim 0");
    }
    strides_[k] = total_;
    if (total_ > std::numeric_limits<std::size_t>::max() / dims_[k]) {
      throw UsageError("mode layout: total dimension overflows");
    }
    total_ *= dims_[k];
  }
}

std::size_t ModeLayout::position(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw UsageError("unknown mode '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

bool ModeLayout::contains(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

ModeLayout ModeLayout::select(std::span<const std::size_t> positions) const {
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  for (auto p : positions) {
    dims.push_back(dims_.at(p));
    labels.push_back(labels_.at(p));
  }
  return {std::move(dims), std::move(labels)};
}

ModeLayout ModeLayout::concat(const ModeLayout& other) const {
  auto dims = dims_;
  auto labels = labels_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  return {std::move(dims), std::move(labels)};
}

std::size_t encode_index(std::span<const std::size_t> occupations,
                         const ModeLayout& layout) {
  if (occupations.size() != layout.mode_count()) {
    throw IndexError("encode_index: expected " +
                     std::to_string(layout.mode_count()) + " occupations");
  }
  std::size_t index = 0;
  for (std::size_t k = 0; k < occupations.size(); ++k) {
    if (occupations[k] >= layout.dim(k)) {
      throw IndexError("encode_index: occupation " +
                       std::to_string(occupations[k]) + " of mode '" +
                       layout.labels()[k] + "' exceeds cutoff");
    }
    index += occupations[k] * layout.stride(k);
  }
  return index;
}

std::vector<std::size_t> decode_index(std::size_t index,
                                      const ModeLayout& layout) {
  if (index >= layout.total_dimension()) {
    throw IndexError("decode_index: index " + std::to_string(index) +
                     " out of range");
  }
  std::vector<std::size_t> occ(layout.mode_count());
  for (std::size_t k = 0; k < occ.size(); ++k) {
    occ[k] = index / layout.stride(k);
    index %= layout.stride(k);
  }
  return occ;
}

namespace {

void canonicalize(std::vector<StateVector::Entry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.index < b.index; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size();) {
    auto acc = entries[i];
    std::size_t j = i + 1;
    for (; j < entries.size() && entries[j].index == acc.index; ++j) {
      acc.amp += entries[j].amp;
    }
    if (acc.amp != Complex{}) entries[out++] = acc;
    i = j;
  }
  entries.resize(out);
}

}  // namespace

StateVector::StateVector(ModeLayout layout) : layout_(std::move(layout)) {}

StateVector::StateVector(ModeLayout layout, std::vector<Entry> entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.index >= layout_.total_dimension()) {
      throw IndexError("state vector: index " + std::to_string(e.index) +
                       " out of range");
    }
  }
  canonicalize(entries_);
}

StateVector StateVector::basis(ModeLayout layout,
                               std::span<const std::size_t> occupations) {
  auto index = encode_index(occupations, layout);
  return StateVector(std::move(layout), {{index, Complex{1.0, 0.0}}});
}

StateVector StateVector::from_dense(ModeLayout layout,
                                    std::span<const Complex> amps) {
  if (amps.size() != layout.total_dimension()) {
    throw UsageError("from_dense: amplitude count does not match layout");
  }
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (amps[i] != Complex{}) entries.push_back({i, amps[i]});
  }
  return StateVector(std::move(layout), std::move(entries));
}

Complex StateVector::amplitude(std::size_t index) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const Entry& e, std::size_t i) { return e.index < i; });
  return (it != entries_.end() && it->index == index) ? it->amp : Complex{};
}

Complex StateVector::amplitude(std::span<const std::size_t> occupations) const {
  return amplitude(encode_index(occupations, layout_));
}

double StateVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += std::norm(e.amp);
  return sum;
}

StateVector StateVector::normalized() const {
  double norm2 = squared_norm();
  if (!(norm2 > 0.0)) throw NumericError("cannot normalize a zero vector");
  StateVector out = *this;
  out *= Complex{1.0 / std::sqrt(norm2), 0.0};
  return out;
}

std::vector<Complex> StateVector::to_dense() const {
  std::vector<Complex> dense(layout_.total_dimension());
  for (const auto& e : entries_) dense[e.index] = e.amp;
  return dense;
}

StateVector& StateVector::operator*=(Complex factor) {
  if (factor == Complex{}) {
    entries_.clear();
    return *this;
  }
  for (auto& e : entries_) e.amp *= factor;
  return *this;
}

StateVector& StateVector::operator+=(const StateVector& other) {
  if (!(layout_ == other.layout_)) {
    throw UsageError("cannot add states over different layouts");
  }
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  canonicalize(entries_);
  return *this;
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
  if (!(bra.layout() == ket.layout())) {
    throw UsageError("inner product of states over different layouts");
  }
  Complex sum{};
  auto a = bra.entries();
  auto b = ket.entries();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].index < b[j].index) {
      ++i;
    } else if (b[j].index < a[i].index) {
      ++j;
    } else {
      sum += std::conj(a[i].amp) * b[j].amp;
      ++i;
      ++j;
    }
  }
  return sum;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  auto layout = a.layout().concat(b.layout());
  const std::size_t scale = b.layout().total_dimension();
  std::vector<StateVector::Entry> entries;
  entries.reserve(a.nonzeros() * b.nonzeros());
  for (const auto& x : a.entries()) {
    for (const auto& y : b.entries()) {
      entries.push_back({x.index * scale + y.index, x.amp * y.amp});
    }
  }
  return StateVector(std::move(layout), std::move(entries));
}

StateVector permute_modes(const StateVector& state,
                          std::span<const std::size_t> order) {
  const auto& old = state.layout();
  if (order.size() != old.mode_count()) {
    throw UsageError("permute_modes: order must name every mode once");
  }
  std::vector<bool> used(order.size(), false);
  for (auto p : order) {
    if (p >= order.size() || used[p]) {
      throw UsageError("permute_modes: order is not a permutation");
    }
    used[p] = true;
  }
  auto layout = old.select(order);
  std::vector<StateVector::Entry> entries;
  entries.reserve(state.nonzeros());
  for (const auto& e : state.entries()) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      std::size_t occ = (e.index / old.stride(order[k])) % old.dim(order[k]);
      index += occ * layout.stride(k);
    }
    entries.push_back({index, e.amp});
  }
  return StateVector(std::move(layout), std::move(entries));
}

StateVector relabel(const StateVector& state, std::vector<std::string> labels) {
  ModeLayout layout(state.layout().dims(), std::move(labels));
  std::vector<StateVector::Entry> entries(state.entries().begin(),
                                          state.entries().end());
  return StateVector(std::move(layout), std::move(entries));
}

LadderResult apply_creation(const StateVector& state, std::string_view mode) {
  const auto& layout = state.layout();
  const auto pos = layout.position(mode);
  const auto stride = layout.stride(pos);
  const auto dim = layout.dim(pos);
  LadderResult result{StateVector(layout), 0.0};
  std::vector<StateVector::Entry> entries;
  entries.reserve(state.nonzeros());
  for (const auto& e : state.entries()) {
    const std::size_t n = (e.index / stride) % dim;
    if (n + 1 >= dim) {
      result.spill += std::norm(e.amp);
      result.spilled_norm += std::norm(e.amp) * static_cast<double>(n + 1);
      continue;
    }
    entries.push_back(
        {e.index + stride, e.amp * std::sqrt(static_cast<double>(n + 1))});
  }
  result.state = StateVector(layout, std::move(entries));
  return result;
}

StateVector apply_annihilation(const StateVector& state, std::string_view mode) {
  const auto& layout = state.layout();
  const auto pos = layout.position(mode);
  const auto stride = layout.stride(pos);
  const auto dim = layout.dim(pos);
  std::vector<StateVector::Entry> entries;
  entries.reserve(state.nonzeros());
  for (const auto& e : state.entries()) {
    const std::size_t n = (e.index / stride) % dim;
    if (n == 0) continue;
    entries.push_back(
        {e.index - stride, e.amp * std::sqrt(static_cast<double>(n))});
  }
  return StateVector(layout, std::move(entries));
}

DensityMatrix::DensityMatrix(ModeLayout layout, Sparse elements)
    : layout_(std::move(layout)), elements_(std::move(elements)) {
  const auto n = static_cast<Eigen::Index>(layout_.total_dimension());
  if (elements_.rows() != n || elements_.cols() != n) {
    throw UsageError("density matrix: shape does not match layout");
  }
  elements_.makeCompressed();
}

DensityMatrix DensityMatrix::from_dense(ModeLayout layout,
                                        const Eigen::MatrixXcd& elements) {
  return DensityMatrix(std::move(layout), elements.sparseView());
}

Complex DensityMatrix::trace() const {
  Complex sum{};
  for (Eigen::Index k = 0; k < elements_.outerSize(); ++k) {
    sum += elements_.coeff(k, k);
  }
  return sum;
}

double DensityMatrix::hermiticity_error() const {
  Sparse diff = elements_ - Sparse(elements_.adjoint());
  double worst = 0.0;
  for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
    for (Sparse::InnerIterator it(diff, k); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

DensityMatrix reduce_from_vector(const StateVector& state,
                                 std::span<const std::string> keep) {
  if (keep.empty()) throw UsageError("reduce_from_vector: empty keep-set");
  const auto& layout = state.layout();
  std::vector<bool> kept(layout.mode_count(), false);
  for (const auto& label : keep) {
    auto p = layout.position(label);
    if (kept[p]) throw UsageError("reduce_from_vector: '" + label + "' twice");
    kept[p] = true;
  }
  std::vector<std::size_t> keep_pos, trace_pos;
  for (std::size_t k = 0; k < layout.mode_count(); ++k) {
    (kept[k] ? keep_pos : trace_pos).push_back(k);
  }
  auto keep_layout = layout.select(keep_pos);
  auto trace_layout = layout.select(trace_pos);

  struct Split {
    std::size_t traced;
    std::size_t kept;
    Complex amp;
  };
  std::vector<Split> split;
  split.reserve(state.nonzeros());
  for (const auto& e : state.entries()) {
    std::size_t ki = 0, ti = 0;
    for (std::size_t k = 0; k < keep_pos.size(); ++k) {
      auto p = keep_pos[k];
      ki += ((e.index / layout.stride(p)) % layout.dim(p)) * keep_layout.stride(k);
    }
    for (std::size_t k = 0; k < trace_pos.size(); ++k) {
      auto p = trace_pos[k];
      ti += ((e.index / layout.stride(p)) % layout.dim(p)) * trace_layout.stride(k);
    }
    split.push_back({ti, ki, e.amp});
  }
  std::stable_sort(split.begin(), split.end(), [](const auto& a, const auto& b) {
    return a.traced < b.traced;
  });

  // ρ(k, k') = Σ_t ψ(k, t) conj(ψ(k', t)), accumulated one traced index at a
  // time so only nonzero products are ever formed.
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::size_t i = 0; i < split.size();) {
    std::size_t j = i;
    while (j < split.size() && split[j].traced == split[i].traced) ++j;
    for (std::size_t a = i; a < j; ++a) {
      for (std::size_t b = i; b < j; ++b) {
        triplets.emplace_back(static_cast<int>(split[a].kept),
                              static_cast<int>(split[b].kept),
                              split[a].amp * std::conj(split[b].amp));
      }
    }
    i = j;
  }
  const auto n = static_cast<Eigen::Index>(keep_layout.total_dimension());
  DensityMatrix::Sparse rho(n, n);
  rho.setFromTriplets(triplets.begin(), triplets.end());
  return DensityMatrix(std::move(keep_layout), std::move(rho));
}

}  // namespace unruhchan
