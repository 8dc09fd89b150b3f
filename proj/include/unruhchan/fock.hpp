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

// Composite truncated Fock-space algebra.
//
// Basis states of a multimode system are addressed row-major: the first mode
// in a ModeLayout is the most significant digit. States are stored sparsely
// (only nonzero amplitudes are kept) because every channel state of interest
// occupies a thin slice of the composite space; reductions and spectra are
// computed without ever materializing the full composite density matrix.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace unruhchan {

using Complex = std::complex<double>;

class ModeLayout {
 public:
  ModeLayout() = default;
  ModeLayout(std::vector<std::size_t> dims, std::vector<std::string> labels);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t mode_count() const { return dims_.size(); }
  std::size_t total_dimension() const { return total_; }
  std::size_t dim(std::size_t position) const { return dims_.at(position); }
  std::size_t stride(std::size_t position) const { return strides_.at(position); }

  /// Position of `label`; throws UsageError for unknown labels.
  std::size_t position(std::string_view label) const;
  bool contains(std::string_view label) const;

  /// Layout made of the modes at `positions`, in the given order.
  ModeLayout select(std::span<const std::size_t> positions) const;

  /// Layouts compose by concatenation: `a.concat(b)` is a ⊗ b.
  ModeLayout concat(const ModeLayout& other) const;

  friend bool operator==(const ModeLayout&, const ModeLayout&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

std::size_t encode_index(std::span<const std::size_t> occupations,
                         const ModeLayout& layout);
std::vector<std::size_t> decode_index(std::size_t index,
                                      const ModeLayout& layout);

/// Amplitude vector over a ModeLayout. Entries are kept sorted by flat index
/// with exact zeros dropped.
class StateVector {
 public:
  struct Entry {
    std::size_t index;
    Complex amp;
  };

  StateVector() = default;
  explicit StateVector(ModeLayout layout);
  StateVector(ModeLayout layout, std::vector<Entry> entries);

  static StateVector basis(ModeLayout layout,
                           std::span<const std::size_t> occupations);
  static StateVector from_dense(ModeLayout layout,
                                std::span<const Complex> amps);

  const ModeLayout& layout() const { return layout_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }

  Complex amplitude(std::size_t index) const;
  Complex amplitude(std::span<const std::size_t> occupations) const;

  double squared_norm() const;
  StateVector normalized() const;
  std::vector<Complex> to_dense() const;

  StateVector& operator*=(Complex factor);
  StateVector& operator+=(const StateVector& other);
  friend StateVector operator*(Complex factor, StateVector state) {
    return state *= factor;
  }
  friend StateVector operator+(StateVector lhs, const StateVector& rhs) {
    return lhs += rhs;
  }

 private:
  ModeLayout layout_;
  std::vector<Entry> entries_;
};

Complex inner_product(const StateVector& bra, const StateVector& ket);

/// |a⟩ ⊗ |b⟩ over a.layout().concat(b.layout()).
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// Reorders modes; `order[k]` is the old position of the new k-th mode.
StateVector permute_modes(const StateVector& state,
                          std::span<const std::size_t> order);

/// Renames modes without touching amplitudes.
StateVector relabel(const StateVector& state, std::vector<std::string> labels);

struct LadderResult {
  StateVector state;
  /// Input weight Σ|ψ_top|² sitting on the top level of the mode, which a†
  /// pushes past the cutoff.
  double spill = 0.0;
  /// (n+1)·|ψ_top|²: the squared norm a† would have produced past the cutoff,
  /// so ‖a†ψ‖²(untruncated) = ‖result‖² + spilled_norm.
  double spilled_norm = 0.0;
};

LadderResult apply_creation(const StateVector& state, std::string_view mode);
StateVector apply_annihilation(const StateVector& state, std::string_view mode);

/// Hermitian matrix over the kept subsystems, stored sparsely.
class DensityMatrix {
 public:
  using Sparse = Eigen::SparseMatrix<Complex>;

  DensityMatrix(ModeLayout layout, Sparse elements);
  static DensityMatrix from_dense(ModeLayout layout,
                                  const Eigen::MatrixXcd& elements);

  const ModeLayout& layout() const { return layout_; }
  const Sparse& elements() const { return elements_; }
  std::size_t dimension() const { return layout_.total_dimension(); }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(elements_); }
  Complex trace() const;

  /// Largest elementwise |ρ_ij − conj(ρ_ji)|.
  double hermiticity_error() const;

 private:
  ModeLayout layout_;
  Sparse elements_;
};

/// Partial trace of |ψ⟩⟨ψ| onto the `keep` modes (kept in layout order).
DensityMatrix reduce_from_vector(const StateVector& state,
                                 std::span<const std::string> keep);

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kEigenvalueClamp = 1e-10;

/// Real spectrum of a density matrix in descending order, with eigenvalues
/// in [−1e-10, 0) clamped to zero. The matrix is split into the connected
/// components of its sparsity graph; large components with a narrow
/// Cuthill–McKee bandwidth go through a banded solver.
std::vector<double> hermitian_spectrum(const DensityMatrix& rho);

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // columns
};

/// Full dense eigendecomposition, for callers that need eigenvectors.
EigenSystem hermitian_eigensystem(const Eigen::MatrixXcd& matrix);

}  // namespace unruhchan
