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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "unruhchan/errors.hpp"
#include "unruhchan/fock.hpp"

namespace unruhchan {
namespace {

using Sparse = DensityMatrix::Sparse;

// Components smaller than this are always diagonalized densely.
constexpr std::size_t kDenseBlockLimit = 48;

struct Graph {
  std::vector<std::vector<std::size_t>> adjacency;
  std::vector<Complex> diagonal;
};

Graph sparsity_graph(const Sparse& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  Graph g{std::vector<std::vector<std::size_t>>(n), std::vector<Complex>(n)};
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    for (Sparse::InnerIterator it(m, col); it; ++it) {
      const auto i = static_cast<std::size_t>(it.row());
      const auto j = static_cast<std::size_t>(col);
      if (i == j) {
        g.diagonal[i] = it.value();
      } else if (it.value() != Complex{}) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
      }
    }
  }
  for (auto& adj : g.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return g;
}

// Cuthill–McKee ordering of one connected component, seeded at its
// lowest-degree vertex. Returns vertices in band order.
std::vector<std::size_t> cuthill_mckee(const Graph& g,
                                       std::vector<std::size_t> component) {
  auto degree = [&](std::size_t v) { return g.adjacency[v].size(); };
  auto seed = *std::min_element(
      component.begin(), component.end(),
      [&](auto a, auto b) { return std::pair(degree(a), a) < std::pair(degree(b), b); });
  std::vector<std::size_t> order;
  order.reserve(component.size());
  std::vector<char> seen(g.adjacency.size(), 0);
  std::queue<std::size_t> frontier;
  frontier.push(seed);
  seen[seed] = 1;
  std::vector<std::size_t> next;
  while (!frontier.empty()) {
    auto v = frontier.front();
    frontier.pop();
    order.push_back(v);
    next.clear();
    for (auto w : g.adjacency[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        next.push_back(w);
      }
    }
    std::sort(next.begin(), next.end(), [&](auto a, auto b) {
      return std::pair(degree(a), a) < std::pair(degree(b), b);
    });
    for (auto w : next) frontier.push(w);
  }
  return order;
}

std::vector<std::vector<std::size_t>> components(const Graph& g) {
  const auto n = g.adjacency.size();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    out.emplace_back();
    stack.push_back(s);
    seen[s] = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (auto w : g.adjacency[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return out;
}

struct Block {
  std::vector<std::size_t> order;     // global indices in band order
  std::vector<std::size_t> local;     // global index -> band position
  std::size_t bandwidth = 0;
  bool real = true;
};

template <typename Scalar>
std::vector<double> dense_eigenvalues(const Sparse& m, const Block& b,
                                      const std::vector<std::size_t>& local) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const auto size = static_cast<Eigen::Index>(b.order.size());
  Matrix dense = Matrix::Zero(size, size);
  for (std::size_t p = 0; p < b.order.size(); ++p) {
    const auto col = static_cast<Eigen::Index>(b.order[p]);
    for (Sparse::InnerIterator it(m, col); it; ++it) {
      // Stored zeros may point outside this component.
      if (it.value() == Complex{}) continue;
      const auto row = local[static_cast<std::size_t>(it.row())];
      if constexpr (std::is_same_v<Scalar, double>) {
        dense(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(p)) =
            it.value().real();
      } else {
        dense(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(p)) =
            it.value();
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(dense, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("dense Hermitian eigensolver did not converge");
  }
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

template <typename Scalar>
std::vector<double> banded_eigenvalues(const Sparse& m, const Block& b,
                                       const std::vector<std::size_t>& local) {
  const auto n = static_cast<lapack_int>(b.order.size());
  const auto kd = static_cast<lapack_int>(b.bandwidth);
  const auto ldab = kd + 1;
  // Upper band storage: ab(kd + i - j, j) = A(i, j) for j - kd <= i <= j.
  std::vector<Scalar> ab(static_cast<std::size_t>(ldab) * n, Scalar{});
  for (std::size_t p = 0; p < b.order.size(); ++p) {
    const auto col = static_cast<Eigen::Index>(b.order[p]);
    for (Sparse::InnerIterator it(m, col); it; ++it) {
      // Stored zeros may point outside this component.
      if (it.value() == Complex{}) continue;
      const auto row = local[static_cast<std::size_t>(it.row())];
      if (row > p) continue;
      const auto slot = static_cast<std::size_t>(kd) + row - p +
                        p * static_cast<std::size_t>(ldab);
      if constexpr (std::is_same_v<Scalar, double>) {
        ab[slot] = it.value().real();
      } else {
        ab[slot] = it.value();
      }
    }
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  lapack_int info;
  if constexpr (std::is_same_v<Scalar, double>) {
    info = LAPACKE_dsbev(LAPACK_COL_MAJOR, 'N', 'U', n, kd, ab.data(), ldab,
                         w.data(), nullptr, 1);
  } else {
    info = LAPACKE_zhbev(LAPACK_COL_MAJOR, 'N', 'U', n, kd, ab.data(), ldab,
                         w.data(), nullptr, 1);
  }
  if (info != 0) {
    throw NumericError("banded Hermitian eigensolver failed, info = " +
                       std::to_string(info));
  }
  return w;
}

}  // namespace

std::vector<double> hermitian_spectrum(const DensityMatrix& rho) {
  const auto& m = rho.elements();
  const double herm = rho.hermiticity_error();
  if (herm > kHermitianTolerance) {
    throw NumericError("matrix is not Hermitian: elementwise deviation " +
                       std::to_string(herm));
  }
  const auto graph = sparsity_graph(m);
  std::vector<std::size_t> local(graph.adjacency.size(), 0);
  std::vector<double> spectrum;
  spectrum.reserve(graph.adjacency.size());

  for (auto& comp : components(graph)) {
    if (comp.size() == 1) {
      spectrum.push_back(graph.diagonal[comp.front()].real());
      continue;
    }
    Block block;
    block.order = cuthill_mckee(graph, std::move(comp));
    for (std::size_t p = 0; p < block.order.size(); ++p) local[block.order[p]] = p;
    for (std::size_t p = 0; p < block.order.size(); ++p) {
      const auto v = block.order[p];
      if (graph.diagonal[v].imag() != 0.0) block.real = false;
      for (auto w : graph.adjacency[v]) {
        const auto q = local[w];
        block.bandwidth = std::max(block.bandwidth, q > p ? q - p : p - q);
      }
      for (Sparse::InnerIterator it(m, static_cast<Eigen::Index>(v)); it; ++it) {
        if (it.value().imag() != 0.0) block.real = false;
      }
    }
    const bool banded = block.order.size() > kDenseBlockLimit &&
                        3 * block.bandwidth < block.order.size();
    std::vector<double> values;
    if (banded) {
      values = block.real ? banded_eigenvalues<double>(m, block, local)
                          : banded_eigenvalues<Complex>(m, block, local);
    } else {
      values = block.real ? dense_eigenvalues<double>(m, block, local)
                          : dense_eigenvalues<Complex>(m, block, local);
    }
    spectrum.insert(spectrum.end(), values.begin(), values.end());
  }

  const double trace = rho.trace().real();
  const double sum = std::accumulate(spectrum.begin(), spectrum.end(), 0.0);
  if (std::abs(sum - trace) > kEigenvalueClamp * std::max(1.0, std::abs(trace))) {
    throw NumericError("eigenvalue sum drifted from the trace by " +
                       std::to_string(sum - trace));
  }
  for (auto& v : spectrum) {
    if (v < -kEigenvalueClamp) {
      throw NumericError("negative eigenvalue " + std::to_string(v) +
                         " below clamp threshold");
    }
    if (v < 0.0) v = 0.0;
  }
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  return spectrum;
}

EigenSystem hermitian_eigensystem(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw UsageError("hermitian_eigensystem: matrix is not square");
  }
  if (matrix.size() == 0) return {};
  const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTolerance) {
    throw NumericError("matrix is not Hermitian: elementwise deviation " +
                       std::to_string(herm));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace unruhchan
