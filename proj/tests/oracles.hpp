// Test-only oracles: independent computation routes for cross-checking the
// library. Everything here recomputes from first principles (full density
// matrices, closed-form tangles, set-partition enumeration) and must stay
// independent of the implementation paths it checks.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <vector>

#include "genent/state.hpp"

namespace oracles {

using genent::cplx;
using genent::PureState;

// Full 2^n x 2^n density matrix |psi><psi|.
inline Eigen::MatrixXcd full_density(const PureState& psi) {
  const Eigen::Index dim = static_cast<Eigen::Index>(psi.dim());
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = psi[static_cast<std::size_t>(i)];
  return v * v.adjoint();
}

// Partial trace of one qubit (1-based label, qubit 1 = most significant bit)
// from a density matrix over n qubits.
inline Eigen::MatrixXcd trace_out_qubit(const Eigen::MatrixXcd& rho, int n, int qubit) {
  const int p = n - qubit;  // index-bit position
  const Eigen::Index half = rho.rows() / 2;
  auto insert_bit = [&](Eigen::Index x, Eigen::Index b) {
    const Eigen::Index low = x & ((Eigen::Index{1} << p) - 1);
    const Eigen::Index high = x >> p;
    return (high << (p + 1)) | (b << p) | low;
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(half, half);
  for (Eigen::Index i = 0; i < half; ++i)
    for (Eigen::Index j = 0; j < half; ++j)
      for (Eigen::Index b = 0; b < 2; ++b)
        out(i, j) += rho(insert_bit(i, b), insert_bit(j, b));
  return out;
}

// Reduced density matrix over a subset mask, by tracing out the complement
// one qubit at a time from the full density matrix.
inline Eigen::MatrixXcd reduced_density_naive(const PureState& psi, std::uint32_t mask) {
  Eigen::MatrixXcd rho = full_density(psi);
  int n = psi.n_qubits();
  // Trace from the highest label down so remaining labels keep their order.
  for (int q = psi.n_qubits(); q >= 1; --q) {
    if ((mask >> (q - 1)) & 1u) continue;
    rho = trace_out_qubit(rho, n, q);
    --n;
  }
  return rho;
}

inline double purity_naive(const PureState& psi, std::uint32_t mask) {
  const Eigen::MatrixXcd rho = reduced_density_naive(psi, mask);
  return (rho * rho).trace().real();
}

// Three-qubit tangle from the degree-4 polynomial invariant (the
// hyperdeterminant route), independent of any density-matrix computation.
inline double three_tangle_poly(const PureState& psi) {
  auto a = [&](int i, int j, int k) -> cplx {
    return psi[static_cast<std::size_t>((i << 2) | (j << 1) | k)];
  };
  auto sq = [](cplx z) { return z * z; };
  const cplx d1 = sq(a(0, 0, 0)) * sq(a(1, 1, 1)) + sq(a(0, 0, 1)) * sq(a(1, 1, 0)) +
                  sq(a(0, 1, 0)) * sq(a(1, 0, 1)) + sq(a(1, 0, 0)) * sq(a(0, 1, 1));
  const cplx d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) +
                  a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                  a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) +
                  a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                  a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) +
                  a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
  const cplx d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) +
                  a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

// All set partitions of {1..n} as lists of subset masks.
inline void set_partitions_rec(int n, int next, std::vector<std::uint32_t>& blocks,
                               std::vector<std::vector<std::uint32_t>>& out) {
  if (next > n) {
    out.push_back(blocks);
    return;
  }
  const std::uint32_t bit = 1u << (next - 1);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    blocks[i] |= bit;
    set_partitions_rec(n, next + 1, blocks, out);
    blocks[i] &= ~bit;
  }
  blocks.push_back(bit);
  set_partitions_rec(n, next + 1, blocks, out);
  blocks.pop_back();
}

inline std::vector<std::vector<std::uint32_t>> all_set_partitions(int n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> blocks;
  set_partitions_rec(n, 1, blocks, out);
  return out;
}

// Finest product decomposition by exhaustive search over set partitions,
// using the naive purity. Returns sorted block masks.
inline std::vector<std::uint32_t> finest_factorization_naive(const PureState& psi,
                                                             double tol) {
  std::vector<std::uint32_t> best;
  const std::uint32_t full = (1u << psi.n_qubits()) - 1u;
  for (const auto& partition : all_set_partitions(psi.n_qubits())) {
    bool valid = true;
    for (std::uint32_t block : partition) {
      if (block == full) continue;
      if (1.0 - purity_naive(psi, block) > tol) {
        valid = false;
        break;
      }
    }
    if (valid && partition.size() > best.size()) best = partition;
  }
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace oracles
