#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "genent/types.hpp"

namespace genent {

// Subset of a qubit register. Qubit labels are 1-based; bit i of `mask` set
// means qubit i+1 is in the subset.
struct QubitSubset {
  std::uint32_t mask = 0;
  int n_qubits = 0;

  static QubitSubset from_mask(std::uint32_t mask, int n_qubits);
  static QubitSubset of(std::initializer_list<int> qubits, int n_qubits);
  static QubitSubset full_register(int n_qubits);

  int size() const;
  bool empty() const { return mask == 0; }
  bool full() const;
  bool contains(int qubit) const;
  QubitSubset complement() const;
  QubitSubset intersect(const QubitSubset& other) const;
  bool subset_of(const QubitSubset& other) const;
  std::vector<int> qubits() const;  // ascending labels

  friend bool operator==(const QubitSubset&, const QubitSubset&) = default;
};

// Pure state of an n-qubit register. Qubit 1 is the most significant bit of
// the basis index, so tensor products concatenate registers in label order.
// Amplitudes are normalized on construction; the deviation of the input norm
// from 1 is kept for diagnostics.
class PureState {
 public:
  PureState(int n_qubits, std::vector<cplx> amplitudes);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return amp_.size(); }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  const cplx& operator[](std::size_t index) const { return amp_[index]; }
  double normalization_residual() const { return norm_residual_; }

 private:
  int n_;
  std::vector<cplx> amp_;
  double norm_residual_;
};

// 2x2 operator acting on one qubit of a larger register.
struct LocalOperator {
  int target = 1;  // 1-based qubit label
  Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();
};

struct ApplyResult {
  PureState state;  // renormalized image
  double q;         // norm of the unnormalized image
};

PureState make_state(int n_qubits, std::vector<cplx> amplitudes);
PureState ghz(int n);
PureState w_state(int n);
PureState tensor_product(const std::vector<PureState>& states);
ApplyResult apply_local(const PureState& state, const LocalOperator& op);

// Tr rho_S^2 for the reduced state over a proper non-empty subset.
double reduced_purity(const PureState& state, const QubitSubset& subset);

PureState haar_random_state(int n, RngSeed seed);
PureState haar_random_state(int n, std::mt19937_64& rng);

// Relabels qubits: new_label[i] is the new label of qubit i+1. new_label must
// be a permutation of 1..n.
PureState permute_qubits(const PureState& state, const std::vector<int>& new_label);

namespace detail {

// Unnormalized image of a one-qubit operator and its norm; does not reject
// an annihilated result (norm 0), unlike apply_local.
std::pair<std::vector<cplx>, double> apply_local_raw(const PureState& state, int target,
                                                     const Eigen::Matrix2cd& m);

// Purity of the reduced state over `mask`, without argument validation.
// Empty and full masks return 1. Reduces over the smaller side of the cut
// (same value by Schmidt symmetry, cost 2^n * 2^min(|S|, n-|S|)).
double subset_purity(const PureState& state, std::uint32_t mask);

// Reduced density matrix over `mask`, dimension 2^|mask|. Rows and columns
// follow ascending qubit-label order within the subset.
Eigen::MatrixXcd reduced_density(const PureState& state, std::uint32_t mask);

}  // namespace detail
}  // namespace genent
