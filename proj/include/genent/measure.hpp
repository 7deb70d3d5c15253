#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "genent/partitions.hpp"

namespace genent {

// Nonlocal information of one bipartition: the linear-entropy mutual
// information of the split, summed over its restriction to each product
// factor of the state.
struct NonlocalInfo {
  Bipartition partition;
  double value = 0.0;
  std::vector<std::pair<QubitSubset, double>> per_factor;
};

// Per-partition breakdown of the genuine N-qubit entanglement
// value = sum over class I partitions - sum over class II partitions.
struct MeasureReport {
  int n_qubits = 0;
  std::vector<NonlocalInfo> per_partition;  // canonical ascending mask order
  double sum_class_I = 0.0;
  double sum_class_II = 0.0;
  double value = 0.0;
  Factorization factorization;
};

// 2 * (1 - Tr rho_{a_m}^2) for a_m inside a product factor; 0 when a_m or its
// complement within the factor is empty.
double mutual_info_within_factor(const PureState& state, const QubitSubset& factor,
                                 const QubitSubset& a_m);

NonlocalInfo nonlocal_info(const PureState& state, const Bipartition& partition,
                           const Factorization& factorization);

// The full measure for an even register (n = 2 degenerates to the two-qubit
// mutual information, with an empty class II).
MeasureReport genuine_entanglement(const PureState& state);

// Squared concurrence of a two-qubit pure state.
double concurrence_squared(const PureState& two_qubit_state);

// Squared concurrence of a two-qubit density matrix (Wootters spectrum of
// rho * rho_tilde).
double concurrence_squared(const Eigen::Matrix4cd& rho);

// tau_123 = S_{1|23} - tau_12 - tau_13 with the pairwise tangles from the
// mixed-state concurrence above.
double three_tangle(const PureState& three_qubit_state);

namespace detail {
NonlocalInfo nonlocal_info_cached(PurityCache& cache, const Bipartition& partition,
                                  const Factorization& factorization);
}

}  // namespace genent
