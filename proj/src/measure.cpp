#include "genent/measure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

namespace genent {

namespace {

constexpr double kFactorizationTol = 1e-10;

double mutual_info_cached(PurityCache& cache, const QubitSubset& factor,
                          const QubitSubset& a_m) {
  const QubitSubset b_m{factor.mask & ~a_m.mask, factor.n_qubits};
  if (a_m.empty() || b_m.empty()) return 0.0;
  return 2.0 * (1.0 - cache.purity(a_m.mask));
}

}  // namespace

double mutual_info_within_factor(const PureState& state, const QubitSubset& factor,
                                 const QubitSubset& a_m) {
  if (factor.n_qubits != state.n_qubits() || a_m.n_qubits != state.n_qubits())
    raise(errc::bad_input, "subset register mismatch");
  if (!a_m.subset_of(factor))
    raise(errc::not_a_subset, "a_m is not contained in the factor");
  const QubitSubset b_m{factor.mask & ~a_m.mask, factor.n_qubits};
  if (a_m.empty() || b_m.empty()) return 0.0;
  return 2.0 * (1.0 - detail::subset_purity(state, a_m.mask));
}

namespace detail {

NonlocalInfo nonlocal_info_cached(PurityCache& cache, const Bipartition& partition,
                                  const Factorization& factorization) {
  if (!factorization.covers_register() ||
      factorization.n_qubits() != cache.state().n_qubits())
    raise(errc::factorization_mismatch, "factors do not cover the register");
  if (partition.n_qubits() != cache.state().n_qubits())
    raise(errc::bad_input, "partition register mismatch");

  NonlocalInfo info;
  info.partition = partition;
  info.per_factor.reserve(factorization.factors.size());
  for (const QubitSubset& factor : factorization.factors) {
    const QubitSubset a_m = partition.part_a.intersect(factor);
    const double mi = mutual_info_cached(cache, factor, a_m);
    info.per_factor.emplace_back(factor, mi);
    info.value += mi;
  }
  return info;
}

}  // namespace detail

NonlocalInfo nonlocal_info(const PureState& state, const Bipartition& partition,
                           const Factorization& factorization) {
  PurityCache cache(state);
  return detail::nonlocal_info_cached(cache, partition, factorization);
}

MeasureReport genuine_entanglement(const PureState& state) {
  const int n = state.n_qubits();
  if (n < 2) raise(errc::bad_arity, "the measure needs at least 2 qubits");
  if (n % 2 != 0)
    raise(errc::odd_arity, "the measure is defined for even registers only");

  PurityCache cache(state);

  MeasureReport report;
  report.n_qubits = n;
  report.factorization = detail::factorize_with_cache(cache, kFactorizationTol);

  const auto partitions = enumerate_bipartitions(n);
  report.per_partition.reserve(partitions.size());
  for (const ClassifiedBipartition& cp : partitions) {
    NonlocalInfo info =
        detail::nonlocal_info_cached(cache, cp.partition, report.factorization);
    if (cp.part_class == PartitionClass::I)
      report.sum_class_I += info.value;
    else
      report.sum_class_II += info.value;
    report.per_partition.push_back(std::move(info));
  }
  report.value = report.sum_class_I - report.sum_class_II;
  return report;
}

double concurrence_squared(const PureState& two_qubit_state) {
  if (two_qubit_state.n_qubits() != 2)
    raise(errc::bad_arity, "pure-state concurrence needs exactly 2 qubits");
  return 2.0 * (1.0 - detail::subset_purity(two_qubit_state, 0b01u));
}

double concurrence_squared(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;

  // The Wootters lambdas are the singular values of the symmetric matrix
  // tau_kl = v_k^T (sigma_y x sigma_y) v_l over subnormalized eigenvectors
  // v_k = sqrt(mu_k) u_k. Unlike eigenvalues of rho * rho_tilde, this stays
  // accurate when rho is rank deficient: the extra lambdas are exactly zero.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  Eigen::Matrix4cd v;
  for (int k = 0; k < 4; ++k)
    v.col(k) = std::sqrt(std::max(0.0, es.eigenvalues()(k))) * es.eigenvectors().col(k);
  const Eigen::Matrix4cd tau = v.transpose() * yy * v;

  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
  const Eigen::Vector4d lambda = svd.singularValues();  // descending
  const double c = std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
  return c * c;
}

double three_tangle(const PureState& three_qubit_state) {
  if (three_qubit_state.n_qubits() != 3)
    raise(errc::bad_arity, "three_tangle needs exactly 3 qubits");
  const double s_1_23 = 2.0 * (1.0 - detail::subset_purity(three_qubit_state, 0b001u));
  const Eigen::Matrix4cd rho12 = detail::reduced_density(three_qubit_state, 0b011u);
  const Eigen::Matrix4cd rho13 = detail::reduced_density(three_qubit_state, 0b101u);
  return s_1_23 - concurrence_squared(rho12) - concurrence_squared(rho13);
}

}  // namespace genent
