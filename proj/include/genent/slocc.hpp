#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <random>
#include <vector>

#include "genent/measure.hpp"

namespace genent {

// Determinant-1 local filtering operation in singular-value form
// u_post * diag(d, 1/d) * u_pre, with d > 0 and special-unitary factors.
struct SL2Op {
  int target = 1;
  double d = 1.0;
  Eigen::Matrix2cd u_pre = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd u_post = Eigen::Matrix2cd::Identity();

  Eigen::Matrix2cd composed() const;

  // SVD-based validation of a raw matrix; rejects matrices whose determinant
  // is not 1 within 1e-12.
  static SL2Op from_matrix(int target, const Eigen::Matrix2cd& m);
};

// Two-outcome POVM on one qubit: m1'm1 + m2'm2 = identity.
struct PovmPair {
  int target = 1;
  Eigen::Matrix2cd m1 = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd m2 = Eigen::Matrix2cd::Zero();
};

struct PovmBranch {
  std::optional<PureState> state;  // empty when the effect annihilated the input
  double prob = 0.0;
};

// Four-qubit normal-form family. Parameters must have nonnegative real part;
// the derived coefficients (a+d)/2, (b+c)/2, (a-d)/2, (b-c)/2 attach to the
// four even-parity basis pairs.
struct GAbcdParams {
  cplx a, b, c, d;

  std::array<cplx, 4> coefficients() const {  // {A, B, C, D}
    return {0.5 * (a + d), 0.5 * (b + c), 0.5 * (a - d), 0.5 * (b - c)};
  }
};

struct CovarianceCheck {
  double lhs = 0.0;       // E of the filtered state
  double rhs = 0.0;       // E of the input divided by Q^4
  double residual = 0.0;  // |lhs - rhs|
};

struct MonotonicityCheck {
  double average = 0.0;   // sum of prob_i * E(branch_i)
  double original = 0.0;  // E of the input
  double slack = 0.0;     // original - average; monotonicity means slack >= 0
};

struct NormalFormReport {
  bool product = false;
  // |S_{i|rest} - 1| over the four single-qubit partitions; 0 for product
  // instances, where the unit-value statement does not apply.
  double worst_single_partition_dev = 0.0;
  // Closed-form two-qubit purity vs the direct reduced purity, over the
  // three pairings of qubit 1.
  double worst_purity_t_dev = 0.0;
  double measure_value = 0.0;
};

ApplyResult apply_sl2(const PureState& state, const SL2Op& op);
CovarianceCheck check_slocc_covariance(const PureState& state, const SL2Op& op);
std::vector<PovmBranch> povm_branches(const PureState& state, const PovmPair& povm);
MonotonicityCheck check_monotonicity(const PureState& state, const PovmPair& povm);
PureState g_abcd(const GAbcdParams& params);

// Closed-form two-qubit reduced purity of the normal form. With coefficients
// {A,B,C,D}: Tr rho_12^2 = purity_T(A,B,C,D), Tr rho_13^2 = purity_T(A,C,B,D),
// Tr rho_14^2 = purity_T(A,B,D,C).
double purity_T(cplx x1, cplx x2, cplx x3, cplx x4);

NormalFormReport check_normal_form_properties(const GAbcdParams& params);

// Samplers for the property suites. Unitaries are Haar; d is log-uniform in
// [1/4, 4]; POVMs take uniform singular values in [0, 1].
Eigen::Matrix2cd haar_unitary2(std::mt19937_64& rng);
SL2Op random_sl2(int target, std::mt19937_64& rng);
PovmPair random_povm(int target, std::mt19937_64& rng);
GAbcdParams random_g_abcd(std::mt19937_64& rng);

}  // namespace genent
