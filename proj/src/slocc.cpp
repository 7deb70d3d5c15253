#include "genent/slocc.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

namespace genent {

namespace {

constexpr double kDetTol = 1e-12;
constexpr double kPovmTol = 1e-10;
constexpr double kZeroNorm = 1e-14;

void validate_sl2(const SL2Op& op) {
  if (!(op.d > 0.0) || !std::isfinite(op.d))
    raise(errc::bad_input, "singular value d must be positive and finite");
  const cplx det = op.composed().determinant();
  if (std::abs(det - cplx{1.0, 0.0}) > kDetTol)
    raise(errc::not_det1, "composed operator determinant is not 1");
}

}  // namespace

Eigen::Matrix2cd SL2Op::composed() const {
  Eigen::Matrix2cd diag = Eigen::Matrix2cd::Zero();
  diag(0, 0) = d;
  diag(1, 1) = 1.0 / d;
  return u_post * diag * u_pre;
}

SL2Op SL2Op::from_matrix(int target, const Eigen::Matrix2cd& m) {
  if (std::abs(m.determinant() - cplx{1.0, 0.0}) > kDetTol)
    raise(errc::not_det1, "matrix determinant is not 1");
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SL2Op op;
  op.target = target;
  op.d = svd.singularValues()(0);
  op.u_post = svd.matrixU();
  op.u_pre = svd.matrixV().adjoint();
  // |det| = 1 forces the second singular value to be 1/d; composed() rebuilds
  // m up to roundoff.
  return op;
}

ApplyResult apply_sl2(const PureState& state, const SL2Op& op) {
  validate_sl2(op);
  return apply_local(state, LocalOperator{op.target, op.composed()});
}

CovarianceCheck check_slocc_covariance(const PureState& state, const SL2Op& op) {
  const double e_original = genuine_entanglement(state).value;
  const ApplyResult filtered = apply_sl2(state, op);
  CovarianceCheck check;
  check.lhs = genuine_entanglement(filtered.state).value;
  check.rhs = e_original / std::pow(filtered.q, 4);
  check.residual = std::abs(check.lhs - check.rhs);
  return check;
}

std::vector<PovmBranch> povm_branches(const PureState& state, const PovmPair& povm) {
  if (povm.target < 1 || povm.target > state.n_qubits())
    raise(errc::target_out_of_range, "POVM target out of range");
  const Eigen::Matrix2cd completeness =
      povm.m1.adjoint() * povm.m1 + povm.m2.adjoint() * povm.m2;
  if ((completeness - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > kPovmTol)
    raise(errc::not_a_povm, "effects do not sum to the identity");

  std::vector<PovmBranch> branches;
  branches.reserve(2);
  for (const Eigen::Matrix2cd* effect : {&povm.m1, &povm.m2}) {
    auto [amps, q] = detail::apply_local_raw(state, povm.target, *effect);
    PovmBranch branch;
    branch.prob = q * q;
    if (q >= kZeroNorm) branch.state = PureState(state.n_qubits(), std::move(amps));
    branches.push_back(std::move(branch));
  }
  return branches;
}

MonotonicityCheck check_monotonicity(const PureState& state, const PovmPair& povm) {
  MonotonicityCheck check;
  check.original = genuine_entanglement(state).value;
  for (const PovmBranch& branch : povm_branches(state, povm)) {
    if (!branch.state) continue;
    check.average += branch.prob * genuine_entanglement(*branch.state).value;
  }
  check.slack = check.original - check.average;
  return check;
}

PureState g_abcd(const GAbcdParams& params) {
  for (const cplx& p : {params.a, params.b, params.c, params.d}) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
      raise(errc::nonfinite_amplitude, "normal-form parameter is not finite");
    if (p.real() < -kDetTol)
      raise(errc::bad_input, "normal-form parameters need nonnegative real part");
  }
  const auto [ca, cb, cc, cd] = params.coefficients();

  std::vector<cplx> amp(16, cplx{0.0, 0.0});
  amp[0b0000] = ca;
  amp[0b1111] = ca;
  amp[0b0011] = cc;
  amp[0b1100] = cc;
  amp[0b0101] = cb;
  amp[0b1010] = cb;
  amp[0b0110] = cd;
  amp[0b1001] = cd;

  const double norm_sq =
      2.0 * (std::norm(ca) + std::norm(cb) + std::norm(cc) + std::norm(cd));
  if (std::sqrt(norm_sq) < kZeroNorm)
    raise(errc::zero_vector, "all normal-form coefficients vanish");
  return PureState(4, std::move(amp));
}

double purity_T(cplx x1, cplx x2, cplx x3, cplx x4) {
  const double n1 = std::norm(x1), n2 = std::norm(x2), n3 = std::norm(x3),
               n4 = std::norm(x4);
  const double m = 2.0 * (n1 + n2 + n3 + n4);
  if (m < kZeroNorm) raise(errc::all_zero, "all purity_T arguments vanish");
  const double cross13 = std::abs(x1 * std::conj(x3) + std::conj(x1) * x3);
  const double cross24 = std::abs(x2 * std::conj(x4) + std::conj(x2) * x4);
  const double numerator = (n1 + n3) * (n1 + n3) + (n2 + n4) * (n2 + n4) +
                           cross13 * cross13 + cross24 * cross24;
  return 2.0 * numerator / (m * m);
}

NormalFormReport check_normal_form_properties(const GAbcdParams& params) {
  const PureState state = g_abcd(params);
  const auto [ca, cb, cc, cd] = params.coefficients();

  NormalFormReport report;
  const MeasureReport measure = genuine_entanglement(state);
  report.measure_value = measure.value;
  report.product = measure.factorization.factors.size() > 1;

  if (!report.product) {
    for (int q = 1; q <= 4; ++q) {
      const double s = 2.0 * (1.0 - detail::subset_purity(state, 1u << (q - 1)));
      report.worst_single_partition_dev =
          std::max(report.worst_single_partition_dev, std::abs(s - 1.0));
    }
  }

  const struct {
    std::uint32_t mask;
    double t;
  } pairings[] = {
      {0b0011u, purity_T(ca, cb, cc, cd)},   // qubits {1,2}
      {0b0101u, purity_T(ca, cc, cb, cd)},   // qubits {1,3}
      {0b1001u, purity_T(ca, cb, cd, cc)},   // qubits {1,4}
  };
  for (const auto& p : pairings) {
    const double direct = detail::subset_purity(state, p.mask);
    report.worst_purity_t_dev =
        std::max(report.worst_purity_t_dev, std::abs(direct - p.t));
  }
  return report;
}

Eigen::Matrix2cd haar_unitary2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix2cd z;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) z(r, c) = cplx{gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
  Eigen::Matrix2cd q = qr.householderQ();
  const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so the distribution is Haar.
  for (int c = 0; c < 2; ++c) {
    const cplx piv = r(c, c);
    q.col(c) *= std::abs(piv) > 0.0 ? piv / std::abs(piv) : cplx{1.0, 0.0};
  }
  return q;
}

namespace {

Eigen::Matrix2cd special_unitary2(std::mt19937_64& rng) {
  Eigen::Matrix2cd u = haar_unitary2(rng);
  // Divide out the determinant phase to land in SU(2).
  return u / std::sqrt(u.determinant());
}

}  // namespace

SL2Op random_sl2(int target, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_d(-std::log(4.0), std::log(4.0));
  SL2Op op;
  op.target = target;
  op.d = std::exp(log_d(rng));
  op.u_pre = special_unitary2(rng);
  op.u_post = special_unitary2(rng);
  return op;
}

PovmPair random_povm(int target, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double a = uniform(rng);
  const double b = uniform(rng);
  const Eigen::Matrix2cd u1 = haar_unitary2(rng);
  const Eigen::Matrix2cd u2 = haar_unitary2(rng);
  const Eigen::Matrix2cd v = haar_unitary2(rng);

  Eigen::Matrix2cd s1 = Eigen::Matrix2cd::Zero();
  s1(0, 0) = a;
  s1(1, 1) = b;
  Eigen::Matrix2cd s2 = Eigen::Matrix2cd::Zero();
  s2(0, 0) = std::sqrt(1.0 - a * a);
  s2(1, 1) = std::sqrt(1.0 - b * b);

  PovmPair povm;
  povm.target = target;
  povm.m1 = u1 * s1 * v;
  povm.m2 = u2 * s2 * v;
  return povm;
}

GAbcdParams random_g_abcd(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&] { return cplx{std::abs(gauss(rng)), gauss(rng)}; };
  return GAbcdParams{draw(), draw(), draw(), draw()};
}

}  // namespace genent
