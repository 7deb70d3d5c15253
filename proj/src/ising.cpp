#include "genent/ising.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "genent/measure.hpp"
#include "genent/parallel.hpp"

namespace genent {

namespace {

constexpr double kDegeneracyGap = 1e-8;
constexpr double kLanczosTol = 1e-10;

void validate(const IsingParams& params) {
  if (params.n > 12)
    raise(errc::arity_too_large, "chain length capped at 12: " + std::to_string(params.n));
  if (params.n < 2) raise(errc::bad_arity, "chain needs at least 2 sites");
  if (params.n % 2 != 0)
    raise(errc::odd_arity, "even chain length required by the measure");
  if (!(params.h >= 0.0) || !std::isfinite(params.h))
    raise(errc::bad_input, "field strength must be nonnegative and finite");
}

// sigma^z eigenvalue sum for a basis state: +1 per 0 bit, -1 per 1 bit.
inline double z_field_sum(int n, std::size_t x) {
  return static_cast<double>(n - 2 * std::popcount(x));
}

// Bit pair flipped by the bond (site, site+1), with periodic wrap.
inline std::size_t bond_flip_mask(int n, int site) {
  const int next = site % n + 1;
  return (std::size_t{1} << (n - site)) | (std::size_t{1} << (n - next));
}

PureState to_state(int n, const Eigen::VectorXd& v) {
  std::vector<cplx> amp(static_cast<std::size_t>(v.size()));
  // Canonical sign: largest-magnitude component positive.
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const double sign = v(imax) < 0.0 ? -1.0 : 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    amp[static_cast<std::size_t>(i)] = cplx{sign * v(i), 0.0};
  return PureState(n, std::move(amp));
}

}  // namespace

Eigen::MatrixXd build_hamiltonian(const IsingParams& params) {
  validate(params);
  const int n = params.n;
  const std::size_t dim = std::size_t{1} << n;

  Eigen::MatrixXd ham = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x)
    ham(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) =
        -params.h * z_field_sum(n, x);
  for (int site = 1; site <= n; ++site) {
    const std::size_t flip = bond_flip_mask(n, site);
    for (std::size_t x = 0; x < dim; ++x)
      ham(static_cast<Eigen::Index>(x ^ flip), static_cast<Eigen::Index>(x)) += -1.0;
  }
  return ham;
}

void apply_hamiltonian(const IsingParams& params, std::span<const double> x,
                       std::span<double> y) {
  const int n = params.n;
  const std::size_t dim = std::size_t{1} << n;
  if (x.size() != dim || y.size() != dim)
    raise(errc::length_mismatch, "vector length does not match the chain dimension");

  for (std::size_t i = 0; i < dim; ++i) y[i] = -params.h * z_field_sum(n, i) * x[i];
  for (int site = 1; site <= n; ++site) {
    const std::size_t flip = bond_flip_mask(n, site);
    for (std::size_t i = 0; i < dim; ++i) y[i ^ flip] += -x[i];
  }
}

namespace detail {

SpectrumResult solve_dense(const IsingParams& params, int k) {
  const Eigen::MatrixXd ham = build_hamiltonian(params);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ham);
  if (solver.info() != Eigen::Success)
    raise(errc::convergence_failure, "dense eigensolver failed");

  SpectrumResult result;
  for (int i = 0; i < k; ++i) {
    result.eigenvalues.push_back(solver.eigenvalues()(i));
    result.eigenvectors.push_back(to_state(params.n, solver.eigenvectors().col(i)));
  }
  result.degenerate = solver.eigenvalues()(1) - solver.eigenvalues()(0) < kDegeneracyGap;
  return result;
}

// Thick-restart Lanczos with full reorthogonalization. The projected matrix
// is kept dense: after a restart it is diagonal-plus-arrowhead rather than
// tridiagonal, and its size stays tiny next to the 2^n work vectors. All
// couplings, including the restart arrowhead, come out of the projection
// passes themselves.
SpectrumResult solve_lanczos(const IsingParams& params, int k) {
  const int n = params.n;
  const Eigen::Index dim = Eigen::Index{1} << n;
  const int want = std::max(k, 2);  // gap needed for the degeneracy flag
  const int m = static_cast<int>(std::min<Eigen::Index>(dim, 120));
  const int keep = std::min(want + 8, m - 2);
  const int max_cycles = 200;

  Eigen::MatrixXd basis(dim, m + 1);
  Eigen::MatrixXd projected = Eigen::MatrixXd::Zero(m, m);

  std::mt19937_64 rng(0x9e3779b9u);  // fixed seed: deterministic solver
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = gauss(rng);
  v.normalize();
  basis.col(0) = v;

  int active = 0;  // columns carried over from the previous cycle
  Eigen::VectorXd work(dim);

  for (int cycle = 0; cycle < max_cycles; ++cycle) {
    int built = active;
    bool invariant = false;
    for (int j = active; j < m; ++j) {
      apply_hamiltonian(params, std::span<const double>(basis.col(j).data(),
                                                        static_cast<std::size_t>(dim)),
                        std::span<double>(work.data(), static_cast<std::size_t>(dim)));
      // Two projection passes keep the basis orthonormal to machine
      // precision; the accumulated overlaps are the entries of V^T A V.
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const double overlap = basis.col(i).dot(work);
          work -= overlap * basis.col(i);
          projected(i, j) += overlap;
        }
      }
      for (int i = 0; i < j; ++i) projected(j, i) = projected(i, j);
      built = j + 1;

      double beta = work.norm();
      if (beta < 1e-13) {
        if (built >= dim) {
          invariant = true;  // spanned the whole space; Ritz pairs are exact
          break;
        }
        // Exhausted an invariant subspace; continue from a fresh direction.
        do {
          for (Eigen::Index i = 0; i < dim; ++i) work(i) = gauss(rng);
          for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i <= j; ++i) work -= basis.col(i).dot(work) * basis.col(i);
          beta = work.norm();
        } while (beta < 1e-13);
      }
      basis.col(j + 1) = work / beta;
    }

    const Eigen::MatrixXd t = 0.5 * (projected.topLeftCorner(built, built) +
                                     projected.topLeftCorner(built, built).transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t);
    if (small.info() != Eigen::Success)
      raise(errc::convergence_failure, "projected eigensolver failed");

    const Eigen::VectorXd ritz_values = small.eigenvalues().head(want);
    const Eigen::MatrixXd ritz_vectors =
        basis.leftCols(built) * small.eigenvectors().leftCols(want);

    // True residuals for the wanted pairs.
    double worst = 0.0;
    for (int i = 0; i < want; ++i) {
      apply_hamiltonian(params,
                        std::span<const double>(ritz_vectors.col(i).data(),
                                                static_cast<std::size_t>(dim)),
                        std::span<double>(work.data(), static_cast<std::size_t>(dim)));
      work -= ritz_values(i) * ritz_vectors.col(i);
      worst = std::max(worst, work.norm());
    }
    if (worst < kLanczosTol || invariant) {
      if (worst >= kLanczosTol)
        raise(errc::convergence_failure,
              "invariant subspace left residual " + std::to_string(worst));
      SpectrumResult result;
      for (int i = 0; i < k; ++i) {
        result.eigenvalues.push_back(ritz_values(i));
        Eigen::VectorXd col = ritz_vectors.col(i);
        col.normalize();
        result.eigenvectors.push_back(to_state(n, col));
      }
      result.degenerate = ritz_values(1) - ritz_values(0) < kDegeneracyGap;
      return result;
    }

    // Restart: keep the lowest Ritz vectors plus the last Lanczos vector.
    const Eigen::MatrixXd kept =
        basis.leftCols(built) * small.eigenvectors().leftCols(keep);
    basis.leftCols(keep) = kept;
    basis.col(keep) = basis.col(built);
    projected.setZero();
    for (int i = 0; i < keep; ++i) projected(i, i) = small.eigenvalues()(i);
    active = keep;
  }
  raise(errc::convergence_failure, "Lanczos did not converge within the cycle budget");
}

}  // namespace detail

SpectrumResult ground_state(const IsingParams& params, int k) {
  validate(params);
  if (k < 1 || k > 4) raise(errc::bad_input, "eigenpair count must be in 1..4");
  return params.n <= 10 ? detail::solve_dense(params, k) : detail::solve_lanczos(params, k);
}

std::vector<IsingSweepRow> sweep(int n, const std::vector<double>& h_values, int jobs) {
  validate(IsingParams{n, 0.0});
  for (double h : h_values)
    if (!(h > 0.0) || !std::isfinite(h))
      raise(errc::invalid_range, "sweep requires strictly positive field values");

  std::vector<IsingSweepRow> rows(h_values.size());
  parallel_for(h_values.size(), jobs, [&](std::size_t i) {
    const IsingParams params{n, h_values[i]};
    const SpectrumResult spectrum = ground_state(params, 2);
    IsingSweepRow& row = rows[i];
    row.h = params.h;
    row.ground_energy = spectrum.eigenvalues[0];
    row.gap = std::max(0.0, spectrum.eigenvalues[1] - spectrum.eigenvalues[0]);
    row.degenerate = spectrum.degenerate;
    row.entanglement = genuine_entanglement(spectrum.eigenvectors[0]).value;
  });
  return rows;
}

}  // namespace genent
