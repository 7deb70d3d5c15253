#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "genent/ising.hpp"
#include "genent/measure.hpp"

using namespace genent;

namespace {

bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

// Independent Hamiltonian construction from explicit Kronecker products.
Eigen::MatrixXd kron_hamiltonian(int n, double h) {
  Eigen::MatrixXd sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;

  auto embed = [&](const Eigen::MatrixXd& op, int site) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
    for (int q = 1; q <= n; ++q) {
      const Eigen::MatrixXd& factor =
          q == site ? op : Eigen::MatrixXd::Identity(2, 2);
      out = Eigen::kroneckerProduct(out, factor).eval();
    }
    return out;
  };

  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd ham = Eigen::MatrixXd::Zero(dim, dim);
  for (int site = 1; site <= n; ++site) {
    const int next = site % n + 1;
    ham -= embed(sx, site) * embed(sx, next);
    ham -= h * embed(sz, site);
  }
  return ham;
}

double parity_expectation(const PureState& psi) {
  double sum = 0.0;
  for (std::size_t x = 0; x < psi.dim(); ++x)
    sum += (std::popcount(x) % 2 == 0 ? 1.0 : -1.0) * std::norm(psi[x]);
  return sum;
}

}  // namespace

TEST_CASE("hamiltonian matches the Kronecker-product oracle") {
  for (int n : {2, 4, 6}) {
    for (double h : {0.0, 0.3, 1.0, 2.5}) {
      const Eigen::MatrixXd built = build_hamiltonian(IsingParams{n, h});
      const Eigen::MatrixXd oracle = kron_hamiltonian(n, h);
      CHECK((built - oracle).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((built - built.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("two-site chain at zero field has the doubled-bond spectrum") {
  const Eigen::MatrixXd ham = build_hamiltonian(IsingParams{2, 0.0});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ham);
  CHECK(close(solver.eigenvalues()(0), -2.0));
  CHECK(close(solver.eigenvalues()(1), -2.0));
  CHECK(close(solver.eigenvalues()(2), 2.0));
  CHECK(close(solver.eigenvalues()(3), 2.0));
}

TEST_CASE("matrix-free apply agrees with the dense matrix") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int n : {2, 4, 6}) {
    const IsingParams params{n, 0.7};
    const Eigen::MatrixXd ham = build_hamiltonian(params);
    const std::size_t dim = std::size_t{1} << n;
    Eigen::VectorXd x(static_cast<Eigen::Index>(dim)), y(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = gauss(rng);
    apply_hamiltonian(params, std::span<const double>(x.data(), dim),
                      std::span<double>(y.data(), dim));
    CHECK((y - ham * x).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_WITH_AS(build_hamiltonian(IsingParams{14, 1.0}),
                       doctest::Contains("ArityTooLarge"), Error);
  CHECK_THROWS_WITH_AS(build_hamiltonian(IsingParams{5, 1.0}),
                       doctest::Contains("OddArity"), Error);
  CHECK_THROWS_AS(build_hamiltonian(IsingParams{4, -0.5}), Error);
  CHECK_THROWS_AS(ground_state(IsingParams{4, 1.0}, 0), Error);
  CHECK_THROWS_AS(ground_state(IsingParams{4, 1.0}, 5), Error);
}

TEST_CASE("ground state in the deep paramagnet is polarized and unique") {
  const SpectrumResult result = ground_state(IsingParams{4, 10.0}, 2);
  CHECK(!result.degenerate);
  CHECK(std::norm(result.eigenvectors[0][0]) > 0.99 * 0.99);
  // E0 = -4h - 1/h + O(1/h^3) from second-order perturbation theory.
  CHECK(result.eigenvalues[0] < -40.0);
  CHECK(std::abs(result.eigenvalues[0] + 40.0 + 0.1) < 0.02);
}

TEST_CASE("zero-field ground space is degenerate") {
  const SpectrumResult result = ground_state(IsingParams{4, 0.0}, 2);
  CHECK(result.degenerate);
  CHECK(close(result.eigenvalues[0], result.eigenvalues[1], 1e-10));
}

TEST_CASE("eigenpairs satisfy the residual contract") {
  for (double h : {0.4, 1.0, 1.7}) {
    const IsingParams params{6, h};
    const SpectrumResult result = ground_state(params, 3);
    REQUIRE(result.eigenvalues.size() == 3);
    const std::size_t dim = 64;
    for (std::size_t k = 0; k < 3; ++k) {
      Eigen::VectorXd v(64), hv(64);
      for (std::size_t i = 0; i < dim; ++i)
        v(static_cast<Eigen::Index>(i)) = result.eigenvectors[k][i].real();
      apply_hamiltonian(params, std::span<const double>(v.data(), dim),
                        std::span<double>(hv.data(), dim));
      CHECK((hv - result.eigenvalues[k] * v).norm() < 1e-9);
    }
    // Pairwise orthogonality.
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) {
        cplx dot = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
          dot += std::conj(result.eigenvectors[a][i]) * result.eigenvectors[b][i];
        CHECK(std::abs(dot) < 1e-8);
      }
  }
}

TEST_CASE("lanczos path reproduces the dense spectrum") {
  for (int n : {6, 8, 10}) {
    for (double h : {0.6, 1.0, 1.4}) {
      const IsingParams params{n, h};
      const SpectrumResult dense = detail::solve_dense(params, 2);
      const SpectrumResult lanczos = detail::solve_lanczos(params, 2);
      CHECK(close(dense.eigenvalues[0], lanczos.eigenvalues[0], 1e-9));
      CHECK(close(dense.eigenvalues[1], lanczos.eigenvalues[1], 1e-9));
      // Same ground state up to phase.
      cplx overlap = 0.0;
      for (std::size_t i = 0; i < dense.eigenvectors[0].dim(); ++i)
        overlap += std::conj(dense.eigenvectors[0][i]) * lanczos.eigenvectors[0][i];
      CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("twelve-site chain solves iteratively within the residual contract") {
  const IsingParams params{12, 1.0};
  const SpectrumResult result = ground_state(params, 2);
  const std::size_t dim = 4096;
  Eigen::VectorXd v(4096), hv(4096);
  for (std::size_t i = 0; i < dim; ++i)
    v(static_cast<Eigen::Index>(i)) = result.eigenvectors[0][i].real();
  apply_hamiltonian(params, std::span<const double>(v.data(), dim),
                    std::span<double>(hv.data(), dim));
  CHECK((hv - result.eigenvalues[0] * v).norm() < 1e-9);
  CHECK(result.eigenvalues[0] < result.eigenvalues[1]);
  // Energy per site sits between the n=10 dense value and the thermodynamic
  // limit 4/pi, both bracketing finite chains at criticality.
  const double per_site = -result.eigenvalues[0] / 12.0;
  CHECK(per_site > 4.0 / 3.14159265358979323846);
  const double dense10 = -detail::solve_dense(IsingParams{10, 1.0}, 1).eigenvalues[0] / 10.0;
  CHECK(per_site < dense10);
}

TEST_CASE("sweep rows carry energies, gaps and the measure") {
  const std::vector<double> grid{0.05, 0.5, 1.0, 2.0, 20.0};
  const auto rows = sweep(4, grid, 2);
  REQUIRE(rows.size() == grid.size());

  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].h == grid[i]);
    CHECK(rows[i].gap >= 0.0);
  }
  // Deep ferromagnet: GHZ-like ground state.
  CHECK(rows[0].entanglement > 0.9);
  // Deep paramagnet: near-product ground state.
  CHECK(rows.back().entanglement < 0.02);
  // Ground energy is non-increasing in h.
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].ground_energy <= rows[i - 1].ground_energy + 1e-12);

  CHECK_THROWS_AS(sweep(4, {0.0, 1.0}), Error);
  CHECK_THROWS_AS(sweep(4, {-1.0}), Error);
  CHECK_THROWS_WITH_AS(sweep(5, {1.0}), doctest::Contains("OddArity"), Error);
}

TEST_CASE("near-degenerate rows are flagged but still measured") {
  // At h = 0.005 the parity splitting sits well below the 1e-8 threshold,
  // while the resolved ground state is still GHZ-like.
  const auto rows = sweep(4, {0.005});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].degenerate);
  CHECK(rows[0].gap < 1e-8);
  CHECK(rows[0].entanglement > 0.9);
}

TEST_CASE("ground state inherits the chain symmetries") {
  for (double h : {0.6, 1.0, 1.5}) {
    for (int n : {4, 6, 8}) {
      const SpectrumResult result = ground_state(IsingParams{n, h}, 1);
      const PureState& gs = result.eigenvectors[0];

      // Global spin-flip parity: the ground state is a parity eigenstate.
      CHECK(std::abs(std::abs(parity_expectation(gs)) - 1.0) < 1e-9);

      // Translation invariance: purities of shifted subsets agree.
      for (int len : {1, 2}) {
        const std::uint32_t base = (1u << len) - 1u;
        const double reference = reduced_purity(gs, QubitSubset::from_mask(base, n));
        for (int shift = 1; shift < n - len + 1; ++shift) {
          const std::uint32_t mask = base << shift;
          CHECK(close(reference, reduced_purity(gs, QubitSubset::from_mask(mask, n)),
                      1e-9));
        }
      }
    }
  }
}
