#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "genent/state.hpp"

namespace genent {

// Transverse-field Ising chain H = -sum sigma^x_i sigma^x_{i+1} - h sum
// sigma^z_i with periodic boundary (site n+1 = site 1) and unit coupling.
struct IsingParams {
  int n = 4;       // even, 2..12
  double h = 0.0;  // field strength, >= 0
};

struct SpectrumResult {
  std::vector<double> eigenvalues;      // lowest k, ascending
  std::vector<PureState> eigenvectors;  // matching order
  bool degenerate = false;              // gap below 1e-8
};

struct IsingSweepRow {
  double h = 0.0;
  double ground_energy = 0.0;
  double gap = 0.0;
  double entanglement = 0.0;  // genuine n-qubit entanglement of the ground state
  bool degenerate = false;
};

// Dense real-symmetric Hamiltonian in the computational z-basis.
Eigen::MatrixXd build_hamiltonian(const IsingParams& params);

// Matrix-free y = H x for the iterative solver.
void apply_hamiltonian(const IsingParams& params, std::span<const double> x,
                       std::span<double> y);

// Lowest k eigenpairs (1 <= k <= 4): dense solver up to n = 10, matrix-free
// thick-restart Lanczos with full reorthogonalization at n = 12.
SpectrumResult ground_state(const IsingParams& params, int k);

// One row per field value; all h must be positive (at h = 0 the ground space
// is degenerate and "the ground state" is ill-defined).
std::vector<IsingSweepRow> sweep(int n, const std::vector<double>& h_values,
                                 int jobs = 1);

namespace detail {
SpectrumResult solve_dense(const IsingParams& params, int k);
SpectrumResult solve_lanczos(const IsingParams& params, int k);
}

}  // namespace genent
