#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "genent/state.hpp"

namespace genent {

// Class of a bipartition of an even register: odd|odd side sizes vs
// even|even. Undefined for odd registers.
enum class PartitionClass { I, II };

// Unordered split A|B of the register. Canonical form keeps qubit 1 in A so
// each split appears exactly once.
struct Bipartition {
  QubitSubset part_a;

  static Bipartition from_mask(std::uint32_t mask_a, int n_qubits);

  int n_qubits() const { return part_a.n_qubits; }
  QubitSubset part_b() const { return part_a.complement(); }
  std::optional<PartitionClass> partition_class() const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

struct ClassifiedBipartition {
  Bipartition partition;
  std::optional<PartitionClass> part_class;
};

// Finest split of the register into subsets whose reduced states are pure
// (within tolerance). Factors are ordered by lowest qubit label.
struct Factorization {
  std::vector<QubitSubset> factors;
  double tolerance_used = 0.0;
  // Largest 1 - purity among the accepted factors; how decisively the
  // product structure passed the threshold.
  double worst_factor_impurity = 0.0;

  int n_qubits() const { return factors.empty() ? 0 : factors.front().n_qubits; }
  bool covers_register() const;
};

struct ContributionTally {
  int k = 0;  // size of the probed subset
  long long count_I = 0;
  long long count_II = 0;
};

// All 2^(n-1) - 1 canonical bipartitions, in ascending part_a mask order.
// Classes are assigned only for even n.
std::vector<ClassifiedBipartition> enumerate_bipartitions(int n);

// Finest product decomposition: scans subsets containing the lowest
// unassigned qubit in order of increasing size, accepts the first whose
// reduced purity is >= 1 - tol, and recurses on the remainder.
Factorization factorize(const PureState& state, double tol = 1e-10);

// (A intersect factor, B intersect factor); either side may be empty.
std::pair<QubitSubset, QubitSubset> restrict_to_factor(const Bipartition& partition,
                                                       const QubitSubset& factor);

// Counts, per class, the canonical bipartitions that split level_subset
// (leave it neither inside A nor inside B).
ContributionTally contribution_tally(int n, const QubitSubset& level_subset);

// Memoized reduced purities of one state. Keys are canonicalized so a subset
// and its complement share an entry. Single writer per instance.
class PurityCache {
 public:
  explicit PurityCache(const PureState& state) : state_(&state) {}

  double purity(std::uint32_t mask);
  const PureState& state() const { return *state_; }

 private:
  const PureState* state_;
  std::unordered_map<std::uint32_t, double> memo_;
};

namespace detail {
Factorization factorize_with_cache(PurityCache& cache, double tol);
}

}  // namespace genent
