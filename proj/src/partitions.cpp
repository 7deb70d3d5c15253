#include "genent/partitions.hpp"

#include <algorithm>
#include <bit>

namespace genent {

namespace {

inline std::uint32_t full_mask(int n) { return (1u << n) - 1u; }

}  // namespace

Bipartition Bipartition::from_mask(std::uint32_t mask_a, int n_qubits) {
  QubitSubset a = QubitSubset::from_mask(mask_a, n_qubits);
  if (a.empty() || a.full())
    raise(errc::bad_input, "bipartition side must be a proper non-empty subset");
  if (!a.contains(1))
    raise(errc::bad_input, "canonical bipartition keeps qubit 1 in part A");
  return Bipartition{a};
}

std::optional<PartitionClass> Bipartition::partition_class() const {
  if (n_qubits() % 2 != 0) return std::nullopt;
  return part_a.size() % 2 == 1 ? PartitionClass::I : PartitionClass::II;
}

bool Factorization::covers_register() const {
  if (factors.empty()) return false;
  const int n = factors.front().n_qubits;
  std::uint32_t seen = 0;
  int total = 0;
  for (const QubitSubset& f : factors) {
    if (f.n_qubits != n || f.empty()) return false;
    seen |= f.mask;
    total += f.size();
  }
  return total == n && seen == full_mask(n);
}

std::vector<ClassifiedBipartition> enumerate_bipartitions(int n) {
  if (n < 2) raise(errc::bad_arity, "bipartitions need n >= 2");
  const std::uint32_t full = full_mask(n);
  std::vector<ClassifiedBipartition> out;
  out.reserve((std::size_t{1} << (n - 1)) - 1);
  // Canonical part_a masks are exactly the odd masks below the full mask.
  for (std::uint32_t mask = 1; mask < full; mask += 2) {
    Bipartition p = Bipartition::from_mask(mask, n);
    out.push_back(ClassifiedBipartition{p, p.partition_class()});
  }
  return out;
}

double PurityCache::purity(std::uint32_t mask) {
  const std::uint32_t full = full_mask(state_->n_qubits());
  mask &= full;
  const std::uint32_t key = std::min(mask, full & ~mask);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const double value = detail::subset_purity(*state_, key);
  memo_.emplace(key, value);
  return value;
}

namespace detail {

Factorization factorize_with_cache(PurityCache& cache, double tol) {
  const PureState& psi = cache.state();
  const int n = psi.n_qubits();
  const std::uint32_t full = full_mask(n);

  Factorization out;
  out.tolerance_used = tol;

  std::uint32_t remaining = full;
  while (remaining != 0) {
    const std::uint32_t lowbit = remaining & (~remaining + 1);
    const std::uint32_t rest = remaining ^ lowbit;

    // All subsets of `remaining` containing its lowest qubit, except
    // `remaining` itself, ordered by size then mask value.
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      if (sub != rest) candidates.push_back(sub | lowbit);
      if (sub == 0) break;
    }
    std::sort(candidates.begin(), candidates.end(),
              [](std::uint32_t a, std::uint32_t b) {
                const int pa = std::popcount(a), pb = std::popcount(b);
                return pa != pb ? pa < pb : a < b;
              });

    std::uint32_t chosen = 0;
    double impurity = 0.0;
    for (std::uint32_t cand : candidates) {
      const double imp = 1.0 - cache.purity(cand);
      if (imp <= tol) {
        chosen = cand;
        impurity = std::max(0.0, imp);
        break;
      }
    }
    if (chosen == 0) {
      // No proper pure subset: the rest of the register is one factor. It is
      // necessarily pure (complement of a union of pure factors), so it is
      // accepted without a threshold decision.
      chosen = remaining;
      impurity = remaining == full ? 0.0 : std::max(0.0, 1.0 - cache.purity(remaining));
    }

    out.worst_factor_impurity = std::max(out.worst_factor_impurity, impurity);
    out.factors.push_back(QubitSubset::from_mask(chosen, n));
    remaining &= ~chosen;
  }
  return out;
}

}  // namespace detail

Factorization factorize(const PureState& state, double tol) {
  if (!(tol > 0.0 && tol < 1e-3))
    raise(errc::bad_input, "factorization tolerance must be in (0, 1e-3)");
  PurityCache cache(state);
  return detail::factorize_with_cache(cache, tol);
}

std::pair<QubitSubset, QubitSubset> restrict_to_factor(const Bipartition& partition,
                                                       const QubitSubset& factor) {
  if (factor.empty()) raise(errc::empty_subset, "restriction to an empty factor");
  return {partition.part_a.intersect(factor), partition.part_b().intersect(factor)};
}

ContributionTally contribution_tally(int n, const QubitSubset& level_subset) {
  if (n < 2) raise(errc::bad_arity, "contribution_tally needs n >= 2");
  if (n % 2 != 0) raise(errc::odd_arity, "contribution_tally is defined for even n");
  if (level_subset.n_qubits != n) raise(errc::bad_input, "subset register mismatch");
  if (level_subset.size() < 2)
    raise(errc::subset_too_small, "nonlocal information needs at least 2 qubits");

  ContributionTally tally;
  tally.k = level_subset.size();
  const std::uint32_t full = full_mask(n);
  const std::uint32_t sub = level_subset.mask;
  for (std::uint32_t mask = 1; mask < full; mask += 2) {
    const std::uint32_t inside_a = mask & sub;
    if (inside_a == 0 || inside_a == sub) continue;  // not split by this partition
    if (std::popcount(mask) % 2 == 1)
      ++tally.count_I;
    else
      ++tally.count_II;
  }
  return tally;
}

}  // namespace genent
