#include "genent/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "genent/rng.hpp"

namespace genent {

namespace {

constexpr double kZeroNorm = 1e-14;
constexpr int kMaxRegister = 28;  // 2^28 amplitudes; subsets use 32-bit masks

// Qubit 1 is the most significant bit of the basis index.
inline int index_bit(int n, int qubit) { return n - qubit; }

inline std::uint32_t full_mask(int n) {
  return n >= 32 ? ~0u : ((1u << n) - 1u);
}

}  // namespace

QubitSubset QubitSubset::from_mask(std::uint32_t mask, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxRegister)
    raise(errc::bad_arity, "register size out of range: " + std::to_string(n_qubits));
  if (mask > full_mask(n_qubits))
    raise(errc::bad_input, "subset mask exceeds register");
  return QubitSubset{mask, n_qubits};
}

QubitSubset QubitSubset::of(std::initializer_list<int> qubits, int n_qubits) {
  std::uint32_t mask = 0;
  for (int q : qubits) {
    if (q < 1 || q > n_qubits)
      raise(errc::bad_input, "qubit label out of range: " + std::to_string(q));
    mask |= 1u << (q - 1);
  }
  return from_mask(mask, n_qubits);
}

QubitSubset QubitSubset::full_register(int n_qubits) {
  return from_mask(full_mask(n_qubits), n_qubits);
}

int QubitSubset::size() const { return std::popcount(mask); }

bool QubitSubset::full() const { return mask == full_mask(n_qubits); }

bool QubitSubset::contains(int qubit) const {
  return qubit >= 1 && qubit <= n_qubits && (mask >> (qubit - 1)) & 1u;
}

QubitSubset QubitSubset::complement() const {
  return QubitSubset{full_mask(n_qubits) & ~mask, n_qubits};
}

QubitSubset QubitSubset::intersect(const QubitSubset& other) const {
  if (n_qubits != other.n_qubits) raise(errc::bad_input, "subset register mismatch");
  return QubitSubset{mask & other.mask, n_qubits};
}

bool QubitSubset::subset_of(const QubitSubset& other) const {
  return n_qubits == other.n_qubits && (mask & ~other.mask) == 0;
}

std::vector<int> QubitSubset::qubits() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int q = 1; q <= n_qubits; ++q)
    if (contains(q)) out.push_back(q);
  return out;
}

PureState::PureState(int n_qubits, std::vector<cplx> amplitudes) : n_(n_qubits) {
  if (n_ < 1 || n_ > kMaxRegister)
    raise(errc::bad_arity, "register size out of range: " + std::to_string(n_));
  const std::size_t expected = std::size_t{1} << n_;
  if (amplitudes.size() != expected)
    raise(errc::length_mismatch, std::to_string(amplitudes.size()) + " amplitudes for " +
                                     std::to_string(n_) + " qubits (need " +
                                     std::to_string(expected) + ")");
  double norm_sq = 0.0;
  for (const cplx& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      raise(errc::nonfinite_amplitude, "amplitude is not finite");
    norm_sq += std::norm(a);
  }
  const double norm = std::sqrt(norm_sq);
  if (norm < kZeroNorm) raise(errc::zero_vector, "state vector has (near) zero norm");
  for (cplx& a : amplitudes) a /= norm;
  amp_ = std::move(amplitudes);
  norm_residual_ = std::abs(norm - 1.0);
}

PureState make_state(int n_qubits, std::vector<cplx> amplitudes) {
  return PureState(n_qubits, std::move(amplitudes));
}

PureState ghz(int n) {
  if (n < 2) raise(errc::bad_arity, "ghz needs n >= 2");
  std::vector<cplx> amp(std::size_t{1} << n, cplx{0.0, 0.0});
  const double r = 1.0 / std::sqrt(2.0);
  amp.front() = r;
  amp.back() = r;
  return PureState(n, std::move(amp));
}

PureState w_state(int n) {
  if (n < 2) raise(errc::bad_arity, "w_state needs n >= 2");
  std::vector<cplx> amp(std::size_t{1} << n, cplx{0.0, 0.0});
  const double r = 1.0 / std::sqrt(static_cast<double>(n));
  for (int q = 0; q < n; ++q) amp[std::size_t{1} << q] = r;
  return PureState(n, std::move(amp));
}

PureState tensor_product(const std::vector<PureState>& states) {
  if (states.empty()) raise(errc::empty_list, "tensor_product of no states");
  int n_total = 0;
  for (const PureState& s : states) n_total += s.n_qubits();
  if (n_total > kMaxRegister)
    raise(errc::bad_arity, "combined register too large: " + std::to_string(n_total));

  std::vector<cplx> acc{cplx{1.0, 0.0}};
  for (const PureState& s : states) {
    std::vector<cplx> next(acc.size() * s.dim());
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = 0; j < s.dim(); ++j) next[i * s.dim() + j] = acc[i] * s[j];
    acc = std::move(next);
  }
  return PureState(n_total, std::move(acc));
}

namespace {

// Image of the state under a one-qubit operator, without normalization.
std::pair<std::vector<cplx>, double> apply_raw(const PureState& state, int target,
                                               const Eigen::Matrix2cd& m) {
  const int n = state.n_qubits();
  const std::size_t dim = state.dim();
  const int p = index_bit(n, target);
  const std::size_t step = std::size_t{1} << p;

  std::vector<cplx> out(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    if (x & step) continue;
    const std::size_t y = x | step;
    const cplx a0 = state[x];
    const cplx a1 = state[y];
    out[x] = m(0, 0) * a0 + m(0, 1) * a1;
    out[y] = m(1, 0) * a0 + m(1, 1) * a1;
  }
  double norm_sq = 0.0;
  for (const cplx& a : out) norm_sq += std::norm(a);
  return {std::move(out), std::sqrt(norm_sq)};
}

}  // namespace

ApplyResult apply_local(const PureState& state, const LocalOperator& op) {
  if (op.target < 1 || op.target > state.n_qubits())
    raise(errc::target_out_of_range, "target qubit " + std::to_string(op.target) +
                                         " of " + std::to_string(state.n_qubits()));
  auto [amps, q] = apply_raw(state, op.target, op.matrix);
  if (q < kZeroNorm) raise(errc::zero_vector, "operator annihilated the state");
  return ApplyResult{PureState(state.n_qubits(), std::move(amps)), q};
}

namespace detail {

std::pair<std::vector<cplx>, double> apply_local_raw(const PureState& state, int target,
                                                     const Eigen::Matrix2cd& m) {
  return apply_raw(state, target, m);
}

double subset_purity(const PureState& state, std::uint32_t mask) {
  const int n = state.n_qubits();
  const std::uint32_t full = full_mask(n);
  mask &= full;
  if (mask == 0 || mask == full) return 1.0;

  int s = std::popcount(mask);
  if (s > n - s) {
    mask = full & ~mask;
    s = n - s;
  }

  // Index-bit positions of subset (rows) and complement (columns), in
  // ascending label order so gathered bits keep their register order.
  std::vector<int> row_pos, col_pos;
  row_pos.reserve(static_cast<std::size_t>(s));
  col_pos.reserve(static_cast<std::size_t>(n - s));
  for (int q = 1; q <= n; ++q) {
    if ((mask >> (q - 1)) & 1u)
      row_pos.push_back(index_bit(n, q));
    else
      col_pos.push_back(index_bit(n, q));
  }

  const std::size_t rows = std::size_t{1} << s;
  const std::size_t cols = std::size_t{1} << (n - s);
  Eigen::MatrixXcd c(rows, cols);
  for (std::size_t x = 0; x < state.dim(); ++x) {
    std::size_t r = 0, cc = 0;
    for (int p : row_pos) r = (r << 1) | ((x >> p) & 1u);
    for (int p : col_pos) cc = (cc << 1) | ((x >> p) & 1u);
    c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cc)) = state[x];
  }
  const Eigen::MatrixXcd g = c * c.adjoint();
  return g.squaredNorm();
}

Eigen::MatrixXcd reduced_density(const PureState& state, std::uint32_t mask) {
  const int n = state.n_qubits();
  const std::uint32_t full = full_mask(n);
  mask &= full;
  const int s = std::popcount(mask);

  std::vector<int> row_pos, col_pos;
  for (int q = 1; q <= n; ++q) {
    if ((mask >> (q - 1)) & 1u)
      row_pos.push_back(index_bit(n, q));
    else
      col_pos.push_back(index_bit(n, q));
  }
  const std::size_t rows = std::size_t{1} << s;
  const std::size_t cols = std::size_t{1} << (n - s);
  Eigen::MatrixXcd c(rows, cols);
  for (std::size_t x = 0; x < state.dim(); ++x) {
    std::size_t r = 0, cc = 0;
    for (int p : row_pos) r = (r << 1) | ((x >> p) & 1u);
    for (int p : col_pos) cc = (cc << 1) | ((x >> p) & 1u);
    c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cc)) = state[x];
  }
  return c * c.adjoint();
}

}  // namespace detail

double reduced_purity(const PureState& state, const QubitSubset& subset) {
  if (subset.n_qubits != state.n_qubits())
    raise(errc::bad_input, "subset register mismatch");
  if (subset.empty()) raise(errc::empty_subset, "reduced_purity of empty subset");
  if (subset.full()) raise(errc::full_subset, "reduced_purity of the whole register");
  return detail::subset_purity(state, subset.mask);
}

PureState haar_random_state(int n, std::mt19937_64& rng) {
  if (n < 1) raise(errc::bad_arity, "haar_random_state needs n >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> amp(std::size_t{1} << n);
  for (cplx& a : amp) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a = cplx{re, im};
  }
  return PureState(n, std::move(amp));
}

PureState haar_random_state(int n, RngSeed seed) {
  auto rng = make_rng(seed);
  return haar_random_state(n, rng);
}

PureState permute_qubits(const PureState& state, const std::vector<int>& new_label) {
  const int n = state.n_qubits();
  if (new_label.size() != static_cast<std::size_t>(n))
    raise(errc::bad_input, "permutation length mismatch");
  std::uint32_t seen = 0;
  for (int label : new_label) {
    if (label < 1 || label > n) raise(errc::bad_input, "permutation label out of range");
    seen |= 1u << (label - 1);
  }
  if (seen != full_mask(n)) raise(errc::bad_input, "permutation is not a bijection");

  std::vector<cplx> out(state.dim());
  for (std::size_t x = 0; x < state.dim(); ++x) {
    std::size_t y = 0;
    for (int q = 1; q <= n; ++q) {
      const std::size_t bit = (x >> index_bit(n, q)) & 1u;
      y |= bit << index_bit(n, new_label[static_cast<std::size_t>(q - 1)]);
    }
    out[y] = state[x];
  }
  return PureState(n, std::move(out));
}

}  // namespace genent
