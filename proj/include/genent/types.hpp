#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace genent {

using cplx = std::complex<double>;

// Seed for the deterministic RNG streams used by samplers and scans.
using RngSeed = std::uint64_t;

enum class errc {
  length_mismatch,
  zero_vector,
  nonfinite_amplitude,
  bad_arity,
  odd_arity,
  arity_too_large,
  target_out_of_range,
  empty_subset,
  full_subset,
  not_a_subset,
  subset_too_small,
  empty_list,
  factorization_mismatch,
  not_det1,
  not_a_povm,
  all_zero,
  convergence_failure,
  invalid_range,
  bad_input,
};

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::length_mismatch: return "LengthMismatch";
    case errc::zero_vector: return "ZeroVector";
    case errc::nonfinite_amplitude: return "NonfiniteAmplitude";
    case errc::bad_arity: return "BadArity";
    case errc::odd_arity: return "OddArity";
    case errc::arity_too_large: return "ArityTooLarge";
    case errc::target_out_of_range: return "TargetOutOfRange";
    case errc::empty_subset: return "EmptySubset";
    case errc::full_subset: return "FullSubset";
    case errc::not_a_subset: return "NotASubset";
    case errc::subset_too_small: return "SubsetTooSmall";
    case errc::empty_list: return "EmptyList";
    case errc::factorization_mismatch: return "FactorizationMismatch";
    case errc::not_det1: return "NotDet1";
    case errc::not_a_povm: return "NotAPovm";
    case errc::all_zero: return "AllZero";
    case errc::convergence_failure: return "ConvergenceFailure";
    case errc::invalid_range: return "InvalidRange";
    case errc::bad_input: return "BadInput";
  }
  return "UnknownError";
}

// Library errors carry a machine-checkable code; the CLI maps codes onto its
// exit statuses (input error vs domain error).
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace genent
