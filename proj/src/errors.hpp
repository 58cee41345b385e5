#pragma once

#include <stdexcept>
#include <string>

namespace fdss {

// Error codes shared by the C++ core and the C API.
enum class errc {
  ok = 0,
  n_out_of_range,
  m_out_of_range,
  sigma_out_of_range,
  p_out_of_range,
  supercritical_m,
  degenerate_L,
  printed_constants_degenerate,
  target_out_of_range,
  non_positive_profile,
  non_positive_f,
  branch_unavailable,
  unsupported_behavior,
  insufficient_tail,
  grid_too_coarse,
  bracket_invalid,
  out_of_range,
  bad_argument,
  numerical_failure,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fdss
