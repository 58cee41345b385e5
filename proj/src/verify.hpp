#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "params.hpp"
#include "selfmap.hpp"

namespace fdss {

/// Random-sample residuals of the closed-form identity set:
/// Sobolev symmetry, double map, Nbar > 2, the m_s range flip, the sigma_L
/// comparison, p > p_c(sigmabar), and Lbar = 2mL/(mN-N+2).
struct IdentitySuiteReport {
  int samples = 0;
  std::uint64_t seed = 0;
  double max_symm_residual = 0.0;
  double max_double_map_residual = 0.0;
  double max_closed_form_residual = 0.0;
  int nbar_failures = 0;      ///< samples with Nbar <= 2
  int sign_failures = 0;      ///< samples violating a sign comparison
  double tolerance = 1e-9;
  bool pass = false;
};

IdentitySuiteReport run_identity_suite(int samples, std::uint64_t seed);
std::string identity_suite_json(const IdentitySuiteReport& rep);

/// Transformation residual oracle: integrate a bar-side profile, map it, and
/// evaluate the sign-flipped equation residual in source parameters.
struct ResidualCase {
  ParameterSet source;
  ParameterSet target;
  double theta = 0.0;
  double D = 0.0;
  double bar_residual = 0.0;
  double mapped_residual = 0.0;
};

struct ResidualSuiteReport {
  std::vector<ResidualCase> cases;
  std::uint64_t seed = 0;
  double max_mapped_residual = 0.0;
  double tolerance = 1e-6;
  bool pass = false;
};

ResidualSuiteReport run_residual_suite(int random_draws, std::uint64_t seed);
std::string residual_suite_json(const ResidualSuiteReport& rep);

/// One transformation residual case for explicit source parameters.
ResidualCase run_residual_case(const ParameterSet& source, double D);

/// Dominant-balance constant at the reference point plus the hot-spot
/// exponent inequalities over random samples with L > 0.
struct BalanceSuiteReport {
  double A_reference = 0.0;      ///< critical_decay_constant at (3, 1/4, 6/5, 0)
  double A_closed_form = 0.0;    ///< (1/6)^(4/3)
  double A_rel_err = 0.0;
  double order_measured = 0.0;   ///< decay order of the ansatz residual
  double order_expected = 0.0;   ///< L/(1-m)
  bool printed_base_negative = false;
  int hotspot_samples = 0;
  std::uint64_t seed = 0;
  double max_slow_violation = 0.0;   ///< |alpha + beta*gamma_slow|
  double max_crit_violation = 0.0;   ///< |(-alpha - beta*gamma_crit) - 1/(1-m)|
  double min_fast_margin = 0.0;      ///< min of -alpha - beta*gamma_fast (must be > 0)
  bool pass = false;
};

BalanceSuiteReport run_balance_suite(int hotspot_samples, std::uint64_t seed);
std::string balance_suite_json(const BalanceSuiteReport& rep);

/// Relative residual of the pure power-law ansatz A xi^(-2/(1-m)) in the
/// s = -1 equation, evaluated analytically at one point.
double critical_ansatz_relative_residual(const ParameterSet& ps, double xi);

}  // namespace fdss
