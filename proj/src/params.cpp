#include "params.hpp"

#include <cmath>
#include <sstream>

namespace fdss {

const char* errc_name(errc code) {
  switch (code) {
    case errc::ok: return "ok";
    case errc::n_out_of_range: return "NOutOfRange";
    case errc::m_out_of_range: return "MOutOfRange";
    case errc::sigma_out_of_range: return "SigmaOutOfRange";
    case errc::p_out_of_range: return "POutOfRange";
    case errc::supercritical_m: return "SupercriticalM";
    case errc::degenerate_L: return "DegenerateL";
    case errc::printed_constants_degenerate: return "PrintedConstantsDegenerate";
    case errc::target_out_of_range: return "TargetOutOfRange";
    case errc::non_positive_profile: return "NonPositiveProfile";
    case errc::non_positive_f: return "NonPositiveF";
    case errc::branch_unavailable: return "BranchUnavailable";
    case errc::unsupported_behavior: return "UnsupportedBehavior";
    case errc::insufficient_tail: return "InsufficientTail";
    case errc::grid_too_coarse: return "GridTooCoarse";
    case errc::bracket_invalid: return "BracketInvalid";
    case errc::out_of_range: return "OutOfRange";
    case errc::bad_argument: return "BadArgument";
    case errc::numerical_failure: return "NumericalFailure";
  }
  return "unknown";
}

const char* temporal_kind_name(TemporalKind kind) {
  switch (kind) {
    case TemporalKind::GlobalDecay: return "GlobalDecay";
    case TemporalKind::Blowup: return "Blowup";
    case TemporalKind::Extinction: return "Extinction";
    case TemporalKind::Growup: return "Growup";
  }
  return "unknown";
}

const char* m_class_name(MClass cls) {
  switch (cls) {
    case MClass::BelowSobolev: return "BelowSobolev";
    case MClass::Subcritical: return "Subcritical";
    case MClass::Supercritical: return "Supercritical";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail_bound(errc code, const char* name, double value, const char* bound) {
  std::ostringstream os;
  os << name << " = " << value << " violates " << bound;
  raise(code, os.str());
}

}  // namespace

ParameterSet validate_params(double N, double m, double p, double sigma) {
  if (!(N > 2.0)) fail_bound(errc::n_out_of_range, "N", N, "N > 2");
  if (!(m > 0.0 && m < 1.0)) fail_bound(errc::m_out_of_range, "m", m, "0 < m < 1");
  if (!(sigma > -2.0)) fail_bound(errc::sigma_out_of_range, "sigma", sigma, "sigma > -2");
  if (!(p > m)) fail_bound(errc::p_out_of_range, "p", p, "p > m");
  return ParameterSet{N, m, p, sigma};
}

CriticalExponents critical_exponents(const ParameterSet& ps) {
  const double N = ps.N, m = ps.m, p = ps.p, sigma = ps.sigma;
  CriticalExponents ce;
  ce.m_c = (N - 2.0) / N;
  ce.m_s = (N - 2.0) / (N + 2.0);
  ce.p_L = 1.0 + sigma * (1.0 - m) / 2.0;
  ce.p_F = m + (sigma + 2.0) / N;
  ce.p_c = m * (N + sigma) / (N - 2.0);
  ce.p_s = m * (N + 2.0 * sigma + 2.0) / (N - 2.0);
  ce.L = sigma * (m - 1.0) + 2.0 * (p - 1.0);
  ce.sigma_L = 2.0 * (p - 1.0) / (1.0 - m);
  return ce;
}

SimilarityExponents similarity_exponents(const ParameterSet& ps, int sign) {
  if (sign != 1 && sign != -1) raise(errc::bad_argument, "sign must be +1 or -1");
  const CriticalExponents ce = critical_exponents(ps);
  if (std::abs(ps.p - ce.p_L) <= kBoundaryTol)
    raise(errc::degenerate_L, "p = p_L(sigma): L = 0, self-similar exponents degenerate "
                              "to the eternal exponential family");
  SimilarityExponents se;
  se.alpha = (ps.sigma + 2.0) / std::abs(ce.L);
  se.beta = (ps.p - ps.m) / std::abs(ce.L);
  se.sign = sign;
  if (ce.L > 0.0)
    se.kind = sign > 0 ? TemporalKind::GlobalDecay : TemporalKind::Blowup;
  else
    se.kind = sign > 0 ? TemporalKind::Extinction : TemporalKind::Growup;
  return se;
}

MClassification classify_m(const ParameterSet& ps) {
  const CriticalExponents ce = critical_exponents(ps);
  MClassification out;
  out.at_m_s = std::abs(ps.m - ce.m_s) <= kBoundaryTol;
  out.at_m_c = std::abs(ps.m - ce.m_c) <= kBoundaryTol;
  if (out.at_m_s || ps.m < ce.m_s)
    out.cls = MClass::BelowSobolev;
  else if (!out.at_m_c && ps.m < ce.m_c)
    out.cls = MClass::Subcritical;
  else
    out.cls = MClass::Supercritical;
  return out;
}

}  // namespace fdss
