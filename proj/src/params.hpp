#pragma once

#include "errors.hpp"

namespace fdss {

// Absolute tolerance for boundary detection on exponent comparisons
// (m vs m_s, m_c and p vs p_L, p_s). All quantities are O(1).
inline constexpr double kBoundaryTol = 1e-12;

/// Coefficients of the radial equation u_t = (u^m)'' + (N-1)/r (u^m)' + r^sigma u^p.
/// N is a real coefficient, not restricted to integer dimensions.
struct ParameterSet {
  double N;      ///< dimension coefficient, > 2
  double m;      ///< diffusion exponent, 0 < m < 1
  double p;      ///< reaction exponent, p > m
  double sigma;  ///< weight exponent, sigma > -2
};

/// Critical exponents attached to a parameter set.
///
///   m_c = (N-2)/N             m_s = (N-2)/(N+2)
///   p_L = 1 + sigma(1-m)/2    p_F = m + (sigma+2)/N
///   p_c = m(N+sigma)/(N-2)    p_s = m(N+2*sigma+2)/(N-2)
///   L   = sigma(m-1) + 2(p-1) sigma_L = 2(p-1)/(1-m)
///
/// L = 0 exactly when p = p_L(sigma); sigma < sigma_L exactly when L > 0.
struct CriticalExponents {
  double m_c;
  double m_s;
  double p_L;
  double p_F;
  double p_c;
  double p_s;
  double L;
  double sigma_L;
};

/// Temporal behavior of a self-similar solution, a pure function of
/// (sign of L, equation sign s):
///   L > 0, s = +1 : global decay   u = t^(-alpha) f(|x| t^(-beta))
///   L > 0, s = -1 : blow-up        u = (T-t)^(-alpha) f(|x| (T-t)^(-beta))
///   L < 0, s = +1 : extinction     u = (T-t)^(alpha) f(|x| (T-t)^(beta))
///   L < 0, s = -1 : grow-up        u = t^(alpha) f(|x| t^(beta))
enum class TemporalKind { GlobalDecay, Blowup, Extinction, Growup };

const char* temporal_kind_name(TemporalKind kind);

/// Self-similar exponents, stored positive. The (s, sign L) pair carries all
/// orientation information; alpha = (sigma+2)/|L|, beta = (p-m)/|L|.
struct SimilarityExponents {
  double alpha;
  double beta;
  int sign;  ///< s in the profile equation, +1 or -1
  TemporalKind kind;
};

enum class MClass { BelowSobolev, Subcritical, Supercritical };

const char* m_class_name(MClass cls);

struct MClassification {
  MClass cls;
  bool at_m_s;  ///< |m - m_s| <= kBoundaryTol
  bool at_m_c;  ///< |m - m_c| <= kBoundaryTol
};

/// Checks N > 2, 0 < m < 1, sigma > -2, p > m. Throws Error naming the
/// violated bound.
ParameterSet validate_params(double N, double m, double p, double sigma);

CriticalExponents critical_exponents(const ParameterSet& ps);

/// Throws errc::degenerate_L when p = p_L(sigma): the self-similar family
/// degenerates to the eternal exponential solutions.
SimilarityExponents similarity_exponents(const ParameterSet& ps, int sign);

MClassification classify_m(const ParameterSet& ps);

}  // namespace fdss
