#include "selfmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fdss {

const char* constant_mode_name(ConstantMode mode) {
  return mode == ConstantMode::Derived ? "DerivedConstants" : "PrintedConstants";
}

namespace {

double theta_of(const ParameterSet& ps) {
  return (ps.m * ps.N - ps.N + 2.0) / (2.0 * ps.m);
}

void require_subcritical(const ParameterSet& ps) {
  const CriticalExponents ce = critical_exponents(ps);
  if (!(ps.m < ce.m_c - kBoundaryTol))
    raise(errc::supercritical_m, "the transformation needs m < m_c (theta < 0)");
}

// Manufactured-function check: push u(r) = (1+r^2)^(-k) through the map and
// difference the two sides of the radial equation. Everything is closed form,
// so a correct constant pair leaves only roundoff.
double manufactured_residual(const SelfMap& sm) {
  const double N = sm.source.N, m = sm.source.m, p = sm.source.p, sigma = sm.source.sigma;
  const double Nb = sm.target.N, sb = sm.target.sigma;
  const double th = sm.theta, C1 = sm.C1, C2 = sm.C2;
  const double E = (N - 2.0) / m;
  const double k = 1.0;

  double worst = 0.0;
  for (int i = 0; i < 17; ++i) {
    const double r = 0.3 * std::pow(10.0, i / 8.0);
    const double b = 1.0 + r * r;

    // source side: E[u] = (u^m)'' + (N-1)/r (u^m)' + r^sigma u^p
    const double u = std::pow(b, -k);
    const double wm = std::pow(b, -k * m);
    const double wm1 = -2.0 * k * m * r * std::pow(b, -k * m - 1.0);
    const double wm2 = -2.0 * k * m * std::pow(b, -k * m - 1.0) +
                       4.0 * k * m * (k * m + 1.0) * r * r * std::pow(b, -k * m - 2.0);
    const double Eu = wm2 + (N - 1.0) / r * wm1 + std::pow(r, sigma) * std::pow(u, p);

    // target side, parametrized by r: wbar = ubar^m = C1^(-m) r^(N-2) u^m
    const double wb1 = std::pow(C1, -m) *
                       ((N - 2.0) * std::pow(r, N - 3.0) * wm + std::pow(r, N - 2.0) * wm1);
    const double wb2 = std::pow(C1, -m) *
                       ((N - 2.0) * (N - 3.0) * std::pow(r, N - 4.0) * wm +
                        2.0 * (N - 2.0) * std::pow(r, N - 3.0) * wm1 +
                        std::pow(r, N - 2.0) * wm2);
    const double drbar = C2 * th * std::pow(r, th - 1.0);
    const double d1 = wb1 / drbar;                                        // (ubar^m)_rbar
    const double d2 = (wb2 - (th - 1.0) * wb1 / r) / (drbar * drbar);     // (ubar^m)_rbarrbar
    const double rbar = C2 * std::pow(r, th);
    const double ubar = std::pow(C1, -1.0) * std::pow(r, E) * u;
    const double Ebar = d2 + (Nb - 1.0) / rbar * d1 + std::pow(rbar, sb) * std::pow(ubar, p);

    const double lhs = Ebar;
    const double rhs = std::pow(C1, -1.0) * std::pow(r, E) * Eu;
    const double scale = std::max({std::abs(d2), std::abs((Nb - 1.0) / rbar * d1),
                                   std::abs(std::pow(rbar, sb) * std::pow(ubar, p)),
                                   std::abs(rhs)});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

}  // namespace

ParameterSet map_params_only(const ParameterSet& ps) {
  require_subcritical(ps);
  const double N = ps.N, m = ps.m, p = ps.p, sigma = ps.sigma;
  const double denom = m * N - N + 2.0;
  const double Nbar = -2.0 * (N - 2.0 * m - 2.0) / denom;
  const double sigmabar = -2.0 * ((N - 2.0) * (p - 1.0) - m * sigma) / denom;
  if (!(sigmabar > -2.0)) {
    std::ostringstream os;
    os << "mapped sigmabar = " << sigmabar << " <= -2 (needs p > p_c(sigma))";
    raise(errc::target_out_of_range, os.str());
  }
  return validate_params(Nbar, m, p, sigmabar);
}

SelfMap build_selfmap(const ParameterSet& ps, ConstantMode mode) {
  require_subcritical(ps);
  const CriticalExponents ce = critical_exponents(ps);
  if (std::abs(ps.p - ce.p_L) <= kBoundaryTol)
    raise(errc::degenerate_L, "p = p_L(sigma): L = 0, the transformation degenerates");

  SelfMap sm;
  sm.source = ps;
  sm.target = map_params_only(ps);
  sm.theta = theta_of(ps);
  sm.mode = mode;

  const double Q = 4.0 * ps.m * ps.m / std::pow(ps.m * ps.N - ps.N + 2.0, 2.0);
  const double sigmabar = sm.target.sigma;

  if (mode == ConstantMode::Printed) {
    if (std::abs(ps.sigma) <= kBoundaryTol)
      raise(errc::printed_constants_degenerate,
            "displayed constants are 0/0 at sigma = 0 (C2 exponent -(p-1)/sigma)");
    sm.C1 = std::pow(Q, ps.sigma / ce.L);
    sm.C2 = std::pow(sm.C1, -(ps.p - 1.0) / ps.sigma);
  } else {
    if (std::abs(sigmabar) <= kBoundaryTol) {
      // Continuity limit of the coefficient-matching conditions at
      // sigmabar = 0: C1 = 1, C2 the positive root of theta^2 C2^2 = 1.
      sm.C1 = 1.0;
      sm.C2 = 1.0 / std::abs(sm.theta);
    } else {
      const double Lbar = critical_exponents(sm.target).L;
      sm.C1 = std::pow(Q, sigmabar / Lbar);
      sm.C2 = std::pow(sm.C1, (ps.p - 1.0) / sigmabar);
    }
    // Defining conditions must hold to near machine precision.
    const double cond1 = sm.theta * sm.theta * std::pow(sm.C1, ps.m - 1.0) * sm.C2 * sm.C2;
    const double cond2 = std::pow(sm.C1, ps.p - 1.0) / std::pow(sm.C2, sigmabar);
    if (std::abs(cond1 - 1.0) > 1e-12 || std::abs(cond2 - 1.0) > 1e-12)
      raise(errc::numerical_failure, "derived constants fail the matching conditions");
  }

  if (!std::isfinite(sm.C1) || !std::isfinite(sm.C2) || !(sm.C1 > 0.0) || !(sm.C2 > 0.0))
    raise(errc::numerical_failure, "constant derivation overflowed");

  sm.build_residual = manufactured_residual(sm);
  sm.residual_warning = sm.build_residual > 1e-8;
  if (mode == ConstantMode::Derived && sm.residual_warning)
    raise(errc::numerical_failure, "derived constants fail the manufactured residual check");
  return sm;
}

SelfMap inverse(const SelfMap& sm) {
  if (sm.mode != ConstantMode::Derived)
    raise(errc::bad_argument, "inverse is defined for DerivedConstants maps");
  return build_selfmap(sm.target, ConstantMode::Derived);
}

namespace {

void check_snapshot(const RadialSnapshot& snap) {
  if (snap.r.size() != snap.u.size() || snap.r.empty())
    raise(errc::bad_argument, "snapshot grids must be non-empty and equal length");
  for (std::size_t i = 0; i < snap.r.size(); ++i) {
    if (!(snap.r[i] > 0.0)) raise(errc::bad_argument, "snapshot radii must be positive");
    if (i > 0 && !(snap.r[i] > snap.r[i - 1]))
      raise(errc::bad_argument, "snapshot radii must be strictly increasing");
    if (!(snap.u[i] > 0.0)) raise(errc::bad_argument, "snapshot values must be positive");
  }
}

}  // namespace

RadialSnapshot map_radial_snapshot(const SelfMap& sm, const RadialSnapshot& snap) {
  check_snapshot(snap);
  const double E = (sm.source.N - 2.0) / sm.source.m;
  const std::size_t n = snap.r.size();
  RadialSnapshot out;
  out.r.resize(n);
  out.u.resize(n);
  // theta < 0 reverses the orientation; write back-to-front to stay sorted.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    out.r[i] = sm.C2 * std::pow(snap.r[j], sm.theta);
    out.u[i] = std::pow(snap.r[j], E) * snap.u[j] / sm.C1;
  }
  return out;
}

RadialSnapshot unmap_radial_snapshot(const SelfMap& sm, const RadialSnapshot& snap) {
  check_snapshot(snap);
  const double E = (sm.source.N - 2.0) / sm.source.m;
  const std::size_t n = snap.r.size();
  RadialSnapshot out;
  out.r.resize(n);
  out.u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    const double r = std::pow(snap.r[j] / sm.C2, 1.0 / sm.theta);
    out.r[i] = r;
    out.u[i] = sm.C1 * std::pow(r, -E) * snap.u[j];
  }
  return out;
}

Profile map_profile(const SelfMap& sm, const Profile& bar_profile) {
  const ParameterSet& tgt = sm.target;
  const ParameterSet& bps = bar_profile.ode.ps;
  if (std::abs(bps.N - tgt.N) > 1e-9 || std::abs(bps.sigma - tgt.sigma) > 1e-9 ||
      std::abs(bps.m - tgt.m) > 1e-9 || std::abs(bps.p - tgt.p) > 1e-9)
    raise(errc::bad_argument, "profile parameters do not match the map's target");
  for (double v : bar_profile.f)
    if (!(v > 0.0)) raise(errc::non_positive_profile, "profile must be positive");

  const double N = sm.source.N, m = sm.source.m;
  const double E = (N - 2.0) / m;
  const std::size_t n = bar_profile.xi.size();

  Profile out;
  out.ode = make_profile_ode(sm.source, -bar_profile.ode.sign);
  out.D = std::numeric_limits<double>::quiet_NaN();
  out.termination = Termination::ReachedXiMax;
  out.xi.resize(n);
  out.f.resize(n);
  out.h.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;  // theta < 0 reverses the grid
    const double xibar = bar_profile.xi[j];
    const double fbar = bar_profile.f[j];
    const double hbar = bar_profile.h[j];
    const double xi = std::pow(xibar / sm.C2, 1.0 / sm.theta);
    out.xi[i] = xi;
    out.f[i] = sm.C1 * std::pow(xi, -E) * fbar;
    // h = (f^m)' by the chain rule:
    out.h[i] = std::pow(sm.C1, m) * std::pow(xi, -(N - 1.0)) *
               (sm.theta * xibar * hbar - (N - 2.0) * std::pow(fbar, m));
  }
  out.xi0 = out.xi.front();
  return out;
}

SimilarityExponents map_similarity_exponents(const SelfMap& sm,
                                             const SimilarityExponents& bar) {
  const SimilarityExponents expect = similarity_exponents(sm.target, bar.sign);
  if (std::abs(expect.alpha - bar.alpha) > 1e-9 * std::abs(expect.alpha) ||
      std::abs(expect.beta - bar.beta) > 1e-9 * std::abs(expect.beta))
    raise(errc::bad_argument, "exponents were not built for the map's target parameters");
  return similarity_exponents(sm.source, -bar.sign);
}

TailBehavior map_tail_behavior(const SelfMap& sm, const TailBehavior& bar) {
  const ParameterSet& src = sm.source;
  const ParameterSet& tgt = sm.target;
  TailBehavior out;
  double gbar;  // bar-side exponent used for the constant transport
  if (bar.kind == TailKind::FastDecay && bar.end == ProfileEnd::Infinity) {
    gbar = fast_decay_exponent(tgt);
    out.kind = TailKind::BoundedPositiveAtOrigin;
    out.end = ProfileEnd::Origin;
    out.fitted_exponent = 0.0;
  } else if (bar.kind == TailKind::BoundedPositiveAtOrigin && bar.end == ProfileEnd::Origin) {
    gbar = 0.0;
    out.kind = TailKind::FastDecay;
    out.end = ProfileEnd::Infinity;
    out.fitted_exponent = fast_decay_exponent(src);
  } else if (bar.kind == TailKind::SlowDecay) {
    gbar = slow_decay_exponent(tgt);
    out.kind = TailKind::SlowDecay;
    out.end = bar.end == ProfileEnd::Infinity ? ProfileEnd::Origin : ProfileEnd::Infinity;
    out.fitted_exponent = slow_decay_exponent(src);
  } else if (bar.kind == TailKind::CriticalDecay && bar.end == ProfileEnd::Origin) {
    gbar = critical_decay_exponent(tgt);
    out.kind = TailKind::CriticalDecay;
    out.end = ProfileEnd::Infinity;
    out.fitted_exponent = critical_decay_exponent(src);
  } else {
    raise(errc::unsupported_behavior,
          std::string("no transport rule for ") + tail_kind_name(bar.kind) + "@" +
              profile_end_name(bar.end));
  }
  out.fitted_constant = sm.C1 * bar.fitted_constant * std::pow(sm.C2, gbar);
  return out;
}

IdentityReport verify_identities(const ParameterSet& ps) {
  require_subcritical(ps);
  const CriticalExponents ce = critical_exponents(ps);
  if (std::abs(ps.p - ce.p_L) <= kBoundaryTol)
    raise(errc::degenerate_L, "identities need L != 0");

  const ParameterSet tgt = map_params_only(ps);
  const CriticalExponents cebar = critical_exponents(tgt);
  const ParameterSet back = map_params_only(tgt);
  const double N = ps.N, m = ps.m, p = ps.p, sigma = ps.sigma;
  const double denom = m * N - N + 2.0;
  const double theta = theta_of(ps);
  const double theta_bar = theta_of(tgt);

  IdentityReport rep;
  auto push = [&rep](const std::string& name, double lhs, double rhs) {
    rep.entries.push_back(IdentityEntry{name, lhs, rhs, lhs - rhs});
  };

  push("sobolev_symmetry", p - cebar.p_s, ce.p_s - p);
  push("Nbar_minus_2", tgt.N - 2.0, -2.0 * m * (N - 2.0) / denom);
  push("m_minus_ms_of_Nbar", m - cebar.m_s, m * (m - ce.m_s) / (m - 2.0 * ce.m_s));
  push("sigmabar_minus_sigmaL", tgt.sigma - ce.sigma_L,
       -2.0 * m * ce.L / ((1.0 - m) * denom));
  push("p_minus_pc_of_sigmabar", p - cebar.p_c, m * (sigma + 2.0) / (N - 2.0));
  push("Lbar", cebar.L, 2.0 * m * ce.L / denom);
  push("double_map_N", back.N, N);
  push("double_map_sigma", back.sigma, sigma);
  push("theta_bar_inverse", theta_bar, 1.0 / theta);

  rep.max_abs_residual = 0.0;
  for (const auto& e : rep.entries)
    rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(e.residual));

  const double lhs_sign = m - cebar.m_s;
  const double rhs_sign = ce.m_s - m;
  rep.range_signs_agree = (lhs_sign == 0.0 && rhs_sign == 0.0) ||
                          (lhs_sign > 0.0) == (rhs_sign > 0.0);
  return rep;
}

ConstantModeComparison compare_constant_modes(const ParameterSet& ps) {
  ConstantModeComparison cmp;
  cmp.derived = build_selfmap(ps, ConstantMode::Derived);
  cmp.printed_degenerate = std::abs(ps.sigma) <= kBoundaryTol;
  if (cmp.printed_degenerate) {
    cmp.printed_C1 = std::numeric_limits<double>::quiet_NaN();
    cmp.printed_C2 = std::numeric_limits<double>::quiet_NaN();
    cmp.printed_residual = std::numeric_limits<double>::quiet_NaN();
  } else {
    const SelfMap printed = build_selfmap(ps, ConstantMode::Printed);
    cmp.printed_C1 = printed.C1;
    cmp.printed_C2 = printed.C2;
    cmp.printed_residual = printed.build_residual;
  }
  return cmp;
}

}  // namespace fdss
