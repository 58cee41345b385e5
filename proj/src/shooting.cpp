#include "shooting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "selfmap.hpp"

namespace fdss {

const char* outcome_class_name(OutcomeClass cls) {
  switch (cls) {
    case OutcomeClass::PositiveTail: return "PositiveTail";
    case OutcomeClass::HitZero: return "HitZero";
    case OutcomeClass::Unbounded: return "Unbounded";
    case OutcomeClass::Failed: return "Failed";
  }
  return "unknown";
}

const char* search_status_name(SearchStatus status) {
  switch (status) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::NotFound: return "NotFound";
    case SearchStatus::NonMonotoneBoundary: return "NonMonotoneBoundary";
  }
  return "unknown";
}

const char* search_route_name(SearchRoute route) {
  return route == SearchRoute::Direct ? "direct" : "selfmap";
}

const char* critical_p_kind_name(CriticalPKind kind) {
  switch (kind) {
    case CriticalPKind::p0: return "p0";
    case CriticalPKind::p1: return "p1";
    case CriticalPKind::p2: return "p2";
  }
  return "unknown";
}

ShotOutcome shoot(const ProfileODE& ode, double D, const IntegrateOptions& opts) {
  ShotOutcome out;
  out.D = D;
  auto prof = std::make_shared<Profile>(integrate_profile(ode, D, opts));
  out.termination = prof->termination;
  out.profile = prof;
  switch (prof->termination) {
    case Termination::ReachedXiMax:
      out.cls = OutcomeClass::PositiveTail;
      out.tail = classify_tail(ode, *prof);
      break;
    case Termination::HitZero:
      out.cls = OutcomeClass::HitZero;
      out.tail = TailBehavior{TailKind::FiniteExtinctionPoint, 0.0, 0.0, ProfileEnd::Infinity};
      break;
    case Termination::ExceededCap:
      out.cls = OutcomeClass::Unbounded;
      out.tail = TailBehavior{TailKind::Unbounded, 0.0, 0.0, ProfileEnd::Infinity};
      break;
    case Termination::StiffFailure:
      out.cls = OutcomeClass::Failed;
      out.tail = TailBehavior{TailKind::Unresolved, 0.0, 0.0, ProfileEnd::Infinity};
      break;
  }
  return out;
}

namespace {

OutcomeClass classify_only(const ProfileODE& ode, double D, const IntegrateOptions& opts) {
  const Profile prof = integrate_profile(ode, D, opts);
  switch (prof.termination) {
    case Termination::ReachedXiMax: return OutcomeClass::PositiveTail;
    case Termination::HitZero: return OutcomeClass::HitZero;
    case Termination::ExceededCap: return OutcomeClass::Unbounded;
    default: return OutcomeClass::Failed;
  }
}

struct RefinedBoundary {
  double D_lo = 0.0;
  double D_hi = 0.0;
  StretchFit fit_lo;
  StretchFit fit_hi;
  std::shared_ptr<Profile> prof_lo;
  std::shared_ptr<Profile> prof_hi;
};

struct DirectSearch {
  std::vector<ScanPoint> scan;
  std::vector<std::pair<double, double>> initial_brackets;
};

RefinedBoundary refine_boundary(const ProfileODE& ode, double D_lo, OutcomeClass cls_lo,
                                double D_hi, const SearchOptions& opts) {
  const double tol = std::max(opts.bracket_rel_tol, 1e-15);
  double lo = std::log(D_lo), hi = std::log(D_hi);
  int failed_in_a_row = 0;
  for (int it = 0; it < 200 && std::expm1(hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const OutcomeClass cls = classify_only(ode, std::exp(mid), opts.integrate);
    // repeated integrator failures mark a hovering crash-flip boundary, not a
    // connection; no point bisecting it to full depth
    failed_in_a_row = cls == OutcomeClass::Failed ? failed_in_a_row + 1 : 0;
    if (failed_in_a_row >= 3) break;
    (cls == cls_lo ? lo : hi) = mid;
  }
  RefinedBoundary rb;
  rb.D_lo = std::exp(lo);
  rb.D_hi = std::exp(hi);
  rb.prof_lo = std::make_shared<Profile>(integrate_profile(ode, rb.D_lo, opts.integrate));
  rb.prof_hi = std::make_shared<Profile>(integrate_profile(ode, rb.D_hi, opts.integrate));
  rb.fit_lo = classify_tail_stretch(ode, *rb.prof_lo);
  rb.fit_hi = classify_tail_stretch(ode, *rb.prof_hi);
  return rb;
}

DirectSearch direct_search(const ProfileODE& ode, const SearchOptions& opts) {
  DirectSearch ds;
  const int n = std::max(2, opts.scan_points);
  ds.scan.resize(n);
  const double llo = std::log(opts.D_min), lhi = std::log(opts.D_max);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double D = std::exp(llo + (lhi - llo) * static_cast<double>(i) / (n - 1));
    const ShotOutcome sh = shoot(ode, D, opts.integrate);
    ds.scan[i] = ScanPoint{D, sh.cls, sh.tail.kind};
  });
  for (int i = 0; i + 1 < n; ++i)
    if (ds.scan[i].cls != ds.scan[i + 1].cls)
      ds.initial_brackets.emplace_back(ds.scan[i].D, ds.scan[i + 1].D);
  return ds;
}

OutcomeClass scan_class_at(const DirectSearch& ds, double D) {
  for (const auto& sp : ds.scan)
    if (sp.D == D) return sp.cls;
  return OutcomeClass::Failed;
}

// Truncates a profile at the end of its detected plateau so that only the
// trusted part goes through the transformation.
Profile truncate_at(const Profile& prof, double xi_hi) {
  Profile out = prof;
  std::size_t keep = out.xi.size();
  while (keep > 0 && out.xi[keep - 1] > xi_hi) --keep;
  out.xi.resize(keep);
  out.f.resize(keep);
  out.h.resize(keep);
  out.termination = Termination::ReachedXiMax;
  return out;
}

// The fast-decay branch through the transformed problem: search the bar-side
// family with the opposite sign, map the separatrix back, classify it at the
// source parameters, and recover D* from the transported tail constant.
bool selfmap_route(const ProfileODE& ode, const SearchOptions& opts, FastDecaySearch& res) {
  SelfMap sm;
  try {
    sm = build_selfmap(ode.ps, ConstantMode::Derived);
  } catch (const Error&) {
    return false;
  }
  ProfileODE bar_ode;
  try {
    bar_ode = make_profile_ode(sm.target, -ode.sign);
  } catch (const Error&) {
    return false;
  }

  SearchOptions bopts = opts;
  bopts.D_min = std::min(opts.D_min, 1e-6);
  bopts.D_max = std::max(opts.D_max, 1e8);
  bopts.scan_points = std::max(opts.scan_points, 96);
  bopts.integrate.xi_max = std::max(opts.integrate.xi_max, 1e5);
  bopts.integrate.points_per_decade = 0;

  DirectSearch ds;
  try {
    ds = direct_search(bar_ode, bopts);
  } catch (const Error&) {
    return false;
  }

  const double g_bar = fast_decay_exponent(sm.target);
  // refine lazily from the largest D; the fast-decay boundary sits at the
  // upper end of the class sequence in the cases of interest
  for (auto it = ds.initial_brackets.rbegin(); it != ds.initial_brackets.rend(); ++it) {
    RefinedBoundary rb;
    try {
      rb = refine_boundary(bar_ode, it->first, scan_class_at(ds, it->first), it->second,
                           bopts);
    } catch (const Error&) {
      continue;
    }
    for (const auto* side : {&rb.fit_lo, &rb.fit_hi}) {
      const Profile& prof = (side == &rb.fit_lo) ? *rb.prof_lo : *rb.prof_hi;
      if (side->tail.kind != TailKind::FastDecay || side->xi_hi <= 0.0) continue;
      // keep only the first stretch of the unstable branch: further out the
      // bracket error is amplified into point-to-point jitter that would
      // pollute the mapped profile's head
      const double cut_hi = std::min(0.3 * side->xi_hi, 1.5 * side->xi_lo);
      Profile cut = truncate_at(prof, cut_hi);
      if (cut.xi.size() < 32) continue;
      Profile img;
      try {
        img = map_profile(sm, cut);
      } catch (const Error&) {
        continue;
      }
      TailBehavior img_tail;
      try {
        img_tail = classify_tail(ode, img);
      } catch (const Error&) {
        continue;
      }
      if (img_tail.kind != TailKind::FastDecay) continue;

      // f(0) = C1 C2^g_bar Cbar' transported from the bar tail constant
      const double f0 = sm.C1 * std::pow(sm.C2, g_bar) * side->tail.fitted_constant;
      const double D_star = std::pow(f0, -1.0 / origin_outer_exponent(ode.ps));
      auto stored = std::make_shared<Profile>(std::move(img));
      stored->D = D_star;
      res.status = SearchStatus::Found;
      res.route = SearchRoute::SelfMapped;
      res.D_star = D_star;
      res.D_star_is_estimate = true;
      res.tail = img_tail;
      res.profile = stored;
      res.mapped_bracket = {rb.D_lo, rb.D_hi};
      std::ostringstream os;
      os << "separatrix located in the transformed family (Nbar=" << sm.target.N
         << ", sigmabar=" << sm.target.sigma << ", sign=" << bar_ode.sign
         << "); bar bracket [" << rb.D_lo << ", " << rb.D_hi
         << "]; D* recovered from the transported tail constant";
      res.notes = os.str();
      return true;
    }
  }
  return false;
}

FastDecaySearch from_boundary(const RefinedBoundary& rb) {
  FastDecaySearch res;
  const bool lo_fast = rb.fit_lo.tail.kind == TailKind::FastDecay;
  const StretchFit& fit = lo_fast ? rb.fit_lo : rb.fit_hi;
  const auto& prof = lo_fast ? rb.prof_lo : rb.prof_hi;
  res.status = SearchStatus::Found;
  res.route = SearchRoute::Direct;
  res.D_star = 0.5 * (rb.D_lo + rb.D_hi);
  res.D_star_is_estimate = false;
  res.tail = fit.tail;
  res.profile = prof;
  return res;
}

}  // namespace

FastDecaySearch find_fast_decay(const ProfileODE& ode, const SearchOptions& opts_in) {
  // Tail connections live many decades out, and the shooting value that hits
  // one can sit far outside the configured window; the hunt widens both the
  // integration span and the scan range (scan reports cover the whole range).
  SearchOptions opts = opts_in;
  opts.integrate.xi_max = std::max(opts.integrate.xi_max, 1e5);
  opts.D_min = std::min(opts.D_min, 1e-6);
  opts.D_max = std::max(opts.D_max, 1e8);
  opts.scan_points = std::max(opts.scan_points, 96);

  FastDecaySearch res;
  const DirectSearch ds = direct_search(ode, opts);
  res.scan = ds.scan;
  res.candidate_brackets = ds.initial_brackets;

  for (auto it = ds.initial_brackets.rbegin(); it != ds.initial_brackets.rend(); ++it) {
    RefinedBoundary rb;
    try {
      rb = refine_boundary(ode, it->first, scan_class_at(ds, it->first), it->second, opts);
    } catch (const Error&) {
      continue;
    }
    if (rb.fit_lo.tail.kind == TailKind::FastDecay ||
        rb.fit_hi.tail.kind == TailKind::FastDecay) {
      FastDecaySearch found = from_boundary(rb);
      found.scan = std::move(res.scan);
      found.candidate_brackets = std::move(res.candidate_brackets);
      if (ds.initial_brackets.size() > 1)
        found.notes = "multiple outcome-class boundaries on the scan; refined from above";
      return found;
    }
  }

  if (opts.allow_selfmap_route && selfmap_route(ode, opts, res)) return res;

  res.status = ds.initial_brackets.size() > 1 ? SearchStatus::NonMonotoneBoundary
                                              : SearchStatus::NotFound;
  if (!ds.initial_brackets.empty())
    res.notes = "class boundaries exist but none carries the fast-decay branch";
  return res;
}

FastDecaySearch find_fast_decay(const ProfileODE& ode, double D_lo, double D_hi,
                                const SearchOptions& opts_in) {
  if (!(D_lo > 0.0 && D_hi > D_lo)) raise(errc::bracket_invalid, "need 0 < D_lo < D_hi");
  SearchOptions opts = opts_in;
  opts.integrate.xi_max = std::max(opts.integrate.xi_max, 1e5);
  const OutcomeClass cls_lo = classify_only(ode, D_lo, opts.integrate);
  const OutcomeClass cls_hi = classify_only(ode, D_hi, opts.integrate);
  if (cls_lo == cls_hi)
    raise(errc::bracket_invalid, "bracket endpoints classify to the same outcome class");
  const RefinedBoundary rb = refine_boundary(ode, D_lo, cls_lo, D_hi, opts);
  FastDecaySearch res = from_boundary(rb);
  res.candidate_brackets.emplace_back(D_lo, D_hi);
  return res;
}

namespace {

bool connection_exists(double N, double m, double p, double sigma, int sign,
                       CriticalPKind kind, const SearchOptions& sopts) {
  const ParameterSet ps = validate_params(N, m, p, sigma);
  const ProfileODE ode = make_profile_ode(ps, sign);
  if (kind == CriticalPKind::p2) {
    // Any D with a dictionary tail counts as an existing connection.
    const int n = std::max(2, sopts.scan_points);
    const double llo = std::log(sopts.D_min), lhi = std::log(sopts.D_max);
    std::vector<char> hit(n, 0);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
      const double D = std::exp(llo + (lhi - llo) * static_cast<double>(i) / (n - 1));
      const ShotOutcome sh = shoot(ode, D, sopts.integrate);
      hit[i] = (sh.tail.kind == TailKind::FastDecay || sh.tail.kind == TailKind::SlowDecay ||
                sh.tail.kind == TailKind::CriticalDecay)
                   ? 1
                   : 0;
    });
    return std::any_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }
  const FastDecaySearch fd = find_fast_decay(ode, sopts);
  if (fd.status == SearchStatus::NotFound) return false;
  if (kind == CriticalPKind::p0) return fd.tail.kind == TailKind::FastDecay;
  return fd.tail.kind == TailKind::FastDecay || fd.tail.kind == TailKind::CriticalDecay;
}

}  // namespace

CriticalPEstimate estimate_critical_p(double N, double m, double sigma, int sign,
                                      CriticalPKind kind, std::pair<double, double> p_bracket,
                                      const CriticalPOptions& opts) {
  ParameterSet probe_ps = validate_params(N, m, std::max({1.0 + 1e-6, m + 1e-6}), sigma);
  const CriticalExponents ce = critical_exponents(probe_ps);
  if (!(m > ce.m_s && m < ce.m_c))
    raise(errc::out_of_range,
          "critical-p estimation needs m in (m_s, m_c); no existence region otherwise");

  auto nudge = [&](double p) {
    // keep probes out of the excluded neighborhood of the stationary locus
    if (std::abs(p - ce.p_s) < opts.p_s_margin)
      return p >= ce.p_s ? ce.p_s + opts.p_s_margin : ce.p_s - opts.p_s_margin;
    return p;
  };

  double p_lo = nudge(p_bracket.first);
  double p_hi = nudge(p_bracket.second);
  if (!(p_lo < p_hi)) raise(errc::bracket_invalid, "need p_lo < p_hi");

  const bool lo_exists = connection_exists(N, m, p_lo, sigma, sign, kind, opts.search);
  const bool hi_exists = connection_exists(N, m, p_hi, sigma, sign, kind, opts.search);
  if (lo_exists == hi_exists)
    raise(errc::bracket_invalid,
          "bracket endpoints have the same existence outcome for the targeted connection");

  while (p_hi - p_lo > opts.p_tol) {
    double mid = nudge(0.5 * (p_lo + p_hi));
    if (mid <= p_lo || mid >= p_hi) break;
    if (connection_exists(N, m, mid, sigma, sign, kind, opts.search) == lo_exists)
      p_lo = mid;
    else
      p_hi = mid;
  }

  CriticalPEstimate est;
  est.sigma = sigma;
  est.kind = kind;
  est.p_lo = p_lo;
  est.p_hi = p_hi;
  std::ostringstream os;
  os << "targeted connection exists " << (lo_exists ? "below" : "above")
     << " the bracket; probes avoid |p - p_s| < " << opts.p_s_margin;
  est.notes = os.str();
  return est;
}

std::vector<std::pair<double, double>> slow_decay_family(const ProfileODE& ode,
                                                         std::span<const double> D_list,
                                                         const IntegrateOptions& opts) {
  std::vector<std::pair<double, double>> out(D_list.size());
  parallel_for(D_list.size(), [&](std::size_t i) {
    const ShotOutcome sh = shoot(ode, D_list[i], opts);
    if (sh.tail.kind != TailKind::SlowDecay)
      raise(errc::bad_argument, "D does not produce a slow-decay profile");
    out[i] = {D_list[i], sh.tail.fitted_constant};
  });
  return out;
}

}  // namespace fdss
