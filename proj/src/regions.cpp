#include "regions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parallel.hpp"

namespace fdss {

const char* region_tag_name(RegionTag tag) {
  switch (tag) {
    case RegionTag::A: return "A";
    case RegionTag::B: return "B";
    case RegionTag::C: return "C";
    case RegionTag::D: return "D";
    case RegionTag::E: return "E";
    case RegionTag::F: return "F";
    case RegionTag::G: return "G";
    case RegionTag::H: return "H";
    case RegionTag::I: return "I";
    case RegionTag::Boundary_pL: return "Boundary_pL";
    case RegionTag::Boundary_pS: return "Boundary_pS";
    case RegionTag::Boundary_mS: return "Boundary_mS";
    case RegionTag::Boundary_mC: return "Boundary_mC";
    case RegionTag::UndeterminedBand: return "UndeterminedBand";
    case RegionTag::NoTag: return "NoTag";
  }
  return "unknown";
}

const char* behavior_name(Behavior b) {
  switch (b) {
    case Behavior::Blowup: return "Blowup";
    case Behavior::GlobalDecayFast: return "GlobalDecayFast";
    case Behavior::GlobalDecaySlow: return "GlobalDecaySlow";
    case Behavior::Growup: return "Growup";
    case Behavior::Extinction: return "Extinction";
    case Behavior::Eternal: return "Eternal";
    case Behavior::Stationary: return "Stationary";
    case Behavior::NonexistenceAll: return "NonexistenceAll";
  }
  return "unknown";
}

namespace {

RegionLabel untagged_label(const ParameterSet& ps, const CriticalExponents& ce) {
  // sigma < 0: behavior sets only, the letter map is drawn for sigma >= 0.
  // p_L < 1 here, so p > max(1, p_L) reduces to p > 1.
  RegionLabel lab;
  lab.tag = RegionTag::NoTag;
  if (ps.m <= ce.m_s) {
    if (ps.p > 1.0) {
      lab.behaviors = {Behavior::NonexistenceAll};
      lab.predicate = "sigma<0; m<=m_s; p>max(1,p_L)";
    } else {
      lab.predicate = "sigma<0; m<=m_s; p<=1";
    }
  } else if (ps.m < ce.m_c) {
    if (ps.p > ce.p_s && ps.p > 1.0) {
      lab.behaviors = {Behavior::Blowup};
      lab.undetermined_band = true;
      lab.predicate = "sigma<0; m_s<m<m_c; p>max(1,p_s)";
    } else if (ps.p > 1.0) {
      lab.behaviors = {Behavior::GlobalDecayFast, Behavior::GlobalDecaySlow};
      lab.predicate = "sigma<0; m_s<m<m_c; max(1,p_L)<p<p_s";
    } else {
      lab.predicate = "sigma<0; m_s<m<m_c; p<=1";
    }
  } else {
    lab.predicate = "sigma<0; m>=m_c";
  }
  return lab;
}

}  // namespace

RegionLabel classify_region(const ParameterSet& ps) {
  const CriticalExponents ce = critical_exponents(ps);
  if (ps.sigma < 0.0) return untagged_label(ps, ce);

  RegionLabel lab;
  auto pred = [&](const char* text) { lab.predicate = text; };

  if (std::abs(ps.p - ce.p_s) <= kBoundaryTol) {
    lab.tag = RegionTag::Boundary_pS;
    lab.behaviors = {Behavior::Stationary};
    pred("p = p_s");
    return lab;
  }
  if (std::abs(ps.p - ce.p_L) <= kBoundaryTol) {
    lab.tag = RegionTag::Boundary_pL;
    lab.behaviors = {Behavior::Eternal};
    pred("p = p_L");
    return lab;
  }
  if (std::abs(ps.m - ce.m_s) <= kBoundaryTol) {
    lab.tag = RegionTag::Boundary_mS;
    pred("m = m_s");
    return lab;
  }
  if (std::abs(ps.m - ce.m_c) <= kBoundaryTol) {
    lab.tag = RegionTag::Boundary_mC;
    pred("m = m_c");
    return lab;
  }

  if (ps.p <= 1.0) {
    // the phase map is drawn for p > 1
    lab.tag = RegionTag::UndeterminedBand;
    pred("p <= 1: outside the drawn map");
    return lab;
  }

  if (ps.m < ce.m_s) {
    if (ps.p > ce.p_L) {
      lab.tag = RegionTag::G;
      lab.behaviors = {Behavior::NonexistenceAll};
      pred("m < m_s; p > p_L");
    } else if (ps.p > ce.p_s) {
      lab.tag = RegionTag::C;
      lab.behaviors = {Behavior::Growup, Behavior::Extinction};
      pred("m < m_s; p_s < p < p_L");
    } else if (ps.p > ce.p_c) {
      lab.tag = RegionTag::I;
      lab.behaviors = {Behavior::Extinction};
      lab.partial_claim = true;  // established for p close to p_s
      pred("m < m_s; p_c < p < p_s");
    } else {
      lab.tag = RegionTag::UndeterminedBand;
      pred("m < m_s; 1 < p <= p_c");
    }
    return lab;
  }

  if (ps.m < ce.m_c) {
    if (ps.p < ce.p_L) {
      lab.tag = RegionTag::H;
      lab.behaviors = {Behavior::NonexistenceAll};
      pred("m_s < m < m_c; 1 < p < p_L");
    } else if (ps.p < ce.p_s) {
      lab.tag = RegionTag::E;
      lab.behaviors = {Behavior::GlobalDecayFast, Behavior::GlobalDecaySlow};
      pred("m_s < m < m_c; p_L < p < p_s");
    } else {
      lab.tag = RegionTag::F;
      lab.behaviors = {Behavior::Blowup};
      lab.undetermined_band = true;  // the p0 <= p1 <= p2 thresholds are not pinned
      pred("m_s < m < m_c; p > p_s");
    }
    return lab;
  }

  // m in (m_c, 1): p_L < p_F < p_c < p_s
  if (ps.p < ce.p_L) {
    lab.tag = RegionTag::H;
    lab.behaviors = {Behavior::NonexistenceAll};
    pred("m > m_c; 1 < p < p_L");
  } else if (ps.p < ce.p_F) {
    lab.tag = RegionTag::A;
    lab.behaviors = {Behavior::NonexistenceAll};
    lab.partial_claim = true;  // nonexistence established on at least part of (p_L, p_F)
    pred("m > m_c; p_L < p < p_F");
  } else if (ps.p < ce.p_c) {
    lab.tag = RegionTag::D;
    lab.behaviors = {Behavior::GlobalDecaySlow};
    pred("m > m_c; p_F < p < p_c");
  } else if (ps.p < ce.p_s) {
    lab.tag = RegionTag::B;
    lab.behaviors = {Behavior::GlobalDecayFast};
    pred("m > m_c; p_c < p < p_s");
  } else {
    lab.tag = RegionTag::F;
    lab.behaviors = {Behavior::Blowup};
    pred("m > m_c; p > p_s");
  }
  return lab;
}

RegionGrid region_grid(double N, double sigma, std::pair<double, double> p_range,
                       std::pair<double, double> m_range, int res_p, int res_m) {
  if (res_p < 2 || res_m < 2) raise(errc::bad_argument, "resolution must be >= 2 per axis");
  if (!(N > 2.0)) raise(errc::n_out_of_range, "N must be > 2");
  if (!(sigma > -2.0)) raise(errc::sigma_out_of_range, "sigma must be > -2");

  RegionGrid grid;
  grid.N = N;
  grid.sigma = sigma;
  grid.p_axis.resize(res_p);
  grid.m_axis.resize(res_m);
  for (int i = 0; i < res_p; ++i)
    grid.p_axis[i] = p_range.first + (p_range.second - p_range.first) * i / (res_p - 1.0);
  for (int j = 0; j < res_m; ++j)
    grid.m_axis[j] = m_range.first + (m_range.second - m_range.first) * j / (res_m - 1.0);

  grid.cells.resize(static_cast<std::size_t>(res_p) * res_m);
  parallel_for(static_cast<std::size_t>(res_m), [&](std::size_t jm) {
    for (int ip = 0; ip < res_p; ++ip) {
      const double m = grid.m_axis[jm];
      const double p = grid.p_axis[ip];
      RegionLabel lab;
      if (!(m > 0.0 && m < 1.0) || !(p > m)) {
        lab.tag = RegionTag::UndeterminedBand;
        lab.predicate = "outside the parameter ranges";
      } else {
        lab = classify_region(ParameterSet{N, m, p, sigma});
      }
      grid.cells[jm * res_p + ip] = std::move(lab);
    }
  });

  grid.curve_p_L.resize(res_m);
  grid.curve_p_F.resize(res_m);
  grid.curve_p_c.resize(res_m);
  grid.curve_p_s.resize(res_m);
  for (int j = 0; j < res_m; ++j) {
    const double m = grid.m_axis[j];
    grid.curve_p_L[j] = 1.0 + sigma * (1.0 - m) / 2.0;
    grid.curve_p_F[j] = m + (sigma + 2.0) / N;
    grid.curve_p_c[j] = m * (N + sigma) / (N - 2.0);
    grid.curve_p_s[j] = m * (N + 2.0 * sigma + 2.0) / (N - 2.0);
  }
  grid.m_s = (N - 2.0) / (N + 2.0);
  grid.m_c = (N - 2.0) / N;
  return grid;
}

BlowupReport hotspot_diagnostics(const ParameterSet& ps, const Profile& prof,
                                 const SimilarityExponents& se, const TailBehavior& tail) {
  double gamma;
  switch (tail.kind) {
    case TailKind::FastDecay: gamma = fast_decay_exponent(ps); break;
    case TailKind::SlowDecay: gamma = slow_decay_exponent(ps); break;
    case TailKind::CriticalDecay: gamma = critical_decay_exponent(ps); break;
    default:
      raise(errc::unsupported_behavior, "hot-spot diagnostics need a dictionary tail");
  }
  if (prof.f.empty()) raise(errc::bad_argument, "empty profile");

  BlowupReport rep;
  rep.alpha = se.alpha;
  rep.beta = se.beta;
  rep.gamma = gamma;
  rep.fixed_point_exponent = -se.alpha - se.beta * gamma;
  const auto it = std::max_element(prof.f.begin(), prof.f.end());
  rep.hotspot_xi0 = prof.xi[static_cast<std::size_t>(it - prof.f.begin())];
  rep.blowup_set_is_origin = se.kind == TemporalKind::Blowup;

  std::ostringstream law;
  switch (se.kind) {
    case TemporalKind::GlobalDecay:
      law << "sup|u(t)| = t^(-" << se.alpha << ") f(0)";
      break;
    case TemporalKind::Blowup:
      law << "sup|u(t)| = (T-t)^(-" << se.alpha << ") f(" << rep.hotspot_xi0
          << "), maximum at |x| = (T-t)^(" << se.beta << ") xi0 -> 0";
      break;
    case TemporalKind::Extinction:
      law << "sup|u(t)| = (T-t)^(" << se.alpha << ") f(0)";
      break;
    case TemporalKind::Growup:
      law << "sup|u(t)| = t^(" << se.alpha << ") f(0)";
      break;
  }
  rep.supnorm_law = law.str();
  return rep;
}

}  // namespace fdss
