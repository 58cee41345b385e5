#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "profiles.hpp"

namespace fdss {

/// Coarse classification used to bracket shooting boundaries.
enum class OutcomeClass { PositiveTail, HitZero, Unbounded, Failed };
const char* outcome_class_name(OutcomeClass cls);

struct ShotOutcome {
  double D = 0.0;
  Termination termination = Termination::ReachedXiMax;
  TailBehavior tail;  ///< FiniteExtinctionPoint / Unbounded for non-positive terminations
  OutcomeClass cls = OutcomeClass::Failed;
  std::shared_ptr<const Profile> profile;
};

/// One integration plus classification; deterministic for fixed inputs.
ShotOutcome shoot(const ProfileODE& ode, double D, const IntegrateOptions& opts = {});

struct SearchOptions {
  double D_min = 1e-4;
  double D_max = 1e4;
  int scan_points = 64;
  /// Separatrix profiles shadow the connection only while the bracket error
  /// stays below the unstable-mode growth, so the bisection runs close to
  /// machine precision (well past the 1e-10 reporting requirement).
  double bracket_rel_tol = 1e-13;
  IntegrateOptions integrate;
  bool allow_selfmap_route = true;  ///< fall back to the transformed problem
};

enum class SearchStatus { Found, NotFound, NonMonotoneBoundary };
const char* search_status_name(SearchStatus status);

enum class SearchRoute { Direct, SelfMapped };
const char* search_route_name(SearchRoute route);

struct ScanPoint {
  double D;
  OutcomeClass cls;
  TailKind tail;
};

/// Fast-decay connections are unstable in both family directions, so the
/// search runs on two routes:
///  - Direct: log-spaced D scan; every outcome-class change is bisected to
///    bracket_rel_tol and the endpoint profiles are classified on their
///    longest dictionary-slope plateau (they shadow the separatrix well past
///    the last decade).
///  - SelfMapped: when no direct boundary carries the fast-decay branch, the
///    same search runs on the transformed parameters with the opposite sign,
///    where the connection appears as a crisp class boundary; the separatrix
///    is mapped back, classified at the original parameters, and D* is
///    recovered from the transported tail constant (an estimate, flagged).
struct FastDecaySearch {
  SearchStatus status = SearchStatus::NotFound;
  SearchRoute route = SearchRoute::Direct;
  double D_star = 0.0;
  bool D_star_is_estimate = false;  ///< true for the self-mapped route
  TailBehavior tail;
  std::shared_ptr<const Profile> profile;
  std::vector<ScanPoint> scan;
  std::vector<std::pair<double, double>> candidate_brackets;
  std::pair<double, double> mapped_bracket{0.0, 0.0};  ///< bar-side bracket when route=SelfMapped
  std::string notes;
};

FastDecaySearch find_fast_decay(const ProfileODE& ode, const SearchOptions& opts = {});

/// Same search on an explicit starting bracket (endpoints must classify to
/// different outcome classes); direct route only.
FastDecaySearch find_fast_decay(const ProfileODE& ode, double D_lo, double D_hi,
                                const SearchOptions& opts = {});

enum class CriticalPKind { p0, p1, p2 };
const char* critical_p_kind_name(CriticalPKind kind);

struct CriticalPEstimate {
  double sigma;
  CriticalPKind kind;
  double p_lo;
  double p_hi;
  std::string notes;
};

struct CriticalPOptions {
  double p_tol = 1e-3;       ///< absolute bisection tolerance on p
  double p_s_margin = 1e-3;  ///< excluded neighborhood of the stationary locus
  SearchOptions search;
};

/// Outer bisection on p of the existence outcome of the targeted connection
/// (fast decay for p0, fast-or-critical for p1, any dictionary tail for p2).
/// Always reports a bracket, never a point claim.
CriticalPEstimate estimate_critical_p(double N, double m, double sigma, int sign,
                                      CriticalPKind kind, std::pair<double, double> p_bracket,
                                      const CriticalPOptions& opts = {});

/// Fitted slow-decay constants K (f ~ K xi^(-(sigma+2)/(p-m))) for a list of
/// shooting parameters that classify SlowDecay.
std::vector<std::pair<double, double>> slow_decay_family(const ProfileODE& ode,
                                                         std::span<const double> D_list,
                                                         const IntegrateOptions& opts = {});

}  // namespace fdss
