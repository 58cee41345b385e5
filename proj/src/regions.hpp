#pragma once

#include <string>
#include <utility>
#include <vector>

#include "params.hpp"
#include "profiles.hpp"

namespace fdss {

/// Letter tags of the (p, m) phase map for generic sigma >= 0, plus the
/// boundary loci. NoTag carries behavior sets for sigma < 0 inputs, where the
/// map is not drawn; UndeterminedBand marks cells with no established claim.
enum class RegionTag {
  A,
  B,
  C,
  D,
  E,
  F,
  G,
  H,
  I,
  Boundary_pL,
  Boundary_pS,
  Boundary_mS,
  Boundary_mC,
  UndeterminedBand,
  NoTag,
};
const char* region_tag_name(RegionTag tag);

enum class Behavior {
  Blowup,
  GlobalDecayFast,
  GlobalDecaySlow,
  Growup,
  Extinction,
  Eternal,
  Stationary,
  NonexistenceAll,
};
const char* behavior_name(Behavior b);

struct RegionLabel {
  RegionTag tag = RegionTag::UndeterminedBand;
  std::vector<Behavior> behaviors;
  bool partial_claim = false;      ///< nonexistence claimed only on part of the band
  bool undetermined_band = false;  ///< blow-up band carries the unresolved p-threshold structure
  std::string predicate;           ///< comparison chain that produced the tag
};

/// Deterministic label from the exponent comparisons
/// {m vs m_s, m_c;  p vs 1, p_L, p_F, p_c, p_s}, boundaries detected at
/// absolute tolerance 1e-12.
RegionLabel classify_region(const ParameterSet& ps);

struct RegionGrid {
  double N = 0.0;
  double sigma = 0.0;
  std::vector<double> p_axis;
  std::vector<double> m_axis;
  std::vector<RegionLabel> cells;  ///< row-major, index = im * p_axis.size() + ip
  // analytic boundary curves sampled on m_axis for overlays
  std::vector<double> curve_p_L;
  std::vector<double> curve_p_F;
  std::vector<double> curve_p_c;
  std::vector<double> curve_p_s;
  double m_s = 0.0;
  double m_c = 0.0;
};

RegionGrid region_grid(double N, double sigma, std::pair<double, double> p_range,
                       std::pair<double, double> m_range, int res_p, int res_m);

/// Hot-spot and blow-up-set diagnostics of a classified profile.
struct BlowupReport {
  double alpha = 0.0;
  double beta = 0.0;
  double hotspot_xi0 = 0.0;            ///< argmax of f on the grid
  double gamma = 0.0;                  ///< tail decay exponent
  double fixed_point_exponent = 0.0;   ///< -alpha - beta*gamma (>= 0, 0 iff slow decay)
  bool blowup_set_is_origin = false;   ///< maximum location (T-t)^beta xi0 -> 0
  std::string supnorm_law;
};

/// Requires a profile whose tail classified to a dictionary exponent.
BlowupReport hotspot_diagnostics(const ParameterSet& ps, const Profile& prof,
                                 const SimilarityExponents& se, const TailBehavior& tail);

}  // namespace fdss
