#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "params.hpp"
#include "profiles.hpp"
#include "regions.hpp"

using namespace fdss;

TEST_SUITE("regions") {

TEST_CASE("frozen classifications") {
  const RegionLabel e = classify_region(validate_params(3, 0.25, 1.2, 0));
  CHECK(e.tag == RegionTag::E);
  CHECK(std::count(e.behaviors.begin(), e.behaviors.end(), Behavior::GlobalDecayFast) == 1);
  CHECK(std::count(e.behaviors.begin(), e.behaviors.end(), Behavior::GlobalDecaySlow) == 1);

  const RegionLabel g = classify_region(validate_params(3, 0.15, 1.5, 1));
  CHECK(g.tag == RegionTag::G);
  REQUIRE(g.behaviors.size() == 1);
  CHECK(g.behaviors[0] == Behavior::NonexistenceAll);

  const RegionLabel s = classify_region(validate_params(3, 0.25, 1.25, 0));
  CHECK(s.tag == RegionTag::Boundary_pS);
  CHECK(s.behaviors[0] == Behavior::Stationary);

  const RegionLabel f = classify_region(validate_params(3, 0.25, 1.5, 0));
  CHECK(f.tag == RegionTag::F);
  CHECK(f.undetermined_band);
  CHECK(f.behaviors[0] == Behavior::Blowup);

  const RegionLabel a = classify_region(validate_params(3, 0.5, 1.1, 0.3));
  // m = 0.5 > m_c = 1/3; p_L = 1.075, p_F = 0.5 + 2.3/3 = 1.2667
  CHECK(a.tag == RegionTag::A);
  CHECK(a.partial_claim);

  const RegionLabel el = classify_region(validate_params(3, 0.25, 1.15, 0.5));
  // p_L(0.5) = 1.1875, p = 1.15 < p_L, m in (m_s, m_c)
  CHECK(el.tag == RegionTag::H);
}

TEST_CASE("boundary snapping is exact at tolerance scale") {
  const RegionLabel onL = classify_region(validate_params(3, 0.25, 1.0 + 0.5 * 0.75 / 2.0, 0.5));
  CHECK(onL.tag == RegionTag::Boundary_pL);
  CHECK(onL.behaviors[0] == Behavior::Eternal);

  // a perturbation of 1e-13 away from any boundary never changes the label
  const RegionLabel base = classify_region(validate_params(3, 0.25, 1.2, 0));
  const RegionLabel jig = classify_region(validate_params(3, 0.25, 1.2 + 1e-13, 0));
  CHECK(base.tag == jig.tag);
}

TEST_CASE("sigma < 0 yields behavior sets without letter tags") {
  const RegionLabel lab = classify_region(validate_params(3, 0.25, 1.2, -0.5));
  CHECK(lab.tag == RegionTag::NoTag);
  CHECK_FALSE(lab.behaviors.empty());
}

TEST_CASE("grid coverage and band structure") {
  const RegionGrid grid = region_grid(3.0, 0.0, {1.0, 3.0}, {0.01, 0.99}, 60, 60);
  REQUIRE(grid.cells.size() == 3600);

  std::set<RegionTag> seen;
  for (const auto& cell : grid.cells) seen.insert(cell.tag);
  // sigma = 0 collapses the C and I bands (p_L = 1 <= p everywhere on the grid)
  CHECK(seen.count(RegionTag::C) == 0);
  CHECK(seen.count(RegionTag::I) == 0);
  CHECK(seen.count(RegionTag::E) == 1);
  CHECK(seen.count(RegionTag::F) == 1);
  CHECK(seen.count(RegionTag::G) == 1);

  // boundary curves and their ordering in the subcritical band
  for (std::size_t j = 0; j < grid.m_axis.size(); ++j) {
    const double m = grid.m_axis[j];
    if (m > grid.m_s + 1e-6 && m < grid.m_c - 1e-6) {
      CHECK(grid.curve_p_c[j] < grid.curve_p_L[j]);
      CHECK(grid.curve_p_L[j] < grid.curve_p_s[j]);
    }
  }

  // sigma = 2 exposes C and I below m_s
  const RegionGrid grid2 = region_grid(3.0, 2.0, {1.0, 3.0}, {0.01, 0.99}, 60, 60);
  std::set<RegionTag> seen2;
  for (const auto& cell : grid2.cells) seen2.insert(cell.tag);
  CHECK(seen2.count(RegionTag::C) == 1);
  CHECK(seen2.count(RegionTag::I) == 1);

  CHECK_THROWS_AS(region_grid(3.0, 0.0, {1.0, 3.0}, {0.01, 0.99}, 1, 60), Error);
}

TEST_CASE("labels are constant within connected components") {
  // a rectangle strictly inside the E band (p_s = 5m stays above p_max here)
  const RegionGrid grid = region_grid(3.0, 0.0, {1.01, 1.04}, {0.21, 0.32}, 24, 24);
  for (const auto& cell : grid.cells) CHECK(cell.tag == RegionTag::E);
}

TEST_CASE("hot-spot diagnostics and the fixed-point exponent identities") {
  const ParameterSet ps = validate_params(3, 0.25, 1.2, 0);
  const SimilarityExponents se = similarity_exponents(ps, -1);

  Profile prof;
  prof.ode = make_profile_ode(ps, -1);
  prof.termination = Termination::ReachedXiMax;
  prof.xi = oracles::log_spaced(1e-2, 1e2, 200);
  for (double x : prof.xi) {
    // a hump peaking at xi = 2
    prof.f.push_back(std::exp(-std::pow(std::log(x / 2.0), 2.0)));
    prof.h.push_back(0.0);
  }

  const TailBehavior slow{TailKind::SlowDecay, slow_decay_exponent(ps), 1.0,
                          ProfileEnd::Infinity};
  const BlowupReport rep = hotspot_diagnostics(ps, prof, se, slow);
  CHECK(rep.hotspot_xi0 == doctest::Approx(2.0).epsilon(0.05));
  CHECK(rep.blowup_set_is_origin);
  CHECK(rep.fixed_point_exponent == doctest::Approx(0.0).epsilon(1e-12));

  const TailBehavior crit{TailKind::CriticalDecay, critical_decay_exponent(ps), 1.0,
                          ProfileEnd::Infinity};
  CHECK(hotspot_diagnostics(ps, prof, se, crit).fixed_point_exponent ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-12));

  const TailBehavior fast{TailKind::FastDecay, fast_decay_exponent(ps), 1.0,
                          ProfileEnd::Infinity};
  CHECK(hotspot_diagnostics(ps, prof, se, fast).fixed_point_exponent ==
        doctest::Approx(4.5).epsilon(1e-12));

  CHECK_THROWS_AS(hotspot_diagnostics(
                      ps, prof, se,
                      TailBehavior{TailKind::Unresolved, 0, 0, ProfileEnd::Infinity}),
                  Error);
}

TEST_CASE("fixed-point exponent inequalities across random samples") {
  // -alpha - beta*gamma >= 0 with equality only for the slow tail
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 400; ++i) {
    const double N = 2.1 + 7.9 * uni(rng);
    const double m_c = (N - 2.0) / N;
    const double m = 0.01 + (m_c - 0.02) * uni(rng);
    const double sigma = -1.9 + 11.9 * uni(rng);
    const double p_L = 1.0 + sigma * (1.0 - m) / 2.0;
    const double p = std::max(1.0, p_L) + 0.01 + 3.0 * uni(rng);
    const ParameterSet ps = validate_params(N, m, p, sigma);
    const SimilarityExponents se = similarity_exponents(ps, -1);
    const double eq_slow = -se.alpha - se.beta * slow_decay_exponent(ps);
    const double eq_crit = -se.alpha - se.beta * critical_decay_exponent(ps);
    const double eq_fast = -se.alpha - se.beta * fast_decay_exponent(ps);
    CHECK(std::abs(eq_slow) <= 1e-10);
    CHECK(eq_crit == doctest::Approx(1.0 / (1.0 - m)).epsilon(1e-10));
    CHECK(eq_fast > 0.0);
    // closed form of the fast margin
    const CriticalExponents ce = critical_exponents(ps);
    CHECK(eq_fast ==
          doctest::Approx((N - 2.0) * (p - ce.p_c) / (m * ce.L)).epsilon(1e-9));
  }
}

}  // TEST_SUITE
