#include <cmath>
#include <vector>

#include "doctest.h"
#include "params.hpp"
#include "profiles.hpp"
#include "selfmap.hpp"
#include "shooting.hpp"

using namespace fdss;

namespace {
const ParameterSet kRef = ParameterSet{3.0, 0.25, 1.2, 0.0};
}

TEST_SUITE("shooting") {

TEST_CASE("shoot is deterministic bit for bit") {
  const ProfileODE ode = make_profile_ode(kRef, +1);
  const ShotOutcome a = shoot(ode, 0.37);
  const ShotOutcome b = shoot(ode, 0.37);
  REQUIRE(a.profile->f.size() == b.profile->f.size());
  for (std::size_t i = 0; i < a.profile->f.size(); ++i) {
    CHECK(a.profile->f[i] == b.profile->f[i]);
    CHECK(a.profile->h[i] == b.profile->h[i]);
  }
  CHECK(a.tail.fitted_constant == b.tail.fitted_constant);
}

TEST_CASE("slow-decay family at the reference point") {
  const ProfileODE ode = make_profile_ode(kRef, +1);
  const std::vector<double> Ds{0.01, 0.1, 1.0};
  const auto family = slow_decay_family(ode, Ds);
  REQUIRE(family.size() == 3);
  for (const auto& [D, K] : family) {
    CHECK(K > 0.05);
    CHECK(K < 0.5);
  }
  // distinct constants
  CHECK(std::abs(family[0].second - family[1].second) > 1e-3);
  CHECK(std::abs(family[1].second - family[2].second) > 1e-3);
  CHECK(std::abs(family[0].second - family[2].second) > 1e-3);

  const auto empty = slow_decay_family(ode, std::vector<double>{});
  CHECK(empty.empty());

  // a non-slow-decay member is rejected (grow-up family, finite extinction point)
  const ProfileODE growup = make_profile_ode(validate_params(4, 0.25, 1.2, 1.6), -1);
  CHECK_THROWS_AS(slow_decay_family(growup, std::vector<double>{1e3}), Error);
}

TEST_CASE("fast-decay connection at the reference point goes through the self-map") {
  const ProfileODE ode = make_profile_ode(kRef, +1);
  const FastDecaySearch fd = find_fast_decay(ode);
  REQUIRE(fd.status == SearchStatus::Found);
  CHECK(fd.route == SearchRoute::SelfMapped);
  CHECK(fd.D_star_is_estimate);
  CHECK(fd.D_star > 0.0);
  CHECK(fd.tail.kind == TailKind::FastDecay);
  CHECK(std::abs(fd.tail.fitted_exponent - (-4.0)) / 4.0 < 0.05);
  CHECK(fd.mapped_bracket.first > 0.0);
  CHECK(fd.mapped_bracket.second / fd.mapped_bracket.first - 1.0 < 1e-10);

  // the returned profile is a genuine solution of the source equation
  REQUIRE(fd.profile);
  const ResidualReport rep = ode_residual(fd.profile->ode, *fd.profile);
  CHECK(rep.max_relative <= 1e-6);
}

TEST_CASE("no global connection above the Sobolev exponent") {
  const ProfileODE ode = make_profile_ode(validate_params(3, 0.25, 1.3, 0), +1);
  const FastDecaySearch fd = find_fast_decay(ode);
  CHECK(fd.status != SearchStatus::Found);
}

TEST_CASE("extinction-side connection is found directly on an explicit bracket") {
  // transformed parameters of (3, 1/4, 1.26, 0); the connection separates
  // surviving profiles from finite-point extinction
  const ParameterSet bar = map_params_only(validate_params(3, 0.25, 1.26, 0));
  const ProfileODE ode = make_profile_ode(bar, +1);
  const FastDecaySearch fd = find_fast_decay(ode, 4.6e5, 6.5e5);
  REQUIRE(fd.status == SearchStatus::Found);
  CHECK(fd.route == SearchRoute::Direct);
  CHECK(fd.tail.kind == TailKind::FastDecay);
  CHECK(std::abs(fd.tail.fitted_exponent - fast_decay_exponent(bar)) /
            std::abs(fast_decay_exponent(bar)) <
        0.05);
  CHECK(fd.D_star == doctest::Approx(549222.94).epsilon(1e-4));

  CHECK_THROWS_AS(find_fast_decay(ode, 1.0, 2.0), Error);  // same class endpoints
}

TEST_CASE("below the Sobolev diffusion exponent nothing connects") {
  for (int sign : {+1, -1}) {
    const ProfileODE ode = make_profile_ode(validate_params(3, 0.15, 1.2, 0), sign);
    const FastDecaySearch fd = find_fast_decay(ode);
    CHECK(fd.status != SearchStatus::Found);
  }
}

TEST_CASE("critical-p bracket for the blow-up connection") {
  // the fast-decay blow-up connection exists just above p_s = 1.25 and
  // disappears somewhere inside (1.6, 2.0); the bracket never merges with the
  // other thresholds and sits above p_s
  CriticalPOptions opts;
  opts.p_tol = 0.05;
  const CriticalPEstimate est =
      estimate_critical_p(3.0, 0.25, 0.0, -1, CriticalPKind::p0, {1.6, 2.0}, opts);
  CHECK(est.p_lo >= 1.6);
  CHECK(est.p_hi <= 2.0);
  CHECK(est.p_hi > est.p_lo);
  CHECK(est.p_hi - est.p_lo <= 0.051);

  // no existence region below the Sobolev diffusion exponent
  CHECK_THROWS_AS(estimate_critical_p(3.0, 0.15, 0.0, -1, CriticalPKind::p0, {1.26, 1.38}),
                  Error);
}

}  // TEST_SUITE
