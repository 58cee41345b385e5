#include <cmath>

#include "doctest.h"
#include "params.hpp"

using namespace fdss;

TEST_SUITE("params") {

TEST_CASE("validation accepts interior points and names violated bounds") {
  CHECK_NOTHROW(validate_params(3, 0.25, 1.2, 0));

  CHECK_THROWS_WITH_AS(validate_params(2, 0.25, 1.2, 0), doctest::Contains("N > 2"), Error);
  CHECK_THROWS_AS(validate_params(3, 0.25, 0.1, 0), Error);
  CHECK_THROWS_AS(validate_params(3, 1.5, 2.0, 0), Error);
  CHECK_THROWS_AS(validate_params(3, 0.25, 1.2, -2.0), Error);

  try {
    validate_params(2, 0.25, 1.2, 0);
  } catch (const Error& e) {
    CHECK(e.code() == errc::n_out_of_range);
  }
  try {
    validate_params(3, 0.25, 0.1, 0);
  } catch (const Error& e) {
    CHECK(e.code() == errc::p_out_of_range);
  }
}

TEST_CASE("critical exponents at the reference point") {
  const ParameterSet ps = validate_params(3, 0.25, 1.2, 0);
  const CriticalExponents ce = critical_exponents(ps);
  CHECK(ce.m_c == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(ce.m_s == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(ce.p_L == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ce.p_F == doctest::Approx(11.0 / 12.0).epsilon(1e-15));
  CHECK(ce.p_c == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(ce.p_s == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(ce.L == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(ce.sigma_L == doctest::Approx(8.0 / 15.0).epsilon(1e-15));
}

TEST_CASE("critical exponents at (5, 0.5, 2, 1)") {
  const CriticalExponents ce = critical_exponents(validate_params(5, 0.5, 2, 1));
  CHECK(ce.p_L == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(ce.p_s == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(ce.L == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("L vanishes exactly on the p_L locus") {
  for (double sigma : {-1.0, 0.0, 0.5, 3.0}) {
    for (double m : {0.1, 0.25, 0.4}) {
      const double p = 1.0 + sigma * (1.0 - m) / 2.0;
      if (p <= m) continue;
      const CriticalExponents ce = critical_exponents(validate_params(4, m, p, sigma));
      CHECK(std::abs(ce.L) < 1e-14);
    }
  }
}

TEST_CASE("similarity exponents: blow-up at the reference point") {
  const SimilarityExponents se = similarity_exponents(validate_params(3, 0.25, 1.2, 0), -1);
  CHECK(se.alpha == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(se.beta == doctest::Approx(2.375).epsilon(1e-14));
  CHECK(se.kind == TemporalKind::Blowup);
}

TEST_CASE("similarity exponents: extinction in the mapped parameters") {
  // L = 1.6*(-0.75) + 0.4 = -0.8; positive normalization
  const SimilarityExponents se = similarity_exponents(validate_params(4, 0.25, 1.2, 1.6), +1);
  CHECK(se.alpha == doctest::Approx(4.5).epsilon(1e-14));
  CHECK(se.beta == doctest::Approx(1.1875).epsilon(1e-14));
  CHECK(se.kind == TemporalKind::Extinction);
}

TEST_CASE("degenerate L is refused") {
  const ParameterSet ps = validate_params(3, 0.25, 1.0, 0);  // p = p_L(0) = 1
  CHECK_THROWS_AS(similarity_exponents(ps, 1), Error);
  try {
    similarity_exponents(ps, 1);
  } catch (const Error& e) {
    CHECK(e.code() == errc::degenerate_L);
  }
}

TEST_CASE("temporal kind table and sign covariance") {
  const ParameterSet pos = validate_params(3, 0.25, 1.2, 0);   // L > 0
  const ParameterSet neg = validate_params(4, 0.25, 1.2, 1.6); // L < 0
  CHECK(similarity_exponents(pos, +1).kind == TemporalKind::GlobalDecay);
  CHECK(similarity_exponents(pos, -1).kind == TemporalKind::Blowup);
  CHECK(similarity_exponents(neg, +1).kind == TemporalKind::Extinction);
  CHECK(similarity_exponents(neg, -1).kind == TemporalKind::Growup);
  // flipping s leaves (alpha, beta) unchanged
  for (const ParameterSet& ps : {pos, neg}) {
    const auto a = similarity_exponents(ps, +1);
    const auto b = similarity_exponents(ps, -1);
    CHECK(a.alpha == b.alpha);
    CHECK(a.beta == b.beta);
  }
}

TEST_CASE("m classification with boundary detection") {
  CHECK(classify_m(validate_params(3, 0.25, 1.2, 0)).cls == MClass::Subcritical);
  CHECK(classify_m(validate_params(3, 0.15, 1.2, 0)).cls == MClass::BelowSobolev);
  CHECK(classify_m(validate_params(3, 0.5, 1.2, 0)).cls == MClass::Supercritical);

  const MClassification at_ms = classify_m(validate_params(3, 0.2, 1.2, 0));
  CHECK(at_ms.at_m_s);
  CHECK(at_ms.cls == MClass::BelowSobolev);
  const MClassification at_mc = classify_m(validate_params(3, 1.0 / 3.0, 1.2, 0));
  CHECK(at_mc.at_m_c);
  CHECK(at_mc.cls == MClass::Supercritical);
}

TEST_CASE("order of the critical exponents across the m ranges") {
  // p_c < p_L iff m < m_c; p_s < p_L iff m < m_s; m_s < m_c always
  for (double N : {2.5, 3.0, 4.0, 7.0}) {
    for (double m : {0.05, 0.15, 0.28, 0.55, 0.9}) {
      if (m >= 1.0) continue;
      for (double sigma : {-1.0, 0.0, 2.0, 7.0}) {
        const double p = std::max(1.0, 1.0 + sigma * (1.0 - m) / 2.0) + 0.37;
        const ParameterSet ps = validate_params(N, m, p, sigma);
        const CriticalExponents ce = critical_exponents(ps);
        CHECK(ce.m_s < ce.m_c);
        CHECK(((ce.p_c < ce.p_L) == (m < ce.m_c)));
        CHECK(((ce.p_s < ce.p_L) == (m < ce.m_s)));
        // L and p - p_L share their sign
        CHECK(((ce.L > 0) == (ps.p > ce.p_L)));
        CHECK(((ce.L > 0) == (ps.sigma < ce.sigma_L)));
      }
    }
  }
}

}  // TEST_SUITE
