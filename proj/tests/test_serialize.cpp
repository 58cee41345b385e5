#include <cmath>
#include <limits>

#include "doctest.h"
#include "json.hpp"
#include "params.hpp"
#include "profiles.hpp"
#include "selfmap.hpp"
#include "serialize.hpp"

using namespace fdss;
using nlohmann::json;

TEST_SUITE("serialize") {

TEST_CASE("doubles round-trip bit-exactly at 17 significant digits") {
  for (double v : {0.1, 1.0 / 3.0, 1.25, -2.375, 1e-300, 8.0 / 3.0,
                   std::pow(2.0, -0.5), 6.02e23}) {
    const double back = std::stod(format_double(v));
    CHECK(back == v);
    CHECK(std::stod(format_double(-v)) == -v);
  }
}

TEST_CASE("writer produces valid nested JSON") {
  JsonWriter w;
  w.begin_object();
  w.key("a").value(1.5);
  w.key("b").begin_array();
  w.value(1);
  w.value("two");
  w.begin_object();
  w.key("c").value(true);
  w.end_object();
  w.end_array();
  w.key("nan_is_null").value(std::numeric_limits<double>::quiet_NaN());
  w.key("esc").value("a\"b\\c\nd");
  w.end_object();
  const json parsed = json::parse(w.str());
  CHECK(parsed["a"] == 1.5);
  CHECK(parsed["b"][0] == 1);
  CHECK(parsed["b"][1] == "two");
  CHECK(parsed["b"][2]["c"] == true);
  CHECK(parsed["nan_is_null"].is_null());
  CHECK(parsed["esc"] == "a\"b\\c\nd");
}

TEST_CASE("exponents payload carries the frozen values and re-parses identically") {
  const ParameterSet ps = validate_params(3, 0.25, 1.2, 0);
  const json parsed = json::parse(exponents_json(ps));
  CHECK(parsed["critical_exponents"]["p_s"].get<double>() == 1.25);
  CHECK(parsed["critical_exponents"]["L"].get<double>() == critical_exponents(ps).L);
  CHECK(parsed["critical_exponents"]["p_F"].get<double>() == 11.0 / 12.0);
  CHECK(parsed["m_classification"]["class"] == "Subcritical");
  // bit-exact round-trip of the stored value
  CHECK(parsed["similarity_exponents"]["backward"]["alpha"].get<double>() ==
        similarity_exponents(ps, -1).alpha);
  CHECK(parsed["similarity_exponents"]["backward"]["alpha"].get<double>() ==
        doctest::Approx(5.0).epsilon(1e-14));
  CHECK(parsed["similarity_exponents"]["backward"]["kind"] == "Blowup");
}

TEST_CASE("transform payload") {
  const ParameterSet ps = validate_params(3, 0.25, 1.2, 0);
  const SelfMap sm = build_selfmap(ps);
  const IdentityReport ir = verify_identities(ps);
  const json parsed = json::parse(transform_json(sm, &ir));
  CHECK(parsed["theta"].get<double>() == -0.5);
  CHECK(parsed["target"]["Nbar"].get<double>() == sm.target.N);
  CHECK(parsed["target"]["sigmabar"].get<double>() == sm.target.sigma);
  CHECK(parsed["C1"].get<double>() == sm.C1);
  CHECK(parsed["mode"] == "DerivedConstants");
  CHECK(parsed["identities"]["max_abs_residual"].get<double>() <= 1e-9);
  bool saw_symm = false;
  for (const auto& e : parsed["identities"]["entries"]) {
    if (e["name"] == "sobolev_symmetry") {
      saw_symm = true;
      CHECK(std::abs(e["residual"].get<double>()) <= 1e-12);
    }
  }
  CHECK(saw_symm);
}

TEST_CASE("profile payloads") {
  const ProfileODE ode = make_profile_ode(validate_params(3, 0.25, 1.2, 0), +1);
  IntegrateOptions opts;
  opts.xi_max = 1.0;
  const Profile prof = integrate_profile(ode, 1.0, opts);

  const std::string csv = profile_csv(prof);
  CHECK(csv.rfind("xi,f,h\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(prof.xi.size()) + 1);

  const json parsed = json::parse(profile_json(prof, nullptr, nullptr));
  CHECK(parsed["termination"] == "ReachedXiMax");
  CHECK(parsed["n"].get<std::size_t>() == prof.xi.size());
  // bit-exact array round-trip
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(parsed["xi"][i].get<double>() == prof.xi[i]);
    CHECK(parsed["f"][i].get<double>() == prof.f[i]);
    CHECK(parsed["h"][i].get<double>() == prof.h[i]);
  }
}

TEST_CASE("sweep and grid tables") {
  std::vector<SweepRow> rows{{1.2, 0.5, "Found:FastDecay", -4.0, 0.1},
                             {1.3, std::numeric_limits<double>::quiet_NaN(), "NotFound",
                              std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::quiet_NaN()}};
  const std::string csv = sweep_csv(rows);
  CHECK(csv.rfind("p,D_star_or_nan,outcome,slope,constant\n", 0) == 0);
  CHECK(csv.find("nan,NotFound,nan,nan") != std::string::npos);

  const RegionGrid grid = region_grid(3.0, 0.0, {1.0, 2.0}, {0.1, 0.9}, 4, 3);
  const std::string gcsv = region_grid_csv(grid);
  CHECK(gcsv.rfind("p,m,tag,behaviors\n", 0) == 0);
  CHECK(std::count(gcsv.begin(), gcsv.end(), '\n') == 13);

  const json bj = json::parse(region_boundaries_json(grid));
  CHECK(bj["m"].size() == 3);
  CHECK(bj["p_s"].size() == 3);
  CHECK(bj["m_c"].get<double>() == doctest::Approx(1.0 / 3.0));
}

}  // TEST_SUITE
