#pragma once

#include <string>
#include <vector>

#include "params.hpp"
#include "profiles.hpp"
#include "regions.hpp"
#include "selfmap.hpp"
#include "shooting.hpp"

namespace fdss {

/// %.17g rendering; round-trips any finite double bit-exactly.
std::string format_double(double v);

/// Streaming JSON writer with insertion-ordered keys. Non-finite doubles are
/// emitted as null.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& s);
  JsonWriter& value(const char* s);
  JsonWriter& value(const std::vector<double>& xs);

  std::string str() const { return out_; }

 private:
  void comma();
  std::string out_;
  std::vector<bool> has_items_;
  bool pending_key_ = false;
};

void write_params(JsonWriter& w, const ParameterSet& ps);
void write_target_params(JsonWriter& w, const ParameterSet& ps);  // Nbar/sigmabar names
void write_similarity(JsonWriter& w, const SimilarityExponents& se);
void write_tail(JsonWriter& w, const TailBehavior& tb);

std::string exponents_json(const ParameterSet& ps);
std::string transform_json(const SelfMap& sm, const IdentityReport* identities);
std::string profile_json(const Profile& prof, const TailBehavior* tail,
                         const ResidualReport* residual);
std::string profile_csv(const Profile& prof);
std::string search_json(const ProfileODE& ode, const FastDecaySearch& search);
std::string critical_p_json(const CriticalPEstimate& est);

struct SweepRow {
  double p;
  double D_star;  ///< NaN when not found
  std::string outcome;
  double slope;
  double constant;
};
std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string region_label_json(const ParameterSet& ps, const RegionLabel& lab);
std::string region_grid_csv(const RegionGrid& grid);
std::string region_boundaries_json(const RegionGrid& grid);
std::string blowup_report_json(const BlowupReport& rep);

}  // namespace fdss
