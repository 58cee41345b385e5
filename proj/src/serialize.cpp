#include "serialize.hpp"

#include <cmath>
#include <cstdio>

namespace fdss {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JsonWriter& JsonWriter::begin_object() {
  comma();
  out_ += '{';
  has_items_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  has_items_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  comma();
  out_ += '[';
  has_items_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  has_items_.pop_back();
  return *this;
}

void JsonWriter::comma() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!has_items_.empty()) {
    if (has_items_.back()) out_ += ',';
    has_items_.back() = true;
  }
}

JsonWriter& JsonWriter::key(const std::string& name) {
  comma();
  out_ += '"';
  out_ += name;
  out_ += "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  comma();
  if (!std::isfinite(v))
    out_ += "null";
  else
    out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<long long>(v)); }

JsonWriter& JsonWriter::value(long long v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  comma();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
  comma();
  out_ += '"';
  for (char c : s) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      default: out_ += c;
    }
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

JsonWriter& JsonWriter::value(const std::vector<double>& xs) {
  begin_array();
  for (double x : xs) value(x);
  return end_array();
}

void write_params(JsonWriter& w, const ParameterSet& ps) {
  w.begin_object();
  w.key("N").value(ps.N);
  w.key("m").value(ps.m);
  w.key("p").value(ps.p);
  w.key("sigma").value(ps.sigma);
  w.end_object();
}

void write_target_params(JsonWriter& w, const ParameterSet& ps) {
  w.begin_object();
  w.key("Nbar").value(ps.N);
  w.key("m").value(ps.m);
  w.key("p").value(ps.p);
  w.key("sigmabar").value(ps.sigma);
  w.end_object();
}

void write_similarity(JsonWriter& w, const SimilarityExponents& se) {
  w.begin_object();
  w.key("alpha").value(se.alpha);
  w.key("beta").value(se.beta);
  w.key("sign").value(se.sign);
  w.key("kind").value(temporal_kind_name(se.kind));
  w.end_object();
}

void write_tail(JsonWriter& w, const TailBehavior& tb) {
  w.begin_object();
  w.key("kind").value(tail_kind_name(tb.kind));
  w.key("fitted_exponent").value(tb.fitted_exponent);
  w.key("fitted_constant").value(tb.fitted_constant);
  w.key("end").value(profile_end_name(tb.end));
  w.end_object();
}

std::string exponents_json(const ParameterSet& ps) {
  const CriticalExponents ce = critical_exponents(ps);
  const MClassification mc = classify_m(ps);
  JsonWriter w;
  w.begin_object();
  w.key("params");
  write_params(w, ps);
  w.key("critical_exponents").begin_object();
  w.key("m_c").value(ce.m_c);
  w.key("m_s").value(ce.m_s);
  w.key("p_L").value(ce.p_L);
  w.key("p_F").value(ce.p_F);
  w.key("p_c").value(ce.p_c);
  w.key("p_s").value(ce.p_s);
  w.key("L").value(ce.L);
  w.key("sigma_L").value(ce.sigma_L);
  w.end_object();
  w.key("m_classification").begin_object();
  w.key("class").value(m_class_name(mc.cls));
  w.key("at_m_s").value(mc.at_m_s);
  w.key("at_m_c").value(mc.at_m_c);
  w.end_object();
  const bool degenerate = std::abs(ps.p - ce.p_L) <= kBoundaryTol;
  w.key("degenerate_L").value(degenerate);
  if (!degenerate) {
    w.key("similarity_exponents").begin_object();
    w.key("forward");
    write_similarity(w, similarity_exponents(ps, +1));
    w.key("backward");
    write_similarity(w, similarity_exponents(ps, -1));
    w.end_object();
  }
  w.end_object();
  return w.str();
}

std::string transform_json(const SelfMap& sm, const IdentityReport* identities) {
  JsonWriter w;
  w.begin_object();
  w.key("source");
  write_params(w, sm.source);
  w.key("target");
  write_target_params(w, sm.target);
  w.key("theta").value(sm.theta);
  w.key("C1").value(sm.C1);
  w.key("C2").value(sm.C2);
  w.key("mode").value(constant_mode_name(sm.mode));
  w.key("build_residual").value(sm.build_residual);
  w.key("residual_warning").value(sm.residual_warning);
  if (identities) {
    w.key("identities").begin_object();
    w.key("entries").begin_array();
    for (const auto& e : identities->entries) {
      w.begin_object();
      w.key("name").value(e.name);
      w.key("lhs").value(e.lhs);
      w.key("rhs").value(e.rhs);
      w.key("residual").value(e.residual);
      w.end_object();
    }
    w.end_array();
    w.key("max_abs_residual").value(identities->max_abs_residual);
    w.key("range_signs_agree").value(identities->range_signs_agree);
    w.end_object();
  }
  w.end_object();
  return w.str();
}

std::string profile_json(const Profile& prof, const TailBehavior* tail,
                         const ResidualReport* residual) {
  JsonWriter w;
  w.begin_object();
  w.key("params");
  write_params(w, prof.ode.ps);
  w.key("sign").value(prof.ode.sign);
  w.key("alpha").value(prof.ode.alpha);
  w.key("beta").value(prof.ode.beta);
  w.key("kind").value(temporal_kind_name(prof.ode.kind));
  w.key("D").value(prof.D);
  w.key("xi0").value(prof.xi0);
  w.key("termination").value(termination_name(prof.termination));
  if (prof.termination != Termination::ReachedXiMax) w.key("xi_stop").value(prof.xi_stop);
  if (tail) {
    w.key("tail");
    write_tail(w, *tail);
  }
  if (residual) w.key("max_relative_residual").value(residual->max_relative);
  w.key("n").value(static_cast<long long>(prof.xi.size()));
  w.key("xi").value(prof.xi);
  w.key("f").value(prof.f);
  w.key("h").value(prof.h);
  w.end_object();
  return w.str();
}

std::string profile_csv(const Profile& prof) {
  std::string out = "xi,f,h\n";
  for (std::size_t i = 0; i < prof.xi.size(); ++i) {
    out += format_double(prof.xi[i]);
    out += ',';
    out += format_double(prof.f[i]);
    out += ',';
    out += format_double(prof.h[i]);
    out += '\n';
  }
  return out;
}

std::string search_json(const ProfileODE& ode, const FastDecaySearch& search) {
  JsonWriter w;
  w.begin_object();
  w.key("params");
  write_params(w, ode.ps);
  w.key("sign").value(ode.sign);
  w.key("status").value(search_status_name(search.status));
  if (search.status != SearchStatus::NotFound) {
    w.key("route").value(search_route_name(search.route));
    w.key("D_star").value(search.D_star);
    w.key("D_star_is_estimate").value(search.D_star_is_estimate);
    w.key("tail");
    write_tail(w, search.tail);
    if (search.route == SearchRoute::SelfMapped) {
      w.key("mapped_bracket").begin_array();
      w.value(search.mapped_bracket.first);
      w.value(search.mapped_bracket.second);
      w.end_array();
    }
  }
  if (!search.notes.empty()) w.key("notes").value(search.notes);
  w.key("candidate_brackets").begin_array();
  for (const auto& [lo, hi] : search.candidate_brackets) {
    w.begin_array();
    w.value(lo);
    w.value(hi);
    w.end_array();
  }
  w.end_array();
  w.key("scan").begin_array();
  for (const auto& sp : search.scan) {
    w.begin_object();
    w.key("D").value(sp.D);
    w.key("class").value(outcome_class_name(sp.cls));
    w.key("tail").value(tail_kind_name(sp.tail));
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string critical_p_json(const CriticalPEstimate& est) {
  JsonWriter w;
  w.begin_object();
  w.key("sigma").value(est.sigma);
  w.key("kind").value(critical_p_kind_name(est.kind));
  w.key("p_lo").value(est.p_lo);
  w.key("p_hi").value(est.p_hi);
  w.key("notes").value(est.notes);
  w.end_object();
  return w.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "p,D_star_or_nan,outcome,slope,constant\n";
  for (const auto& r : rows) {
    out += format_double(r.p);
    out += ',';
    out += std::isfinite(r.D_star) ? format_double(r.D_star) : "nan";
    out += ',';
    out += r.outcome;
    out += ',';
    out += std::isfinite(r.slope) ? format_double(r.slope) : "nan";
    out += ',';
    out += std::isfinite(r.constant) ? format_double(r.constant) : "nan";
    out += '\n';
  }
  return out;
}

namespace {

std::string behaviors_joined(const RegionLabel& lab) {
  std::string out;
  for (std::size_t i = 0; i < lab.behaviors.size(); ++i) {
    if (i) out += '|';
    out += behavior_name(lab.behaviors[i]);
  }
  return out;
}

}  // namespace

std::string region_label_json(const ParameterSet& ps, const RegionLabel& lab) {
  JsonWriter w;
  w.begin_object();
  w.key("params");
  write_params(w, ps);
  w.key("tag").value(region_tag_name(lab.tag));
  w.key("behaviors").begin_array();
  for (Behavior b : lab.behaviors) w.value(behavior_name(b));
  w.end_array();
  w.key("partial_claim").value(lab.partial_claim);
  w.key("undetermined_band").value(lab.undetermined_band);
  w.key("predicate").value(lab.predicate);
  w.end_object();
  return w.str();
}

std::string region_grid_csv(const RegionGrid& grid) {
  std::string out = "p,m,tag,behaviors\n";
  for (std::size_t jm = 0; jm < grid.m_axis.size(); ++jm) {
    for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip) {
      const RegionLabel& lab = grid.cells[jm * grid.p_axis.size() + ip];
      out += format_double(grid.p_axis[ip]);
      out += ',';
      out += format_double(grid.m_axis[jm]);
      out += ',';
      out += region_tag_name(lab.tag);
      out += ',';
      out += behaviors_joined(lab);
      out += '\n';
    }
  }
  return out;
}

std::string region_boundaries_json(const RegionGrid& grid) {
  JsonWriter w;
  w.begin_object();
  w.key("N").value(grid.N);
  w.key("sigma").value(grid.sigma);
  w.key("m_s").value(grid.m_s);
  w.key("m_c").value(grid.m_c);
  w.key("m").value(grid.m_axis);
  w.key("p_L").value(grid.curve_p_L);
  w.key("p_F").value(grid.curve_p_F);
  w.key("p_c").value(grid.curve_p_c);
  w.key("p_s").value(grid.curve_p_s);
  w.end_object();
  return w.str();
}

std::string blowup_report_json(const BlowupReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.key("alpha").value(rep.alpha);
  w.key("beta").value(rep.beta);
  w.key("hotspot_xi0").value(rep.hotspot_xi0);
  w.key("gamma").value(rep.gamma);
  w.key("fixed_point_exponent").value(rep.fixed_point_exponent);
  w.key("blowup_set_is_origin").value(rep.blowup_set_is_origin);
  w.key("supnorm_law").value(rep.supnorm_law);
  w.end_object();
  return w.str();
}

}  // namespace fdss
