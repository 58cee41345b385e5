// Command-line front end for the fdss shared library. Everything below talks
// to the C API in fdss.h only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fdss.h"

namespace {

int exit_code_of(fdss_status st) {
  switch (st) {
    case FDSS_OK: return 0;
    case FDSS_ERR_VALIDATION:
    case FDSS_ERR_ARGUMENT: return 1;
    default: return 2;
  }
}

int fail(fdss_status st) {
  std::cerr << "{\"error\":{\"status\":" << static_cast<int>(st) << ",\"name\":\""
            << fdss_last_error_name() << "\",\"message\":\"" << fdss_last_error()
            << "\"}}\n";
  return exit_code_of(st);
}

int emit(const std::string& payload, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return 0;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    std::cerr << "{\"error\":{\"status\":1,\"name\":\"BadArgument\",\"message\":\"cannot "
                 "open output file\"}}\n";
    return 1;
  }
  out << payload;
  return 0;
}

struct ParamFlags {
  double N = 3.0;
  double m = 0.25;
  double p = 1.2;
  double sigma = 0.0;

  void attach(CLI::App* cmd, bool p_required = true) {
    cmd->add_option("--N", N, "dimension coefficient (> 2)")->required();
    cmd->add_option("--m", m, "diffusion exponent (0 < m < 1)")->required();
    auto* opt_p = cmd->add_option("--p", p, "reaction exponent (> m)");
    if (p_required) opt_p->required();
    cmd->add_option("--sigma", sigma, "weight exponent (> -2)")->required();
  }

  fdss_status make(fdss_params** out) const {
    return fdss_params_create(N, m, p, sigma, out);
  }
};

struct IntegrateFlags {
  fdss_integrate_options opts;

  IntegrateFlags() { fdss_integrate_options_default(&opts); }

  void attach(CLI::App* cmd) {
    cmd->add_option("--xi0", opts.xi0, "series handoff point");
    cmd->add_option("--xi-max", opts.xi_max, "right end of the integration window");
    cmd->add_option("--rtol", opts.rel_tol, "integrator relative tolerance");
    cmd->add_option("--cap", opts.cap, "unbounded-growth cutoff");
    cmd->add_option("--points-per-decade", opts.points_per_decade,
                    "output grid density (0 = automatic)");
  }
};

struct SearchFlags {
  fdss_search_options opts;

  SearchFlags() { fdss_search_options_default(&opts); }

  void attach(CLI::App* cmd) {
    cmd->add_option("--D-min", opts.D_min, "scan lower bound");
    cmd->add_option("--D-max", opts.D_max, "scan upper bound");
    cmd->add_option("--scan-points", opts.scan_points, "log-spaced scan size");
    cmd->add_option("--bracket-rtol", opts.bracket_rel_tol, "bisection bracket tolerance");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-similar profile toolkit for the fast diffusion equation with source"};
  app.set_config("--config", "", "read options from a config file");
  app.require_subcommand(1);

  std::string output_path;
  app.add_option("-o,--output", output_path, "write the primary output to a file")
      ->configurable(false);

  // ---- exponents ----
  auto* cmd_exp = app.add_subcommand("exponents", "critical and similarity exponents");
  ParamFlags exp_params;
  exp_params.attach(cmd_exp);
  std::string exp_format = "json";
  cmd_exp->add_option("--format", exp_format, "json")->check(CLI::IsMember({"json"}));

  // ---- transform ----
  auto* cmd_tr = app.add_subcommand("transform", "parameter self-map and its identities");
  ParamFlags tr_params;
  tr_params.attach(cmd_tr);
  std::string tr_mode = "derived";
  cmd_tr->add_option("--mode", tr_mode, "constant mode")
      ->check(CLI::IsMember({"derived", "printed"}));

  // ---- profile ----
  auto* cmd_prof = app.add_subcommand("profile", "integrate one self-similar profile");
  ParamFlags prof_params;
  prof_params.attach(cmd_prof);
  IntegrateFlags prof_opts;
  prof_opts.attach(cmd_prof);
  int prof_sign = 1;
  double prof_D = 1.0;
  std::string prof_format = "json";
  cmd_prof->add_option("--sign", prof_sign, "+1 or -1")->required();
  cmd_prof->add_option("--D", prof_D, "shooting parameter")->required();
  cmd_prof->add_option("--format", prof_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // ---- shoot ----
  auto* cmd_shoot = app.add_subcommand("shoot", "fast-decay search / single shot / p-sweep");
  ParamFlags shoot_params;
  shoot_params.attach(cmd_shoot, /*p_required=*/false);
  IntegrateFlags shoot_iopts;
  shoot_iopts.attach(cmd_shoot);
  SearchFlags shoot_sopts;
  shoot_sopts.attach(cmd_shoot);
  int shoot_sign = 1;
  double shoot_D = 0.0;
  double sweep_p_min = 0.0, sweep_p_max = 0.0;
  int sweep_steps = 0;
  cmd_shoot->add_option("--sign", shoot_sign, "+1 or -1")->required();
  auto* optD = cmd_shoot->add_option("--D", shoot_D, "single shot at this D");
  auto* optPmin = cmd_shoot->add_option("--p-min", sweep_p_min, "sweep start");
  cmd_shoot->add_option("--p-max", sweep_p_max, "sweep end");
  cmd_shoot->add_option("--p-steps", sweep_steps, "sweep size");

  // ---- regions ----
  auto* cmd_reg = app.add_subcommand("regions", "phase-map classification");
  double reg_N = 3.0, reg_sigma = 0.0;
  cmd_reg->add_option("--N", reg_N, "dimension coefficient")->required();
  cmd_reg->add_option("--sigma", reg_sigma, "weight exponent")->required();
  double reg_m = 0.0, reg_p = 0.0;
  auto* optRegM = cmd_reg->add_option("--m", reg_m, "classify a single point: m");
  cmd_reg->add_option("--p", reg_p, "classify a single point: p");
  double reg_p_min = 1.0, reg_p_max = 3.0, reg_m_min = 0.01, reg_m_max = 0.99;
  int reg_res_p = 100, reg_res_m = 100;
  cmd_reg->add_option("--p-min", reg_p_min, "grid p lower bound");
  cmd_reg->add_option("--p-max", reg_p_max, "grid p upper bound");
  cmd_reg->add_option("--m-min", reg_m_min, "grid m lower bound");
  cmd_reg->add_option("--m-max", reg_m_max, "grid m upper bound");
  cmd_reg->add_option("--res-p", reg_res_p, "grid resolution in p");
  cmd_reg->add_option("--res-m", reg_res_m, "grid resolution in m");
  std::string reg_boundaries_path;
  cmd_reg->add_option("--boundaries", reg_boundaries_path,
                      "write the boundary-curve overlay JSON to this file");

  // ---- verify ----
  auto* cmd_ver = app.add_subcommand("verify", "identity / residual / balance suites");
  std::string ver_suite = "identities";
  int ver_samples = 10000;
  unsigned long long ver_seed = 7;
  cmd_ver->add_option("--suite", ver_suite, "identities, residual, or balance")
      ->check(CLI::IsMember({"identities", "residual", "balance"}));
  cmd_ver->add_option("--samples", ver_samples, "sample count (draws for residual)");
  cmd_ver->add_option("--seed", ver_seed, "deterministic seed");

  CLI11_PARSE(app, argc, argv);

  if (cmd_exp->parsed()) {
    fdss_params* ps = nullptr;
    if (auto st = exp_params.make(&ps)) return fail(st);
    char* json = nullptr;
    const fdss_status st = fdss_exponents_json(ps, &json);
    fdss_params_free(ps);
    if (st) return fail(st);
    const int rc = emit(json, output_path);
    fdss_string_free(json);
    return rc;
  }

  if (cmd_tr->parsed()) {
    fdss_params* ps = nullptr;
    if (auto st = tr_params.make(&ps)) return fail(st);
    char* json = nullptr;
    const fdss_status st = fdss_transform_json(
        ps, tr_mode == "printed" ? FDSS_PRINTED_CONSTANTS : FDSS_DERIVED_CONSTANTS, &json);
    fdss_params_free(ps);
    if (st) return fail(st);
    // surface the constant-mode warning without polluting the payload
    fdss_params* ps2 = nullptr;
    tr_params.make(&ps2);
    fdss_selfmap* sm = nullptr;
    if (fdss_selfmap_build(ps2, tr_mode == "printed" ? FDSS_PRINTED_CONSTANTS
                                                   : FDSS_DERIVED_CONSTANTS, &sm) == FDSS_OK) {
      int warn = 0;
      double resid = 0.0;
      fdss_selfmap_get(sm, nullptr, nullptr, nullptr, &resid, &warn);
      if (warn)
        std::cerr << "warning: constant mode fails the coefficient-matching residual ("
                  << resid << ")\n";
      fdss_selfmap_free(sm);
    }
    fdss_params_free(ps2);
    const int rc = emit(json, output_path);
    fdss_string_free(json);
    return rc;
  }

  if (cmd_prof->parsed()) {
    fdss_params* ps = nullptr;
    if (auto st = prof_params.make(&ps)) return fail(st);
    fdss_profile* prof = nullptr;
    fdss_status st = fdss_profile_integrate(ps, prof_sign, prof_D, &prof_opts.opts, &prof);
    fdss_params_free(ps);
    if (st) return fail(st);
    char* payload = nullptr;
    st = prof_format == "csv" ? fdss_profile_csv(prof, &payload)
                              : fdss_profile_json(prof, 1, 1, &payload);
    fdss_profile_free(prof);
    if (st) return fail(st);
    const int rc = emit(payload, output_path);
    fdss_string_free(payload);
    return rc;
  }

  if (cmd_shoot->parsed()) {
    shoot_sopts.opts.integrate = shoot_iopts.opts;
    if (!*optPmin && !cmd_shoot->count("--p")) {
      std::cerr << "{\"error\":{\"status\":3,\"name\":\"BadArgument\",\"message\":\"shoot "
                   "needs --p (single point) or --p-min/--p-max/--p-steps (sweep)\"}}\n";
      return 1;
    }
    if (*optPmin) {
      char* csv = nullptr;
      const fdss_status st = fdss_shoot_sweep_csv(shoot_params.N, shoot_params.m,
                                                  shoot_params.sigma, shoot_sign, sweep_p_min,
                                                  sweep_p_max, sweep_steps, &shoot_sopts.opts,
                                                  &csv);
      if (st) return fail(st);
      const int rc = emit(csv, output_path);
      fdss_string_free(csv);
      return rc;
    }
    fdss_params* ps = nullptr;
    if (auto st = shoot_params.make(&ps)) return fail(st);
    char* json = nullptr;
    fdss_status st;
    if (*optD)
      st = fdss_shoot_json(ps, shoot_sign, shoot_D, &shoot_iopts.opts, &json);
    else
      st = fdss_find_fast_decay_json(ps, shoot_sign, &shoot_sopts.opts, &json);
    fdss_params_free(ps);
    if (st) return fail(st);
    const int rc = emit(json, output_path);
    fdss_string_free(json);
    return rc;
  }

  if (cmd_reg->parsed()) {
    if (*optRegM) {
      fdss_params* ps = nullptr;
      if (auto st = fdss_params_create(reg_N, reg_m, reg_p, reg_sigma, &ps)) return fail(st);
      char* json = nullptr;
      const fdss_status st = fdss_classify_region_json(ps, &json);
      fdss_params_free(ps);
      if (st) return fail(st);
      const int rc = emit(json, output_path);
      fdss_string_free(json);
      return rc;
    }
    char* csv = nullptr;
    char* boundaries = nullptr;
    const fdss_status st =
        fdss_region_grid_csv(reg_N, reg_sigma, reg_p_min, reg_p_max, reg_m_min, reg_m_max,
                             reg_res_p, reg_res_m, &csv,
                             reg_boundaries_path.empty() ? nullptr : &boundaries);
    if (st) return fail(st);
    int rc = emit(csv, output_path);
    fdss_string_free(csv);
    if (rc == 0 && boundaries) {
      std::ofstream out(reg_boundaries_path, std::ios::binary);
      if (out)
        out << boundaries;
      else
        rc = 1;
    }
    if (boundaries) fdss_string_free(boundaries);
    return rc;
  }

  if (cmd_ver->parsed()) {
    fdss_verify_suite suite = FDSS_VERIFY_IDENTITIES;
    if (ver_suite == "residual") suite = FDSS_VERIFY_RESIDUAL;
    if (ver_suite == "balance") suite = FDSS_VERIFY_BALANCE;
    const int samples = ver_samples;
    int pass = 0;
    char* json = nullptr;
    const fdss_status st = fdss_verify(suite, samples, ver_seed, &pass, &json);
    if (st) return fail(st);
    const int rc = emit(json, output_path);
    fdss_string_free(json);
    if (rc) return rc;
    return pass ? 0 : 2;
  }

  return 0;
}
