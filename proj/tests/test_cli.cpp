// Drives the installed CLI binary end to end: payload shapes, exit codes,
// byte determinism, file output, config files.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

int failures = 0;

#define EXPECT(cond, msg)                                           \
  do {                                                              \
    if (!(cond)) {                                                  \
      std::cerr << "FAIL " << __FILE__ << ":" << __LINE__ << ": " << msg << "\n"; \
      ++failures;                                                   \
    }                                                               \
  } while (0)

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args) {
  const std::string out_path = "cli_test_stdout.tmp";
  const std::string err_path = "cli_test_stderr.tmp";
  const std::string cmd =
      std::string(FDSS_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
  const int rc = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WEXITSTATUS(rc);
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return res;
}

}  // namespace

int main() {
  // exponents: frozen payload values
  {
    const RunResult r = run("exponents --N 3 --m 0.25 --p 1.2 --sigma 0 --format json");
    EXPECT(r.exit_code == 0, "exponents exit 0");
    const json parsed = json::parse(r.out);
    EXPECT(parsed["critical_exponents"]["p_s"].get<double>() == 1.25, "p_s");
    EXPECT(std::abs(parsed["critical_exponents"]["L"].get<double>() - 0.4) < 1e-14, "L");
  }

  // determinism: identical invocations produce identical bytes
  {
    const RunResult a = run("exponents --N 3 --m 0.25 --p 1.2 --sigma 0");
    const RunResult b = run("exponents --N 3 --m 0.25 --p 1.2 --sigma 0");
    EXPECT(a.out == b.out, "byte-identical output");
  }

  // transform: map record plus identity residuals
  {
    const RunResult r = run("transform --N 3 --m 0.25 --p 1.2 --sigma 0");
    EXPECT(r.exit_code == 0, "transform exit 0");
    const json parsed = json::parse(r.out);
    EXPECT(parsed["theta"].get<double>() == -0.5, "theta");
    EXPECT(parsed["target"]["Nbar"].get<double>() == 4.0, "Nbar");
    EXPECT(std::abs(parsed["target"]["sigmabar"].get<double>() - 1.6) < 1e-13, "sigmabar");
    EXPECT(parsed["identities"]["max_abs_residual"].get<double>() <= 1e-9, "residuals");
  }

  // printed mode warns on stderr but still renders
  {
    const RunResult r = run("transform --N 5 --m 0.5 --p 2 --sigma 1 --mode printed");
    EXPECT(r.exit_code == 0, "printed transform exit 0");
    EXPECT(r.err.find("warning") != std::string::npos, "printed warning");
  }

  // profile: CSV table and JSON payload
  {
    const RunResult r =
        run("profile --N 3 --m 0.25 --p 1.2 --sigma 0 --sign 1 --D 1 --format csv");
    EXPECT(r.exit_code == 0, "profile exit 0");
    EXPECT(r.out.rfind("xi,f,h\n", 0) == 0, "profile csv header");

    const RunResult j = run(
        "profile --N 3 --m 0.25 --p 1.2 --sigma 0 --sign 1 --D 1 --xi-max 10 --format json");
    const json parsed = json::parse(j.out);
    EXPECT(parsed["termination"] == "ReachedXiMax", "profile termination");
    EXPECT(parsed["alpha"].get<double>() > 4.9, "profile alpha");
  }

  // single shot JSON
  {
    const RunResult r = run("shoot --N 3 --m 0.25 --p 1.2 --sigma 0 --sign 1 --D 0.1");
    EXPECT(r.exit_code == 0, "shoot exit 0");
    const json parsed = json::parse(r.out);
    EXPECT(parsed["tail"]["kind"] == "SlowDecay", "shot tail");
  }

  // p-sweep CSV (a short stretch above p_s where nothing connects)
  {
    const RunResult r = run(
        "shoot --N 3 --m 0.25 --sigma 0 --sign 1 --p-min 1.3 --p-max 1.35 --p-steps 2");
    EXPECT(r.exit_code == 0, "sweep exit 0");
    EXPECT(r.out.rfind("p,D_star_or_nan,outcome,slope,constant\n", 0) == 0, "sweep header");
    EXPECT(std::count(r.out.begin(), r.out.end(), '\n') == 3, "sweep rows");
  }

  // search mode (no --D): status payload with the scan record
  {
    const RunResult r = run("shoot --N 3 --m 0.25 --p 1.3 --sigma 0 --sign 1");
    EXPECT(r.exit_code == 0, "search exit 0");
    const json parsed = json::parse(r.out);
    EXPECT(parsed["status"] == "NotFound", "search status");
    EXPECT(parsed["scan"].size() >= 64, "scan record");
  }

  // shoot without --D and without a sweep range is an argument error
  {
    const RunResult r = run("shoot --N 3 --m 0.25 --sigma 0 --sign 1 --p-steps 2");
    EXPECT(r.exit_code == 1, "missing mode exit 1");
  }

  // regions: point classification and grid with boundary overlay file
  {
    const RunResult r = run("regions --N 3 --sigma 0 --m 0.25 --p 1.2");
    EXPECT(r.exit_code == 0, "regions point exit 0");
    const json parsed = json::parse(r.out);
    EXPECT(parsed["tag"] == "E", "regions tag");

    const RunResult g = run(
        "regions --N 3 --sigma 0 --p-min 1 --p-max 3 --m-min 0.01 --m-max 0.99 "
        "--res-p 16 --res-m 16 --boundaries cli_test_boundaries.tmp");
    EXPECT(g.exit_code == 0, "regions grid exit 0");
    EXPECT(g.out.rfind("p,m,tag,behaviors\n", 0) == 0, "grid header");
    const json overlay = json::parse(slurp("cli_test_boundaries.tmp"));
    EXPECT(overlay["p_s"].size() == 16, "overlay length");
    std::remove("cli_test_boundaries.tmp");
  }

  // verify: exit code reflects the suite outcome
  {
    const RunResult r = run("verify --suite identities --samples 2000 --seed 7");
    EXPECT(r.exit_code == 0, "verify exit 0");
    const json parsed = json::parse(r.out);
    EXPECT(parsed["pass"].get<bool>(), "verify pass");
  }

  // file output via -o
  {
    const RunResult r =
        run("-o cli_test_out.tmp exponents --N 3 --m 0.25 --p 1.2 --sigma 0");
    EXPECT(r.exit_code == 0, "file output exit 0");
    const json parsed = json::parse(slurp("cli_test_out.tmp"));
    EXPECT(parsed["params"]["N"].get<double>() == 3.0, "file content");
    std::remove("cli_test_out.tmp");
  }

  // config file
  {
    std::ofstream cfg("cli_test_cfg.tmp");
    cfg << "[exponents]\nN=3\nm=0.25\np=1.2\nsigma=0\n";
    cfg.close();
    const RunResult r = run("--config cli_test_cfg.tmp exponents");
    EXPECT(r.exit_code == 0, "config exit 0");
    if (r.exit_code == 0) {
      const json parsed = json::parse(r.out);
      EXPECT(parsed["critical_exponents"]["p_s"].get<double>() == 1.25, "config p_s");
    }
    std::remove("cli_test_cfg.tmp");
  }

  // validation errors: exit 1, machine-readable stderr
  {
    const RunResult r = run("exponents --N 2 --m 0.25 --p 1.2 --sigma 0");
    EXPECT(r.exit_code == 1, "validation exit 1");
    const json err = json::parse(r.err);
    EXPECT(err["error"]["name"] == "NOutOfRange", "error name");
  }

  // degenerate transform: p = p_L
  {
    const RunResult r = run("transform --N 3 --m 0.25 --p 1 --sigma 0");
    EXPECT(r.exit_code == 1, "degenerate exit 1");
    EXPECT(r.err.find("DegenerateL") != std::string::npos, "degenerate name");
  }

  if (failures) {
    std::cerr << failures << " CLI checks failed\n";
    return 1;
  }
  std::cout << "CLI: all checks passed\n";
  return 0;
}
