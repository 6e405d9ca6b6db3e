// Release acceptance runner: executes every gate criterion and prints one
// pass/fail line per criterion.  Exits nonzero if any criterion fails.
//
// The first eight criteria run in-process from the verification battery.
// The ninth — report determinism — invokes the command-line tool twice and
// byte-compares the emitted reports, so it needs the tool's path: argv[1]
// if given (the test harness passes it), else the ABELIAN_CLI environment
// variable, else ../tools/abelian_codes_cli next to this binary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "abelian/verify.hpp"

namespace {

using abelian::verify::CriterionResult;

struct Capture {
  int exit_code = -1;
  std::string out;
};

Capture run_capture(const std::string& cmd) {
  Capture cap;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return cap;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) cap.out.append(buf, n);
  int status = pclose(pipe);
  if (status != -1 && WIFEXITED(status)) cap.exit_code = WEXITSTATUS(status);
  return cap;
}

std::string locate_cli(int argc, char** argv) {
  if (argc > 1) return argv[1];
  if (const char* env = std::getenv("ABELIAN_CLI")) return env;
  std::error_code ec;
  auto self = std::filesystem::absolute(argv[0], ec).lexically_normal();
  auto guess = self.parent_path().parent_path() / "tools" / "abelian_codes_cli";
  return guess.string();
}

CriterionResult report_determinism(const std::string& cli) {
  CriterionResult r;
  r.name = "report-determinism";
  auto t0 = std::chrono::steady_clock::now();
  std::error_code ec;
  if (!std::filesystem::exists(cli, ec)) {
    r.pass = false;
    r.detail = "command-line tool not found at '" + cli + "'";
    return r;
  }
  std::string cmd = "'" + cli + "' verify-suite --seed 7 2>/dev/null";
  Capture a = run_capture(cmd);
  Capture b = run_capture(cmd);
  r.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (a.exit_code != 0 || b.exit_code != 0) {
    r.pass = false;
    r.detail = "verify-suite exited " + std::to_string(a.exit_code) + " and " +
               std::to_string(b.exit_code) + " (want 0 and 0)";
    return r;
  }
  if (a.out.empty() || a.out != b.out) {
    r.pass = false;
    r.detail = "two runs differ: " + std::to_string(a.out.size()) + " vs " +
               std::to_string(b.out.size()) + " bytes";
    return r;
  }
  r.pass = true;
  r.detail = "two invocations produced identical " +
             std::to_string(a.out.size()) + "-byte reports";
  return r;
}

int emit(const CriterionResult& r) {
  std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
  std::cout << "  (" << std::fixed;
  std::cout.precision(1);
  std::cout << r.elapsed_s << "s";
  if (r.budget_s > 0) std::cout << "/" << r.budget_s << "s budget";
  std::cout << ")\n       " << r.detail << "\n";
  std::cout.flush();
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  namespace v = abelian::verify;
  int failures = 0;
  std::vector<v::Rank2Point> grid;

  failures += emit(v::rank2_grid_cross_check(grid));
  failures += emit(v::rank2_linear_family());
  failures += emit(v::reference_class_counts());
  failures += emit(v::divisor_count_characterization());
  failures += emit(v::coprime_multiplicativity(7));
  failures += emit(v::witness_suite());
  failures += emit(v::rank2_type_census(grid));
  failures += emit(v::minimal_code_cross_check());
  failures += emit(report_determinism(locate_cli(argc, argv)));

  if (failures == 0) {
    std::cout << "all 9 acceptance criteria passed\n";
  } else {
    std::cout << failures << " of 9 acceptance criteria FAILED\n";
  }
  return failures == 0 ? 0 : 1;
}
