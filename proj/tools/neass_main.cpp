#include <CLI11.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "neass/errors.hpp"
#include "neass/fit.hpp"
#include "neass/suites.hpp"

namespace {

// Exit-code contract: 0 all assertions pass, 1 criteria failed, 2 validation
// or usage error, 3 numerical-environment failure (gap closure, stiffness).
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitValidation = 2;
constexpr int kExitEnvironment = 3;

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void print_criteria(const std::vector<neass::CriterionLine>& lines) {
  for (const auto& c : lines)
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
}

int cmd_run(const std::string& file, const std::string& out, int threads, bool dry_run) {
  const neass::Scenario sc = neass::Scenario::load(file);
  const int n = neass::resolve_threads(threads);
  if (dry_run) {
    std::cout << neass::plan_text(sc, n);
    return kExitPass;
  }
  const neass::SweepResult res = neass::run_scenario(sc, n);
  const std::filesystem::path dir =
      out.empty() ? std::filesystem::path("results") / sc.name : std::filesystem::path(out);
  const auto written = neass::write_outputs(sc, res, dir, utc_timestamp(), n);
  print_criteria(res.criteria);
  std::cout << "outputs: " << written.string() << "\n";
  std::cout << (res.pass ? "PASS" : "FAIL") << "  " << sc.name << "\n";
  if (res.environment_failure) return kExitEnvironment;
  return res.pass ? kExitPass : kExitFail;
}

int cmd_suite(const std::string& name, int threads) {
  const neass::SuiteReport rep = neass::run_suite(name, neass::resolve_threads(threads));
  print_criteria(rep.lines);
  std::cout << (rep.pass ? "PASS" : "FAIL") << "  suite " << rep.suite << "\n";
  return rep.pass ? kExitPass : kExitFail;
}

int cmd_fit(const std::string& file, double floor) {
  std::ifstream in(file);
  if (!in) throw neass::UsageError("cannot open '" + file + "'");
  std::vector<double> xs, ys;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ls(line);
    double x, y;
    if (ls >> x >> y) {
      xs.push_back(x);
      ys.push_back(y);
    }
  }
  if (xs.empty()) throw neass::ValidationError("no numeric (x, y) rows in '" + file + "'");
  const neass::SlopeFit fit = neass::fit_slope(xs, ys, floor);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "slope %.6f (95%% ci %.6f..%.6f), %d points used, %d floor-limited\n",
                fit.slope, fit.ci_low, fit.ci_high, fit.used_points, fit.floor_limited);
  std::cout << buf;
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neass: adiabatic response and stationary-state scaling laboratory"};
  app.require_subcommand(1);

  std::string run_file, run_out;
  int run_threads = 0;
  bool dry_run = false;
  auto* run = app.add_subcommand("run", "execute a scenario file and write result files");
  run->add_option("scenario", run_file, "scenario JSON file")->required();
  run->add_option("--out", run_out, "output directory (default results/<name>)");
  run->add_option("--threads", run_threads, "worker threads (default NEASS_THREADS or 1)");
  run->add_flag("--dry-run", dry_run, "validate and print the resolved plan only");

  std::string suite_name;
  int suite_threads = 0;
  auto* suite = app.add_subcommand("suite", "run a named check group");
  std::string names;
  for (const auto& s : neass::suite_names()) names += (names.empty() ? "" : ", ") + s;
  suite->add_option("name", suite_name, "one of: " + names)->required();
  suite->add_option("--threads", suite_threads, "worker threads (default NEASS_THREADS or 1)");

  std::string fit_file;
  double fit_floor = 1e-13;
  auto* fit = app.add_subcommand("fit", "log-log slope fit of a two-column (x, y) CSV");
  fit->add_option("csv", fit_file, "CSV file with x,y rows")->required();
  fit->add_option("--floor", fit_floor, "exclude y at or below this floor (default 1e-13)");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_file, run_out, run_threads, dry_run);
    if (suite->parsed()) return cmd_suite(suite_name, suite_threads);
    if (fit->parsed()) return cmd_fit(fit_file, fit_floor);
    return kExitValidation;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitValidation;
  } catch (const neass::GapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const neass::StiffnessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const neass::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const neass::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
}
