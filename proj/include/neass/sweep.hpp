#pragma once

#include <filesystem>

#include "neass/dynamics.hpp"
#include "neass/fit.hpp"
#include "neass/scenario.hpp"

namespace neass {

/// One computed grid point of a drift sweep.  `error` is empty on success;
/// gap or stiffness failures are captured here so the remaining grid points
/// still produce results.
struct GridRecord {
  int order = 0;
  double x = 0.0;  // the swept parameter (eta or eps)
  double drift = 0.0;
  cplx instantaneous{0.0, 0.0};
  cplx transported{0.0, 0.0};
  long steps = 0;
  double wall_seconds = 0.0;  // reported in the summary only, never hashed
  std::string error;
};

struct CriterionLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SweepResult {
  std::vector<GridRecord> records;  // ordered by (order, grid index)
  std::map<int, SlopeFit> fits;     // per expansion order
  double eta_independence = -1.0;   // NEASS runs only; negative = not measured
  LiebRobinsonReport lr;            // LR runs only
  bool has_lr = false;
  std::vector<CriterionLine> criteria;
  bool pass = false;
  bool environment_failure = false;  // any gap/stiffness record error
};

/// --threads wins; otherwise NEASS_THREADS; otherwise 1 (the deterministic
/// single-writer default).
int resolve_threads(int cli_threads);

/// Human-readable resolved plan, printed by --dry-run.
std::string plan_text(const Scenario& sc, int threads);

/// Execute the scenario's experiment: drift sweeps for adiabatic/NEASS
/// kinds, the commutator-decay probe for LR.  Grid points are distributed
/// over `threads` workers and merged by index, so the result is independent
/// of scheduling.
SweepResult run_scenario(const Scenario& sc, int threads);

/// Write results.json, per-order CSV files, a gnuplot script, and
/// summary.txt into out_dir (created if missing).  results.json depends only
/// on (scenario, seed) except for the single timestamp field; wall times go
/// to the summary.  Returns the results.json path.
std::filesystem::path write_outputs(const Scenario& sc, const SweepResult& r,
                                    const std::filesystem::path& out_dir,
                                    const std::string& timestamp, int threads);

}  // namespace neass
