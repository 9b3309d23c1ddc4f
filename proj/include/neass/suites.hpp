#pragma once

#include "neass/sweep.hpp"

namespace neass {

/// Outcome of one named check group: one line per asserted criterion.
struct SuiteReport {
  std::string suite;
  std::vector<CriterionLine> lines;
  bool pass = false;
  double seconds = 0.0;
};

/// Valid `suite` arguments, in display order.
std::vector<std::string> suite_names();

/// Bundled reference scenarios as JSON text (the files under scenarios/
/// carry the same documents; the suites embed them so the binary is
/// self-contained).
std::string reference_adiabatic_json();
std::string reference_neass_json();
std::string reference_lr_json();

/// Run one suite: norms (algebra/norm inequalities), spectral (inverse
/// Liouvillian and ground-state identities), expansion (cancellation, golden
/// formulas, exact specializations), adiabatic (eta-scaling of the drift),
/// neass (eps-scaling and eta-independence), lr (commutator decay).  Throws
/// UsageError on an unknown name.
SuiteReport run_suite(const std::string& name, int threads);

}  // namespace neass
