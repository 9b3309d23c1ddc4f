#pragma once

#include "neass/expansion.hpp"
#include "neass/propagator.hpp"

namespace neass {

/// Outcome of one drift measurement: the dressed expectation at the end
/// time, the expectation of the transported dressed state, and their gap.
struct DriftResult {
  double drift = 0.0;
  cplx instantaneous{};
  cplx transported{};
  long steps = 0;
};

/// Dressed expectation omega_t^{eps,eta}(A) = omega_t(e^{iS} A e^{-iS}),
/// evaluated by applying e^{-iS} to the ground-sector columns.
cplx dressed_expectation(const ExpansionEngine& eng, double t, double eps, double eta,
                         const FockOperator& a);

/// |omega_t^{eps,eta}(A) - omega_{t0}^{eps,eta}(U_{t0,t} A)|: prepare the
/// dressed state at t0, transport it through the driven evolution, and
/// compare with the instantaneous dressed state at t.  Engine order 0 means
/// no dressing (bare ground states).
DriftResult dressed_drift(const ExpansionEngine& eng, double eps, double eta, double t0,
                          double t1, const FockOperator& a, IntegratorOptions opt = {});

/// Drift of the almost-stationary state on a constant schedule under the
/// eta = 1 evolution.  Throws UsageError when the schedule is ramped.
DriftResult neass_drift(const ExpansionEngine& eng, double eps, double t0, double t1,
                        const FockOperator& a, IntegratorOptions opt = {});

/// Largest |omega^{eps,eta1}(A) - omega^{eps,eta2}(A)| over the supplied
/// observables; on constant schedules the dressed state carries no eta
/// dependence, so this is a roundoff-level quantity.
double eta_independence_defect(const ExpansionEngine& eng, double t, double eps, double eta1,
                               double eta2, const std::vector<FockOperator>& obs);

/// |full-space dressed expectation - fixed-particle-number computation|:
/// every ingredient is gauge-invariant, so both must agree.
double sector_consistency_defect(const ExpansionEngine& eng, double t, double eps,
                                 double eta, const FockOperator& a);

struct LiebRobinsonEntry {
  double time = 0.0;
  int distance = 0;
  double value = 0.0;
};

/// Commutator-growth table plus a light-cone consistency fit of
/// log value ~ log C - nu log(1 + max(0, d - v (t-s)/eta)).
struct LiebRobinsonReport {
  std::vector<LiebRobinsonEntry> table;
  double velocity = 0.0;
  double nu = 0.0;
  double quality = 0.0;  // R^2 of the fit over above-floor entries
  bool monotone_at_first_time = false;
};

/// ||[U_{s,t} A, B_d]|| over the (time, distance) grid, with s the schedule
/// start.  A must be even-parity and disjoint from every B (else UsageError).
/// Constant schedules use exact eigenbasis propagation; ramped schedules
/// integrate the Heisenberg equation.
LiebRobinsonReport lieb_robinson_probe(const Schedule& sched, double eps, double eta,
                                       const FockOperator& a,
                                       const std::vector<FockOperator>& bs,
                                       const std::vector<int>& distances,
                                       const std::vector<double>& times,
                                       IntegratorOptions opt = {});

}  // namespace neass
