#pragma once

#include "neass/schedule.hpp"

namespace neass {

struct IntegratorOptions {
  enum class Backend { RK45, Magnus };
  Backend backend = Backend::RK45;
  /// Local error tolerance (relative to the state's Frobenius norm).
  double tol = 1e-10;
  /// Step underflow threshold as a fraction of the integration span.
  double h_min_factor = 1e-12;
  /// Re-project the state onto the unitary group / unit columns every this
  /// many accepted steps (0 disables).
  int reproject_every = 25;
};

/// Propagator of the driven system in rescaled time.  Physical time t runs
/// through the schedule window; the state solves
///     i eta dpsi/dt = (H_t + eps (H^1_t + V_t)) psi,
/// integrated as dY/dtau = -i G(eta tau) Y with tau = t / eta, so slower
/// driving (smaller eta) means a proportionally longer integration.
class Propagator {
 public:
  Propagator(const Schedule& sched, double eps, double eta, IntegratorOptions opt = {});

  /// Full unitary U(t, s) taking states at physical time s to time t.
  Mat unitary(double s, double t) const;

  /// U(t, s) v without forming the full unitary; v holds one column per state.
  Mat evolve(double s, double t, Mat v) const;

  const IntegratorOptions& options() const { return opt_; }
  /// Accepted + rejected steps of the most recent call.
  long steps_taken() const { return steps_; }

 private:
  Mat integrate(double s, double t, Mat y, bool keep_unitary) const;
  Mat rhs(double tau, const Mat& y) const;

  const Schedule* sched_;
  double eps_, eta_;
  IntegratorOptions opt_;
  mutable long steps_ = 0;
};

/// || U^dag U - 1 ||_F, a cheap unitarity health check.
double unitarity_defect(const Mat& u);

/// Newton-Schulz polar projection: nearest unitary to a slightly non-unitary
/// matrix (diverges far from the group; callers keep defects small).
Mat reunitarize(Mat u, int max_sweeps = 8);

/// y <- exp(omega) y by scaled Taylor application (no full matrix exponential).
void apply_exponential(const Mat& omega, Mat& y);

}  // namespace neass
