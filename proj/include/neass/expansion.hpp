#pragma once

#include <cstdint>
#include <map>
#include <memory>

#include "neass/schedule.hpp"
#include "neass/spectral.hpp"

namespace neass {

struct ExpansionOptions {
  /// Truncation order n of the bigraded series.
  int order = 2;
  /// Finite-difference step for dK/dt; 0 means 1e-3 times the schedule span.
  double fd_step = 0.0;
  /// Filter gap; 0 means the schedule's path gap (recommended: using one
  /// fixed gap along the whole path keeps the generator family smooth).
  double gap = 0.0;
  int gap_grid_points = 33;
  double deg_tol_rel = 1e-9;
};

/// The generator table at one time: for each 1 <= j <= order, 0 <= i <= j
/// the collected interaction L^{j,i} and the solved coefficient
/// K^{j,i} = -(inverse Liouvillian of L^{j,i}), both as global operators.
class KTable {
 public:
  explicit KTable(int order) : order_(order), l_((order + 1) * (order + 2) / 2),
                               k_(l_.size()) {}

  int order() const { return order_; }
  const Mat& l(int j, int i) const { return l_[index(j, i)]; }
  const Mat& k(int j, int i) const { return k_[index(j, i)]; }
  Mat& l(int j, int i) { return l_[index(j, i)]; }
  Mat& k(int j, int i) { return k_[index(j, i)]; }

  SpectralData spectral;  // eigendata of H at this time
  Mat h_global;           // H_t
  Mat h1v_global;         // H^1_t + V_t
  Mat ihdot_global;       // inverse Liouvillian of Hdot_t (spectral-flow generator)

 private:
  size_t index(int j, int i) const {
    if (j < 1 || j > order_ || i < 0 || i > j)
      throw ValidationError("K-table index out of range");
    return static_cast<size_t>(j * (j + 1) / 2 - 1 + i);
  }

  int order_;
  std::vector<Mat> l_, k_;
};

/// Order-by-order construction of the dressing generator
///     S_t(eps, eta) = sum_{j=1}^n sum_{i=0}^j eps^i eta^{j-i} K_t^{j,i}.
/// The coefficients solve K^{j,i} = -I_t(L^{j,i}) where L^{j,i} collects,
/// per (eps, eta) bidegree, the iterated commutators of H, H^1 + V, the
/// spectral-flow generator, and time derivatives of lower-order K's.  Tables
/// are cached per (time, order); dK/dt uses Richardson-extrapolated central
/// differences, which makes a table at time t recursively depend on tables
/// at four stencil times up to order n - 1.
class ExpansionEngine {
 public:
  ExpansionEngine(const Schedule& sched, ExpansionOptions opt = {});

  const Schedule& schedule() const { return *sched_; }
  int order() const { return opt_.order; }
  double filter_gap() const { return gap_; }
  double fd_step() const { return h_; }

  /// Full-order table at time t (cached).
  const KTable& table(double t) const { return table_impl(t, opt_.order); }

  /// Richardson-extrapolated dK^{j,i}/dt; the optional estimate receives
  /// one third of the spread between the two central differences.
  Mat k_dot(double t, int j, int i, double* error_estimate = nullptr) const;

  /// S_t(eps, eta) as a global matrix (self-adjoint, gauge-invariant).
  Mat s_global(double t, double eps, double eta) const;

  /// Ball-anchored interaction form of K^{j,i} for locality studies and
  /// table export; built on demand from the stored L.
  AnchoredInverse k_interaction(double t, int j, int i) const;

  /// C^{j,i} = i[K^{j,i}, H_t] + L^{j,i}.
  Mat c_global(double t, int j, int i) const;

  /// |omega_t(i [C^{j,i}, A])|, which the construction cancels to roundoff.
  /// k_scale rescales the K used inside C (1 = the solved value); any other
  /// value destroys the cancellation and serves as a negative control.
  double cancellation_residual(double t, int j, int i, const FockOperator& a,
                               double k_scale = 1.0) const;

 private:
  const KTable& table_impl(double t, int max_order) const;
  /// Collect L^{j,i} given all lower orders in `tab` (already filled).
  Mat collect_l(double t, const KTable& tab, int j, int i) const;
  /// Sum over ordered tuples ((j1,i1),...,(jk,ik)), j_l >= 1, sum j_l = jj,
  /// sum i_l = ii, of ad(i K^{j1,i1}) ... ad(i K^{jk,ik}) (a).
  Mat tuple_sum(const KTable& tab, int k, int jj, int ii, const Mat& a) const;

  const Schedule* sched_;
  ExpansionOptions opt_;
  double gap_;
  double h_;
  mutable std::map<std::uint64_t, std::shared_ptr<KTable>> cache_;
};

}  // namespace neass
