#include "neass/expansion.hpp"

#include <bit>
#include <cmath>

namespace neass {

ExpansionEngine::ExpansionEngine(const Schedule& sched, ExpansionOptions opt)
    : sched_(&sched), opt_(opt) {
  if (opt_.order < 0 || opt_.order > 6)
    throw ValidationError("expansion order must lie in 0..6");
  gap_ = opt_.gap > 0 ? opt_.gap : sched.path_gap(opt_.gap_grid_points);
  h_ = opt_.fd_step > 0 ? opt_.fd_step : 1e-3 * sched.time_scale();
}

const KTable& ExpansionEngine::table_impl(double t, int max_order) const {
  const std::uint64_t key = std::bit_cast<std::uint64_t>(t);
  auto it = cache_.find(key);
  if (it != cache_.end() && it->second->order() >= max_order) return *it->second;
  const int build_order =
      std::max(max_order, it != cache_.end() ? it->second->order() : 0);

  const FockSpace& fs = sched_->fock();
  auto tab = std::make_shared<KTable>(build_order);
  tab->h_global = sched_->hamiltonian(t).global(fs).matrix();
  tab->h1v_global = sched_->h1(t).global(fs).matrix() +
                    sched_->potential(t).as_interaction(fs).global(fs).matrix();
  tab->spectral = diagonalize(tab->h_global, opt_.deg_tol_rel);
  const FilterFunction f(gap_);
  const Mat hdot = sched_->hdot(t).global(fs).matrix();
  tab->ihdot_global =
      inverse_liouvillian(tab->spectral, f, hdot * tab->h_global - tab->h_global * hdot);

  for (int j = 1; j <= build_order; ++j)
    for (int i = 0; i <= j; ++i) {
      tab->l(j, i) = collect_l(t, *tab, j, i);
      const Mat b = tab->l(j, i) * tab->h_global - tab->h_global * tab->l(j, i);
      tab->k(j, i) = -inverse_liouvillian(tab->spectral, f, b);
    }
  cache_[key] = tab;
  return *cache_[key];
}

Mat ExpansionEngine::tuple_sum(const KTable& tab, int k, int jj, int ii, const Mat& a) const {
  if (k == 0) {
    if (jj == 0 && ii == 0) return a;
    return Mat::Zero(a.rows(), a.cols());
  }
  Mat out = Mat::Zero(a.rows(), a.cols());
  if (jj < k || ii < 0 || ii > jj) return out;
  // Outermost tuple slot (j1, i1); the remaining k-1 slots need jj - j1 >= k - 1.
  for (int j1 = 1; j1 <= jj - (k - 1); ++j1)
    for (int i1 = 0; i1 <= std::min(j1, ii); ++i1) {
      const Mat inner = tuple_sum(tab, k - 1, jj - j1, ii - i1, a);
      if (inner.cwiseAbs().maxCoeff() == 0.0) continue;
      const Mat& kf = tab.k(j1, i1);
      if (kf.cwiseAbs().maxCoeff() == 0.0) continue;
      out += cplx(0, 1) * (kf * inner - inner * kf);
    }
  return out;
}

Mat ExpansionEngine::collect_l(double t, const KTable& tab, int j, int i) const {
  const long d = tab.h_global.rows();
  Mat out = Mat::Zero(d, d);

  // Iterated commutators on H at bidegree (j, i).  k = 0 is the ungraded H
  // itself and k = 1 is the extracted i[K^{j,i}, H], so both are excluded.
  double kfact = 1.0;
  for (int k = 2; k <= j; ++k) {
    kfact *= k;  // now k!
    out += tuple_sum(tab, k, j, i, tab.h_global) / kfact;
  }

  // Iterated commutators on H^1 + V; the explicit eps shifts the bidegree
  // by (1, 1).  The k = 0 term is H^1 + V itself at (j, i) = (1, 1).
  if (i >= 1) {
    kfact = 1.0;
    for (int k = 0; k <= j - 1; ++k) {
      if (k > 0) kfact *= k;
      out += tuple_sum(tab, k, j - 1, i - 1, tab.h1v_global) / kfact;
    }
  }

  // Minus the dS/ds Taylor sum: dK^{j0,i0}/dt with k extra ad factors and an
  // explicit eta, so the tuple must carry bidegree (j - 1 - j0, i - i0).
  for (int j0 = 1; j0 <= j - 1; ++j0)
    for (int i0 = std::max(0, i - (j - 1 - j0)); i0 <= std::min(i, j0); ++i0) {
      const Mat kd = k_dot(t, j0, i0);
      if (kd.cwiseAbs().maxCoeff() == 0.0) continue;
      kfact = 1.0;
      for (int k = 0; k <= j - 1 - j0; ++k) {
        kfact *= (k + 1);  // (k+1)!
        out -= tuple_sum(tab, k, j - 1 - j0, i - i0, kd) / kfact;
      }
    }

  // The spectral-flow generator enters only at bidegree (1, 0).
  if (j == 1 && i == 0) out += tab.ihdot_global;
  return out;
}

Mat ExpansionEngine::k_dot(double t, int j, int i, double* error_estimate) const {
  const FockSpace& fs = sched_->fock();
  if (sched_->time_independent()) {
    if (error_estimate) *error_estimate = 0.0;
    return Mat::Zero(fs.dim(), fs.dim());
  }
  auto central = [&](double h) {
    const Mat kp = table_impl(t + h, j).k(j, i);
    const Mat km = table_impl(t - h, j).k(j, i);
    return Mat((kp - km) / (2.0 * h));
  };
  const Mat d1 = central(h_);
  const Mat d2 = central(h_ / 2);
  if (error_estimate) *error_estimate = (d2 - d1).norm() / 3.0;
  return (4.0 * d2 - d1) / 3.0;
}

Mat ExpansionEngine::s_global(double t, double eps, double eta) const {
  const KTable& tab = table(t);
  Mat s = Mat::Zero(tab.h_global.rows(), tab.h_global.cols());
  for (int j = 1; j <= opt_.order; ++j)
    for (int i = 0; i <= j; ++i)
      s += std::pow(eps, i) * std::pow(eta, j - i) * tab.k(j, i);
  return s;
}

AnchoredInverse ExpansionEngine::k_interaction(double t, int j, int i) const {
  const KTable& tab = table(t);
  const FockSpace& fs = sched_->fock();
  const FilterFunction f(gap_);
  const ZeroChain chain = zero_chain(fs, sched_->hamiltonian(t));
  AnchoredInverse ai = inverse_liouvillian_interaction(
      fs, tab.spectral, f, FockOperator(tab.l(j, i), fs.all_sites()), chain);
  // K = -(inverse Liouvillian of L): negate every piece.
  ai.interaction = ai.interaction * (-1.0);
  for (auto& op : ai.anchor) op = op * cplx(-1.0);
  return ai;
}

Mat ExpansionEngine::c_global(double t, int j, int i) const {
  const KTable& tab = table(t);
  return cplx(0, 1) * (tab.k(j, i) * tab.h_global - tab.h_global * tab.k(j, i)) +
         tab.l(j, i);
}

double ExpansionEngine::cancellation_residual(double t, int j, int i, const FockOperator& a,
                                              double k_scale) const {
  const KTable& tab = table(t);
  const Mat k = k_scale * tab.k(j, i);
  const Mat c =
      cplx(0, 1) * (k * tab.h_global - tab.h_global * k) + tab.l(j, i);
  const GroundState gs = ground_state(tab.spectral);
  const Mat& am = a.matrix();
  return std::abs(gs.expect(cplx(0, 1) * (c * am - am * c)));
}

}  // namespace neass
