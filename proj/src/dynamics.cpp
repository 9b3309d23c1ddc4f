#include "neass/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "neass/norms.hpp"

namespace neass {

namespace {

Mat dressed_columns(const ExpansionEngine& eng, double t, double eps, double eta) {
  const KTable& tab = eng.table(t);
  Mat w = ground_state(tab.spectral).vectors;
  if (eng.order() >= 1) {
    const Mat s = eng.s_global(t, eps, eta);
    if (s.cwiseAbs().maxCoeff() > 0.0) {
      const Mat omega = cplx(0, -1) * s;
      apply_exponential(omega, w);
    }
  }
  return w;
}

cplx column_average(const Mat& w, const Mat& a) {
  cplx acc = 0;
  for (long c = 0; c < w.cols(); ++c) acc += w.col(c).dot(a * w.col(c));
  return acc / double(w.cols());
}

}  // namespace

cplx dressed_expectation(const ExpansionEngine& eng, double t, double eps, double eta,
                         const FockOperator& a) {
  return column_average(dressed_columns(eng, t, eps, eta), a.matrix());
}

DriftResult dressed_drift(const ExpansionEngine& eng, double eps, double eta, double t0,
                          double t1, const FockOperator& a, IntegratorOptions opt) {
  const Schedule& sched = eng.schedule();
  const Mat w0 = dressed_columns(eng, t0, eps, eta);
  const Mat w1 = dressed_columns(eng, t1, eps, eta);
  if (w0.cols() != w1.cols())
    throw GapError("ground degeneracy changes across the drift window");

  DriftResult out;
  Mat wt = w0;
  if (t1 != t0) {
    Propagator prop(sched, eps, eta, opt);
    wt = prop.evolve(t0, t1, w0);
    out.steps = prop.steps_taken();
  }
  out.instantaneous = column_average(w1, a.matrix());
  out.transported = column_average(wt, a.matrix());
  out.drift = std::abs(out.instantaneous - out.transported);
  return out;
}

DriftResult neass_drift(const ExpansionEngine& eng, double eps, double t0, double t1,
                        const FockOperator& a, IntegratorOptions opt) {
  if (!eng.schedule().time_independent())
    throw UsageError("almost-stationary drift is defined on constant schedules only");
  return dressed_drift(eng, eps, 1.0, t0, t1, a, opt);
}

double eta_independence_defect(const ExpansionEngine& eng, double t, double eps, double eta1,
                               double eta2, const std::vector<FockOperator>& obs) {
  double worst = 0.0;
  for (const auto& a : obs) {
    const cplx v1 = dressed_expectation(eng, t, eps, eta1, a);
    const cplx v2 = dressed_expectation(eng, t, eps, eta2, a);
    worst = std::max(worst, std::abs(v1 - v2));
  }
  return worst;
}

double sector_consistency_defect(const ExpansionEngine& eng, double t, double eps,
                                 double eta, const FockOperator& a) {
  const FockSpace& fs = eng.schedule().fock();
  if (!a.gauge_invariant())
    throw UsageError("sector comparison needs a gauge-invariant observable");
  const cplx full = dressed_expectation(eng, t, eps, eta, a);

  // Locate the ground state's particle number, then redo the computation
  // inside that fixed-N sector.
  const KTable& tab = eng.table(t);
  const GroundState gs = ground_state(tab.spectral);
  const double n_mean = gs.expect(fs.total_number().matrix()).real();
  const int n = static_cast<int>(std::lround(n_mean));
  if (std::abs(n_mean - n) > 1e-8)
    throw UsageError("ground sector mixes particle numbers; no sector comparison");

  const Mat hs = fs.sector_restrict(tab.h_global, n);
  Eigen::SelfAdjointEigenSolver<Mat> es(hs);
  const Eigen::VectorXd evals = es.eigenvalues();
  const long dim_s = hs.rows();
  long deg = 1;
  while (deg < dim_s && evals(deg) - evals(0) <= tab.spectral.deg_tol) ++deg;
  Mat w = es.eigenvectors().leftCols(deg);
  if (eng.order() >= 1) {
    const Mat ss = fs.sector_restrict(eng.s_global(t, eps, eta), n);
    if (ss.cwiseAbs().maxCoeff() > 0.0) {
      const Mat omega = cplx(0, -1) * ss;
      apply_exponential(omega, w);
    }
  }
  const cplx sector = column_average(w, fs.sector_restrict(a.matrix(), n));
  return std::abs(full - sector);
}

namespace {

/// Linear fit of log y = c - nu z(v) with a line search over the velocity v.
void fit_light_cone(const std::vector<double>& tau, const std::vector<int>& dist,
                    const std::vector<double>& val, LiebRobinsonReport& rep) {
  std::vector<size_t> keep;
  for (size_t i = 0; i < val.size(); ++i)
    if (val[i] > 1e-13 && tau[i] > 0) keep.push_back(i);
  if (keep.size() < 3) return;

  double best_ss = -1.0;
  double sstot = 0.0;
  {
    double mean = 0.0;
    for (size_t i : keep) mean += std::log(val[i]);
    mean /= double(keep.size());
    for (size_t i : keep) sstot += std::pow(std::log(val[i]) - mean, 2);
  }
  for (int iv = 0; iv <= 62; ++iv) {
    const double v = 0.25 + iv * 0.125;
    double sz = 0, szz = 0, sy = 0, szy = 0;
    const double np = double(keep.size());
    for (size_t i : keep) {
      const double z = std::log(1.0 + std::max(0.0, dist[i] - v * tau[i]));
      const double y = std::log(val[i]);
      sz += z;
      szz += z * z;
      sy += y;
      szy += z * y;
    }
    const double det = np * szz - sz * sz;
    if (std::abs(det) < 1e-12) continue;  // all points inside the cone
    const double slope = (np * szy - sz * sy) / det;  // = -nu
    const double icept = (sy - slope * sz) / np;
    double ss = 0;
    for (size_t i : keep) {
      const double z = std::log(1.0 + std::max(0.0, dist[i] - v * tau[i]));
      ss += std::pow(std::log(val[i]) - icept - slope * z, 2);
    }
    if (best_ss < 0 || ss < best_ss) {
      best_ss = ss;
      rep.velocity = v;
      rep.nu = -slope;
    }
  }
  if (best_ss >= 0 && sstot > 0) rep.quality = 1.0 - best_ss / sstot;
}

}  // namespace

LiebRobinsonReport lieb_robinson_probe(const Schedule& sched, double eps, double eta,
                                       const FockOperator& a,
                                       const std::vector<FockOperator>& bs,
                                       const std::vector<int>& distances,
                                       const std::vector<double>& times,
                                       IntegratorOptions opt) {
  if (bs.size() != distances.size())
    throw ValidationError("one distance label per probe operator");
  if (a.parity() != Parity::Even) throw UsageError("probe observable must be even");
  for (const auto& b : bs)
    if (!intersect_sites(a.support(), b.support()).empty())
      throw UsageError("probe supports must be disjoint");
  if (!(eta > 0)) throw ValidationError("adiabatic parameter eta must be positive");

  const double s0 = sched.t_begin();
  LiebRobinsonReport rep;
  std::vector<double> taus;
  std::vector<int> dists;
  std::vector<double> vals;

  const bool autonomous = sched.time_independent();
  Eigen::SelfAdjointEigenSolver<Mat> es;
  if (autonomous) {
    es.compute(sched.generator(s0, eps));
    if (es.info() != Eigen::Success) throw ValidationError("eigensolver failed on the generator");
  }

  for (double t : times) {
    Mat ah;
    if (autonomous) {
      // Heisenberg evolution e^{i theta G} A e^{-i theta G} in the eigenbasis.
      const double theta = (t - s0) / eta;
      const Mat& v = es.eigenvectors();
      Mat core = v.adjoint() * a.matrix() * v;
      for (long r = 0; r < core.rows(); ++r)
        for (long c = 0; c < core.cols(); ++c)
          core(r, c) *= std::exp(cplx(0, theta * (es.eigenvalues()(r) - es.eigenvalues()(c))));
      ah = v * core * v.adjoint();
    } else {
      Propagator prop(sched, eps, eta, opt);
      const Mat u = prop.unitary(s0, t);
      ah = u.adjoint() * a.matrix() * u;
    }
    for (size_t m = 0; m < bs.size(); ++m) {
      const Mat comm = ah * bs[m].matrix() - bs[m].matrix() * ah;
      const double nrm = spectral_norm(comm);
      rep.table.push_back({t, distances[m], nrm});
      taus.push_back((t - s0) / eta);
      dists.push_back(distances[m]);
      vals.push_back(nrm);
    }
  }

  // Monotone decay in distance at the first probe time.
  rep.monotone_at_first_time = true;
  if (!times.empty()) {
    std::vector<std::pair<int, double>> row;
    for (const auto& e : rep.table)
      if (e.time == times.front()) row.push_back({e.distance, e.value});
    std::sort(row.begin(), row.end());
    for (size_t i = 1; i < row.size(); ++i)
      if (row[i].second > row[i - 1].second * (1 + 1e-9) + 1e-14)
        rep.monotone_at_first_time = false;
  }

  fit_light_cone(taus, dists, vals, rep);
  return rep;
}

}  // namespace neass
