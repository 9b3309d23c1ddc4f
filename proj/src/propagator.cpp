#include "neass/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "neass/errors.hpp"

namespace neass {

double unitarity_defect(const Mat& u) {
  const long n = u.cols();
  return (u.adjoint() * u - Mat::Identity(n, n)).norm();
}

Mat reunitarize(Mat u, int max_sweeps) {
  const long n = u.cols();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    Mat gram = u.adjoint() * u;
    const double defect = (gram - Mat::Identity(n, n)).norm();
    if (defect < 1e-15 * n) break;
    u = 0.5 * (3.0 * u - u * gram);
  }
  return u;
}

void apply_exponential(const Mat& omega, Mat& y) {
  // Split exp(omega) = exp(omega/m)^m with ||omega/m|| <= 1/2, then apply the
  // truncated series; 24 terms push the tail below double precision.
  const double nrm = omega.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm bound
  const int m = std::max(1, static_cast<int>(std::ceil(nrm / 0.5)));
  const Mat w = omega / double(m);
  for (int rep = 0; rep < m; ++rep) {
    Mat term = y;
    Mat acc = y;
    for (int k = 1; k <= 24; ++k) {
      term = (w * term) / double(k);
      acc += term;
      if (term.norm() <= 1e-18 * acc.norm()) break;
    }
    y = std::move(acc);
  }
}

Propagator::Propagator(const Schedule& sched, double eps, double eta, IntegratorOptions opt)
    : sched_(&sched), eps_(eps), eta_(eta), opt_(opt) {
  if (!(eta > 0)) throw ValidationError("adiabatic parameter eta must be positive");
  if (!(opt_.tol > 0)) throw ValidationError("integrator tolerance must be positive");
}

Mat Propagator::rhs(double tau, const Mat& y) const {
  return cplx(0, -1) * (sched_->generator(eta_ * tau, eps_) * y);
}

Mat Propagator::unitary(double s, double t) const {
  const long n = sched_->fock().dim();
  if (s == t) return Mat::Identity(n, n);
  return integrate(s, t, Mat::Identity(n, n), true);
}

Mat Propagator::evolve(double s, double t, Mat v) const {
  if (s == t) return v;
  return integrate(s, t, std::move(v), false);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kC[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
// b5 - b4: weights of the embedded error estimate.
constexpr double kE[7] = {71.0 / 57600,     0.0,           -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525,   -1.0 / 40};

}  // namespace

Mat Propagator::integrate(double s, double t, Mat y, bool keep_unitary) const {
  // Rescaled endpoints; direction may be forward or backward in time.
  const double tau0 = s / eta_, tau1 = t / eta_;
  const double span = tau1 - tau0;
  const double dir = span > 0 ? 1.0 : -1.0;
  const double h_min = opt_.h_min_factor * std::abs(span);
  steps_ = 0;

  // The exact flow preserves column norms; projection restores them.
  Eigen::VectorXd norm0(y.cols());
  for (long c = 0; c < y.cols(); ++c) norm0(c) = y.col(c).norm();
  auto project = [&](Mat& m) {
    if (keep_unitary) {
      m = reunitarize(std::move(m));
    } else {
      for (long c = 0; c < m.cols(); ++c) {
        const double n = m.col(c).norm();
        if (n > 0 && norm0(c) > 0) m.col(c) *= norm0(c) / n;
      }
    }
  };

  if (opt_.backend == IntegratorOptions::Backend::Magnus) {
    // Midpoint Magnus with step doubling (2nd order => error/3 estimate).
    double h = dir * std::min(std::abs(span), 0.1);
    double tau = tau0;
    int since_projection = 0;
    while (dir * (tau1 - tau) > 0) {
      if (dir * (tau + h - tau1) > 0) h = tau1 - tau;
      auto step = [&](double from, double dt, const Mat& in) {
        Mat omega = cplx(0, -1) * dt * sched_->generator(eta_ * (from + dt / 2), eps_);
        Mat out = in;
        apply_exponential(omega, out);
        return out;
      };
      Mat full = step(tau, h, y);
      Mat half = step(tau + h / 2, h / 2, step(tau, h / 2, y));
      const double err = (full - half).norm() / (3.0 * std::max(1.0, y.norm()));
      ++steps_;
      if (err <= opt_.tol) {
        y = std::move(half);
        tau += h;
        if (opt_.reproject_every > 0 && ++since_projection >= opt_.reproject_every) {
          since_projection = 0;
          project(y);
        }
      }
      const double scale = 0.9 * std::pow(opt_.tol / std::max(err, 1e-300), 1.0 / 3.0);
      h *= std::clamp(scale, 0.2, 5.0);
      if (std::abs(h) < h_min)
        throw StiffnessError("integrator step underflow; driving too fast for this eta",
                             eta_ * std::abs(h) / h_min);
    }
  } else {
    double h = dir * std::min(std::abs(span), 0.1);
    double tau = tau0;
    int since_projection = 0;
    Mat k[7];
    while (dir * (tau1 - tau) > 0) {
      if (dir * (tau + h - tau1) > 0) h = tau1 - tau;
      k[0] = rhs(tau, y);
      for (int i = 1; i < 7; ++i) {
        Mat yi = y;
        for (int j = 0; j < i; ++j)
          if (kA[i][j] != 0.0) yi += (h * kA[i][j]) * k[j];
        k[i] = rhs(tau + kC[i] * h, yi);
      }
      // 5th-order solution reuses stage 7 weights (FSAL row of the tableau).
      Mat y5 = y;
      for (int j = 0; j < 6; ++j)
        if (kA[6][j] != 0.0) y5 += (h * kA[6][j]) * k[j];
      Mat err_mat = Mat::Zero(y.rows(), y.cols());
      for (int j = 0; j < 7; ++j)
        if (kE[j] != 0.0) err_mat += (h * kE[j]) * k[j];
      const double err = err_mat.norm() / std::max(1.0, y.norm());
      ++steps_;
      if (err <= opt_.tol) {
        y = std::move(y5);
        tau += h;
        if (opt_.reproject_every > 0 && ++since_projection >= opt_.reproject_every) {
          since_projection = 0;
          project(y);
        }
      }
      const double scale = 0.9 * std::pow(opt_.tol / std::max(err, 1e-300), 0.2);
      h *= std::clamp(scale, 0.2, 5.0);
      if (std::abs(h) < h_min)
        throw StiffnessError("integrator step underflow; driving too fast for this eta",
                             eta_ * std::abs(h) / h_min);
    }
  }

  project(y);
  return y;
}

}  // namespace neass
