#include <doctest.h>

#include <random>

#include "neass/builder.hpp"
#include "neass/propagator.hpp"

using namespace neass;

namespace {

Schedule constant_chain(const FockSpace& fs) {
  Schedule sched(fs, 0.0, 1.0);
  const int rs = sched.add_ramp(Ramp::constant(1.3));
  const int rw = sched.add_ramp(Ramp::constant(0.6));
  const int n = fs.geometry().num_sites();
  for (int x = 0; x + 1 < n; ++x) {
    SiteSet sites = {x, x + 1};
    sched.add_h_term(sites,
                     build_operator(fs, "hc(adag(" + std::to_string(x) + ")*a(" +
                                            std::to_string(x + 1) + "))",
                                    &sites),
                     x % 2 == 0 ? rs : rw);
  }
  sched.validate();
  return sched;
}

Schedule ramped_chain(const FockSpace& fs) {
  Schedule sched(fs, 0.0, 1.0);
  const int rs = sched.add_ramp(Ramp::smoothstep(1.3, 0.9, 0.0, 1.0));
  const int rw = sched.add_ramp(Ramp::constant(0.6));
  const int n = fs.geometry().num_sites();
  for (int x = 0; x + 1 < n; ++x) {
    SiteSet sites = {x, x + 1};
    sched.add_h_term(sites,
                     build_operator(fs, "hc(adag(" + std::to_string(x) + ")*a(" +
                                            std::to_string(x + 1) + "))",
                                    &sites),
                     x % 2 == 0 ? rs : rw);
  }
  sched.validate();
  return sched;
}

Mat exact_exponential(const Mat& h, double factor) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phases(es.eigenvalues().size());
  for (int k = 0; k < phases.size(); ++k)
    phases[k] = std::polar(1.0, factor * es.eigenvalues()[k]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("constant generator matches the exact exponential") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  const Schedule sched = constant_chain(fs);
  const Mat h = sched.generator(0.0, 0.0);

  const double eta = 0.7, t1 = 0.8;
  const Propagator prop(sched, 0.0, eta);
  const Mat u = prop.unitary(0.0, t1);
  const Mat ref = exact_exponential(h, -t1 / eta);
  CHECK((u - ref).norm() <= 1e-7);
  CHECK(prop.steps_taken() > 0);
  CHECK(unitarity_defect(u) <= 1e-9);
}

TEST_CASE("cocycle composition and inverse") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  const Schedule sched = ramped_chain(fs);
  const Propagator prop(sched, 0.1, 0.5);

  const Mat u10 = prop.unitary(0.0, 0.5);
  const Mat u21 = prop.unitary(0.5, 1.0);
  const Mat u20 = prop.unitary(0.0, 1.0);
  CHECK((u21 * u10 - u20).norm() <= 1e-7);

  // reversing the endpoints inverts the unitary
  const Mat back = prop.unitary(0.5, 0.0);
  CHECK((back * u10 - Mat::Identity(fs.dim(), fs.dim())).norm() <= 1e-7);

  CHECK(unitarity_defect(u20) <= 1e-9);
}

TEST_CASE("vector evolution agrees with the full unitary") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  const Schedule sched = ramped_chain(fs);
  const Propagator prop(sched, 0.0, 0.6);

  std::mt19937 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  Mat v(fs.dim(), 2);
  for (int i = 0; i < v.rows(); ++i)
    for (int j = 0; j < 2; ++j) v(i, j) = cplx(g(rng), g(rng));
  v.col(0).normalize();
  v.col(1).normalize();

  const Mat u = prop.unitary(0.0, 1.0);
  const Mat w = prop.evolve(0.0, 1.0, v);
  CHECK((w - u * v).norm() <= 1e-7);
}

TEST_CASE("integrator backends agree on a ramped schedule") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  const Schedule sched = ramped_chain(fs);

  IntegratorOptions rk;
  rk.backend = IntegratorOptions::Backend::RK45;
  rk.tol = 1e-11;
  IntegratorOptions mg;
  mg.backend = IntegratorOptions::Backend::Magnus;
  mg.tol = 1e-11;

  const Mat u1 = Propagator(sched, 0.05, 0.4, rk).unitary(0.0, 1.0);
  const Mat u2 = Propagator(sched, 0.05, 0.4, mg).unitary(0.0, 1.0);
  CHECK((u1 - u2).norm() <= 1e-7);

  // self-convergence: tightening the tolerance moves the answer very little
  IntegratorOptions loose = rk;
  loose.tol = 1e-8;
  const Mat u3 = Propagator(sched, 0.05, 0.4, loose).unitary(0.0, 1.0);
  CHECK((u1 - u3).norm() <= 1e-5);
}

TEST_CASE("stiffness guard reports an eta floor") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  const Schedule sched = ramped_chain(fs);
  IntegratorOptions opt;
  opt.tol = 1e-12;
  opt.h_min_factor = 0.4;  // forces step underflow immediately
  const Propagator prop(sched, 0.0, 0.5, opt);
  CHECK_THROWS_AS((void)prop.unitary(0.0, 1.0), StiffnessError);
}

TEST_CASE("unitarity helpers") {
  const FockSpace fs(LatticeGeometry::chain(3, 1));
  const Schedule sched = constant_chain(fs);
  const Mat u = Propagator(sched, 0.0, 1.0).unitary(0.0, 0.5);

  std::mt19937 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  Mat noise(u.rows(), u.cols());
  for (int i = 0; i < u.rows(); ++i)
    for (int j = 0; j < u.cols(); ++j) noise(i, j) = cplx(g(rng), g(rng));
  const Mat dirty = u + 1e-6 * noise;
  const Mat clean = reunitarize(dirty);
  CHECK(unitarity_defect(clean) <= 1e-12);
  CHECK((clean - u).norm() <= 1e-4);

  // apply_exponential reproduces the eigenbasis exponential
  const Mat h = sched.generator(0.0, 0.0);
  Mat y = Mat::Identity(h.rows(), h.cols());
  apply_exponential(cplx(0, -0.3) * h, y);
  CHECK((y - exact_exponential(h, -0.3)).norm() <= 1e-10);
}
