#include <doctest.h>

#include <random>

#include "neass/builder.hpp"
#include "neass/schedule.hpp"

using namespace neass;

namespace {

double fd_derivative(const Ramp& r, double t, int order, double h) {
  if (order == 0) return r.value(t);
  return (fd_derivative(r, t + h, order - 1, h) - fd_derivative(r, t - h, order - 1, h)) /
         (2 * h);
}

}  // namespace

TEST_CASE("taylor series arithmetic") {
  // f(t) = (2 + t)^2 expanded at t=1: value 9, f' = 2(2+t) = 6, f'' = 2
  const TaylorSeries t = TaylorSeries::variable(3, 1.0, 1.0);
  const TaylorSeries f = (t + 2.0) * (t + 2.0);
  CHECK(f[0] == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(f.derivative(1) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(f.derivative(2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.derivative(3) == doctest::Approx(0.0));

  // exp and reciprocal against closed forms at t = 0.3
  const TaylorSeries u = TaylorSeries::variable(4, 0.3, 1.0);
  const TaylorSeries e = u.exp();
  for (int k = 0; k <= 4; ++k)
    CHECK(e.derivative(k) == doctest::Approx(std::exp(0.3)).epsilon(1e-12));
  const TaylorSeries r = (u + 1.0).recip();  // 1/(1+t): k-th derivative (-1)^k k!/(1.3)^{k+1}
  for (int k = 0; k <= 3; ++k) {
    double want = std::tgamma(k + 1.0) / std::pow(1.3, k + 1);
    if (k % 2) want = -want;
    CHECK(r.derivative(k) == doctest::Approx(want).epsilon(1e-11));
  }
  // sin/cos consistency: sin^2 + cos^2 = 1 as a series
  const TaylorSeries s2 = u.sin() * u.sin() + u.cos() * u.cos();
  CHECK(s2[0] == doctest::Approx(1.0).epsilon(1e-13));
  for (int k = 1; k <= 4; ++k) CHECK(std::abs(s2[k]) <= 1e-13);
}

TEST_CASE("ramp values and derivatives") {
  const Ramp c = Ramp::constant(2.5);
  CHECK(c.value(0.3) == 2.5);
  CHECK(c.derivative(0.3, 1) == 0.0);
  CHECK(c.derivative(0.3, 3) == 0.0);
  CHECK(c.is_constant());

  const Ramp l = Ramp::linear(1.0, 3.0, 0.0, 2.0);
  CHECK(l.value(0.0) == doctest::Approx(1.0));
  CHECK(l.value(2.0) == doctest::Approx(3.0));
  CHECK(l.value(1.0) == doctest::Approx(2.0));
  CHECK(l.derivative(0.7, 1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(l.derivative(0.7, 2) == doctest::Approx(0.0));

  const Ramp s = Ramp::smoothstep(0.4, 0.7, 0.0, 1.0);
  CHECK(s.value(0.0) == doctest::Approx(0.4));
  CHECK(s.value(1.0) == doctest::Approx(0.7));
  CHECK(s.value(-0.5) == doctest::Approx(0.4));  // flat outside the window
  CHECK(s.value(1.5) == doctest::Approx(0.7));
  CHECK(s.value(0.5) == doctest::Approx(0.55).epsilon(1e-12));  // odd symmetry
  CHECK(s.derivative(0.0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.derivative(1.0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  // monotone increasing inside
  CHECK(s.derivative(0.3, 1) > 0.0);
  CHECK(s.derivative(0.7, 1) > 0.0);

  const Ramp w = Ramp::sinusoid(0.2, 0.5, 3.0, 0.7);
  CHECK(w.value(0.4) == doctest::Approx(0.2 + 0.5 * std::sin(3.0 * 0.4 + 0.7)).epsilon(1e-13));
  CHECK(w.derivative(0.4, 1) ==
        doctest::Approx(0.5 * 3.0 * std::cos(3.0 * 0.4 + 0.7)).epsilon(1e-12));
  CHECK(w.derivative(0.4, 2) ==
        doctest::Approx(-0.5 * 9.0 * std::sin(3.0 * 0.4 + 0.7)).epsilon(1e-12));

  // all analytic derivatives track central finite differences
  for (const Ramp& r : {l, s, w}) {
    for (double t : {0.21, 0.55, 0.83}) {
      CHECK(r.derivative(t, 1) == doctest::Approx(fd_derivative(r, t, 1, 1e-5)).epsilon(1e-6));
      CHECK(r.derivative(t, 2) == doctest::Approx(fd_derivative(r, t, 2, 1e-4)).epsilon(1e-4));
    }
  }
}

TEST_CASE("schedule assembly and generator") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  Schedule sched(fs, 0.0, 1.0);
  const int rs = sched.add_ramp(Ramp::smoothstep(1.5, 1.2, 0.0, 1.0));
  const int rw = sched.add_ramp(Ramp::constant(0.5));
  const int ru = sched.add_ramp(Ramp::constant(1.0));

  for (int x = 0; x + 1 < 4; ++x) {
    SiteSet sites = {x, x + 1};
    sched.add_h_term(sites,
                     build_operator(fs, "hc(adag(" + std::to_string(x) + ")*a(" +
                                            std::to_string(x + 1) + "))",
                                    &sites),
                     x % 2 == 0 ? rs : rw);
  }
  SiteSet mid = {1, 2};
  sched.add_h1_term(mid, build_operator(fs, "hc(adag(1)*a(2))", &mid), ru);
  sched.set_potential({0.0, 0.1, 0.2, 0.3}, ru);
  sched.validate();

  CHECK_FALSE(sched.time_independent());
  CHECK(sched.path_gap(17) > 0.0);

  const double t = 0.37, eps = 0.25;
  const Mat g = sched.generator(t, eps);
  const Mat ref = sched.hamiltonian(t).global(fs).matrix() +
                  eps * (sched.h1(t).global(fs).matrix() +
                         sched.potential(t).as_interaction(fs).global(fs).matrix());
  CHECK((g - ref).norm() <= 1e-12 * std::max(1.0, ref.norm()));

  // hdot tracks the ramp derivatives
  const Mat hd = sched.hdot(t).global(fs).matrix();
  const double h = 1e-5;
  const Mat fd = (sched.hamiltonian(t + h).global(fs).matrix() -
                  sched.hamiltonian(t - h).global(fs).matrix()) /
                 (2 * h);
  CHECK((hd - fd).norm() <= 1e-8 * std::max(1.0, hd.norm()));

  // second derivative consistency via the derivative accessor
  const Mat h2 = sched.h_derivative(t, 2).global(fs).matrix();
  const Mat fd2 = (sched.hdot(t + h).global(fs).matrix() -
                   sched.hdot(t - h).global(fs).matrix()) /
                  (2 * h);
  CHECK((h2 - fd2).norm() <= 1e-6 * std::max(1.0, h2.norm()));
}

TEST_CASE("schedule validation rules") {
  const FockSpace fs(LatticeGeometry::chain(6, 1));

  auto base_bonds = [&](Schedule& sched, int ramp) {
    for (int x = 0; x + 1 < 6; ++x) {
      SiteSet sites = {x, x + 1};
      sched.add_h_term(sites,
                       build_operator(fs, "hc(adag(" + std::to_string(x) + ")*a(" +
                                              std::to_string(x + 1) + "))",
                                      &sites),
                       ramp);
    }
  };

  // perturbation outside the declared driving region is rejected
  {
    Schedule sched(fs, 0.0, 1.0);
    const int rc = sched.add_ramp(Ramp::constant(1.0));
    base_bonds(sched, rc);
    SiteSet far = {4, 5};
    sched.add_h1_term(far, build_operator(fs, "hc(adag(4)*a(5))", &far), rc);
    sched.set_region({0, 1, 2});
    CHECK_THROWS_AS(sched.validate(), ValidationError);
  }

  // time-dependent unperturbed terms outside the region are rejected
  {
    Schedule sched(fs, 0.0, 1.0);
    const int rc = sched.add_ramp(Ramp::constant(1.0));
    const int rv = sched.add_ramp(Ramp::smoothstep(1.0, 0.5, 0.0, 1.0));
    base_bonds(sched, rc);
    SiteSet far = {4, 5};
    sched.add_h_term(far, build_operator(fs, "hc(adag(4)*a(5))", &far), rv);
    sched.set_region({0, 1, 2});
    CHECK_THROWS_AS(sched.validate(), ValidationError);
  }

  // the potential must be constant on each component outside the region:
  // sites 0 and 1 form one outside component and carry different values
  {
    Schedule sched(fs, 0.0, 1.0);
    const int rc = sched.add_ramp(Ramp::constant(1.0));
    base_bonds(sched, rc);
    sched.set_region({2, 3});
    sched.set_potential({0.0, 0.1, 0.3, 0.6, 0.9, 0.9}, rc);
    CHECK_THROWS_AS(sched.validate(), ValidationError);
  }

  // distinct outside components may sit at different constants (a drop
  // across the driven region), so this configuration is accepted
  {
    Schedule sched(fs, 0.0, 1.0);
    const int rc = sched.add_ramp(Ramp::constant(1.0));
    base_bonds(sched, rc);
    sched.set_region({2, 3});
    sched.set_potential({0.0, 0.0, 0.3, 0.6, 0.9, 0.9}, rc);
    sched.validate();
  }

  // a compliant configuration passes: the potential varies only inside the
  // region, each outside component is flat
  {
    Schedule sched(fs, 0.0, 1.0);
    const int rc = sched.add_ramp(Ramp::constant(1.0));
    base_bonds(sched, rc);
    sched.set_region({1, 2, 3, 4});
    sched.set_potential({0.0, 0.0, 0.3, 0.6, 0.9, 0.9}, rc);
    sched.validate();
    CHECK(sched.time_independent());
  }

  // a ramp index out of range is rejected at insertion
  {
    Schedule sched(fs, 0.0, 1.0);
    SiteSet sites = {0, 1};
    CHECK_THROWS_AS(
        sched.add_h_term(sites, build_operator(fs, "hc(adag(0)*a(1))", &sites), 3),
        ValidationError);
  }
}
