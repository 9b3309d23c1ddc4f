#include <doctest.h>

#include <cmath>

#include "neass/builder.hpp"
#include "neass/dynamics.hpp"
#include "neass/norms.hpp"

using namespace neass;

namespace {

// Fully dimerised six-site chain (strong edges, so the spectrum is gapped and
// the half-filled ground state is unique) plus a perturbing bond and a tilt.
Schedule constant_driven(const FockSpace& fs) {
  Schedule sched(fs, 0.0, 1.0);
  const int rs = sched.add_ramp(Ramp::constant(1.4));
  const int rw = sched.add_ramp(Ramp::constant(0.6));
  const int ru = sched.add_ramp(Ramp::constant(1.0));
  const int n = fs.geometry().num_sites();
  for (int x = 0; x + 1 < n; ++x) {
    SiteSet sites = {x, x + 1};
    sched.add_h_term(sites,
                     build_operator(fs, "hc(adag(" + std::to_string(x) + ")*a(" +
                                            std::to_string(x + 1) + "))",
                                    &sites),
                     x % 2 == 0 ? rs : rw);
  }
  SiteSet mid = {2, 3};
  sched.add_h1_term(mid, build_operator(fs, "hc(adag(2)*a(3))", &mid), ru);
  std::vector<double> tilt;
  for (int x = 0; x < n; ++x) tilt.push_back(0.1 * x);
  sched.set_potential(tilt, ru);
  sched.validate();
  return sched;
}

// Four-site chain whose strong bonds ramp down smoothly across the window.
Schedule ramped(const FockSpace& fs) {
  Schedule sched(fs, 0.0, 1.0);
  const int rs = sched.add_ramp(Ramp::smoothstep(1.4, 1.1, 0.0, 1.0));
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

// Worst drift over two window lengths, to dodge accidental zeros of the
// oscillatory part at a single end time.
double stationary_drift(const Schedule& sched, int order, double eps,
                        const FockOperator& a) {
  ExpansionOptions opt;
  opt.order = order;
  const ExpansionEngine eng(sched, opt);
  double worst = 0.0;
  for (double t1 : {0.6, 1.0})
    worst = std::max(worst, neass_drift(eng, eps, 0.0, t1, a).drift);
  return worst;
}

}  // namespace

TEST_CASE("dressed expectation reduces to the ground state") {
  const FockSpace fs(LatticeGeometry::chain(6, 1));
  const Schedule sched = constant_driven(fs);

  ExpansionOptions o0;
  o0.order = 0;
  const ExpansionEngine bare(sched, o0);
  const FockOperator a = fs.number(2);

  const SpectralData sd = diagonalize(sched.hamiltonian(0.3).global(fs));
  const GroundState gs = ground_state(sd);
  const cplx direct = gs.expect(a.matrix());
  const cplx dressed = dressed_expectation(bare, 0.3, 0.5, 0.2, a);
  CHECK(std::abs(direct - dressed) <= 1e-12);

  // With eps = 0 the generator carries only positive powers of eps times
  // K^{j,j}, and on a constant schedule every K^{j,i<j} vanishes, so an
  // order-2 dressing is inert as well.
  ExpansionOptions o2;
  o2.order = 2;
  const ExpansionEngine eng(sched, o2);
  const cplx dressed2 = dressed_expectation(eng, 0.3, 0.0, 0.2, a);
  CHECK(std::abs(direct - dressed2) <= 1e-12);
}

TEST_CASE("sector consistency of the dressed state") {
  const FockSpace fs(LatticeGeometry::chain(6, 1));
  const Schedule sched = constant_driven(fs);
  ExpansionOptions opt;
  opt.order = 2;
  const ExpansionEngine eng(sched, opt);
  CHECK(sector_consistency_defect(eng, 0.4, 0.15, 0.3, fs.number(2)) <= 1e-10);
}

TEST_CASE("eta independence on constant schedules") {
  const FockSpace fs(LatticeGeometry::chain(6, 1));
  const Schedule sched = constant_driven(fs);
  ExpansionOptions opt;
  opt.order = 2;
  const ExpansionEngine eng(sched, opt);
  const std::vector<FockOperator> obs = {fs.number(2), fs.number(0)};
  CHECK(eta_independence_defect(eng, 0.5, 0.2, 0.8, 0.3, obs) <= 1e-12);
}

TEST_CASE("stationary-state drift requires a constant schedule") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  const Schedule bad = ramped(fs);
  ExpansionOptions opt;
  opt.order = 1;
  const ExpansionEngine eng(bad, opt);
  CHECK_THROWS_AS((void)neass_drift(eng, 0.1, 0.0, 0.5, fs.number(1)), UsageError);
}

TEST_CASE("stationary state outlives the bare ground state") {
  const FockSpace fs(LatticeGeometry::chain(6, 1));
  const Schedule sched = constant_driven(fs);
  const FockOperator a = fs.number(2);

  const double drift0 = stationary_drift(sched, 0, 0.1, a);
  const double drift1 = stationary_drift(sched, 1, 0.1, a);
  const double drift2 = stationary_drift(sched, 2, 0.1, a);

  CHECK(drift0 > 1e-8);  // the bare state must move measurably
  CHECK(drift1 < drift0);
  CHECK(drift2 < drift1);

  // order-2 drift scales like eps^3: halving eps gains close to 8x
  const double half = stationary_drift(sched, 2, 0.05, a);
  CHECK(half * 4.0 <= drift2);
}

TEST_CASE("adiabatic drift measurement produces finite, shrinking values") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  const Schedule sched = ramped(fs);
  const FockOperator a = fs.number(1);

  ExpansionOptions opt;
  opt.order = 1;
  const ExpansionEngine eng(sched, opt);
  IntegratorOptions io;
  io.tol = 1e-10;

  const DriftResult fast = dressed_drift(eng, 0.0, 0.4, 0.0, 1.0, a, io);
  const DriftResult slow = dressed_drift(eng, 0.0, 0.2, 0.0, 1.0, a, io);
  CHECK(fast.steps > 0);
  CHECK(std::isfinite(fast.drift));
  CHECK(std::abs(std::abs(fast.instantaneous - fast.transported) - fast.drift) <= 1e-15);
  // order-1 dressing: drift ~ eta^2, so halving eta should give a clear drop
  CHECK(slow.drift <= fast.drift * 0.7 + 1e-10);
}

TEST_CASE("commutator growth probe") {
  const FockSpace fs(LatticeGeometry::chain(6, 1));
  Schedule sched(fs, 0.0, 2.0);
  const int ru = sched.add_ramp(Ramp::constant(1.0));
  for (int x = 0; x + 1 < 6; ++x) {
    SiteSet sites = {x, x + 1};
    sched.add_h_term(sites,
                     build_operator(fs, "hc(adag(" + std::to_string(x) + ")*a(" +
                                            std::to_string(x + 1) + "))",
                                    &sites),
                     ru);
  }
  sched.validate();

  const FockOperator a = fs.number(0);
  const std::vector<FockOperator> bs = {fs.number(2), fs.number(4)};
  const std::vector<int> dist = {2, 4};

  // at t = start the Heisenberg operator has not spread: disjoint supports
  {
    const auto rep = lieb_robinson_probe(sched, 0.0, 1.0, a, bs, dist, {0.0});
    for (const auto& e : rep.table) CHECK(e.value <= 1e-12);
  }

  // at later times values are bounded and decay with distance
  {
    const auto rep =
        lieb_robinson_probe(sched, 0.0, 1.0, a, bs, dist, {0.4, 0.8});
    CHECK(rep.table.size() == 4);
    const double cap = 2.0 * spectral_norm(a) * spectral_norm(bs[0]) + 1e-9;
    for (const auto& e : rep.table) {
      CHECK(e.value >= 0.0);
      CHECK(e.value <= cap);
    }
    CHECK(rep.monotone_at_first_time);
  }

  // overlapping probe supports are rejected
  CHECK_THROWS_AS((void)lieb_robinson_probe(sched, 0.0, 1.0, a, {fs.number(0)},
                                            {0}, {0.4}),
                  UsageError);
}
