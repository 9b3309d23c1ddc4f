#include <doctest.h>

#include <random>

#include "neass/builder.hpp"
#include "neass/norms.hpp"
#include "neass/random_ops.hpp"
#include "neass/schedule.hpp"
#include "neass/spectral.hpp"

using namespace neass;

namespace {

Mat commutator_m(const Mat& a, const Mat& b) { return a * b - b * a; }

Schedule dimer_chain(const FockSpace& fs, double strong, double weak) {
  Schedule sched(fs, 0.0, 1.0);
  const int rs = sched.add_ramp(Ramp::constant(strong));
  const int rw = sched.add_ramp(Ramp::constant(weak));
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

}  // namespace

TEST_CASE("two-level frozen kernels") {
  Mat h = Mat::Zero(2, 2);
  h(1, 1) = 1.0;
  const SpectralData sd = diagonalize(h);
  CHECK(sd.gs_dim == 1);
  CHECK(sd.e0 == doctest::Approx(0.0));
  CHECK(sd.g_raw == doctest::Approx(1.0));
  CHECK(sd.g == doctest::Approx(1.0));
  const FilterFunction f(sd.g);

  Mat e01 = Mat::Zero(2, 2);
  e01(0, 1) = 1.0;

  // inverse Liouvillian multiplies the strictly off-diagonal entry by -i
  const Mat inv = inverse_liouvillian(sd, f, e01);
  CHECK((inv - cplx(0, -1) * e01).norm() <= 1e-14);

  // the off-diagonal extraction is the identity on that entry
  const Mat od = off_diagonal_part(sd, f, e01);
  CHECK((od - e01).norm() <= 1e-14);

  // diagonal input is annihilated by both maps
  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = 0.7;
  diag(1, 1) = -0.2;
  CHECK(inverse_liouvillian(sd, f, diag).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(off_diagonal_part(sd, f, diag).cwiseAbs().maxCoeff() <= 1e-15);

  // self-adjoint input: I maps it to an anti-self-adjoint output
  const Mat b = e01 + e01.adjoint();
  const Mat ib = inverse_liouvillian(sd, f, b);
  CHECK((ib + ib.adjoint()).norm() <= 1e-14);
}

TEST_CASE("filter transform shape") {
  const FilterFunction f(0.5);
  // outside the gap window: exactly -i / (sqrt(2 pi) k)
  const double k = 0.8;
  const cplx w = f.hat(k);
  CHECK(w.real() == 0.0);
  CHECK(w.imag() == doctest::Approx(-1.0 / (std::sqrt(2.0 * M_PI) * k)).epsilon(1e-13));
  // odd function
  CHECK(std::abs(f.hat(-k) + w) <= 1e-15);
  // interpolation through zero inside the window
  CHECK(std::abs(f.hat(0.0)) == 0.0);
  // continuous at the window edge
  CHECK(std::abs(f.hat(0.5) - f.hat(0.5 - 1e-12)) <= 1e-9);
}

TEST_CASE("inverse Liouvillian solves the off-diagonal equation") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  const Schedule sched = dimer_chain(fs, 1.4, 0.6);
  const FockOperator h = sched.hamiltonian(0.0).global(fs);
  const SpectralData sd = diagonalize(h);
  CHECK(sd.g_raw > 0.1);
  const FilterFunction f(sd.g);

  std::mt19937 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const FockOperator b = random_local_operator(fs, random_small_support(fs, rng, 3), rng);
    const Mat ib = inverse_liouvillian(sd, f, b.matrix());
    const Mat od = off_diagonal_part(sd, f, b.matrix());
    const Mat lhs = cplx(0, -1) * commutator_m(h.matrix(), ib);
    CHECK((lhs - od).norm() <= 1e-12 * std::max(1.0, b.matrix().norm()));
  }
}

TEST_CASE("ground state and gap condition") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  const Schedule sched = dimer_chain(fs, 1.4, 0.6);
  const FockOperator h = sched.hamiltonian(0.0).global(fs);
  const SpectralData sd = diagonalize(h);
  const GroundState gs = ground_state(sd);

  CHECK(std::abs(gs.expect(fs.identity().matrix()) - 1.0) <= 1e-13);
  CHECK(gs.expect_real(h.matrix()) == doctest::Approx(sd.e0).epsilon(1e-12));

  // stationarity of the ground state under its own Hamiltonian
  std::mt19937 rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const Mat a = random_local_operator(fs, random_small_support(fs, rng, 3), rng).matrix();
    CHECK(std::abs(gs.expect(commutator_m(h.matrix(), a))) <=
          1e-11 * std::max(1.0, a.norm()));
  }

  // slack is non-negative at the true gap, negative for an inflated claim
  CHECK(gap_condition_check(fs, h, sd, sd.g_raw, 100, 17) >= -1e-10);
  CHECK(gap_condition_check(fs, h, sd, 40.0 * sd.g_raw, 100, 17) < -1e-6);
}

TEST_CASE("anchored inverse reconstructs the global map") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  const Schedule sched = dimer_chain(fs, 1.4, 0.6);
  const FockOperator h = sched.hamiltonian(0.0).global(fs);
  const SpectralData sd = diagonalize(h);
  const FilterFunction f(sd.g);
  const ZeroChain h_chain = zero_chain(fs, sched.hamiltonian(0.0));

  std::mt19937 rng(19);
  const Interaction psi = random_interaction(fs, rng, 3, 2);
  const AnchoredInverse ai = inverse_liouvillian_interaction(fs, sd, f, psi, h_chain);

  // the interaction form sums back to the global construction
  const Mat psig = psi.global(fs).matrix();
  const Mat ref = inverse_liouvillian(sd, f, commutator_m(psig, h.matrix()));
  const Mat got = ai.interaction.global(fs).matrix();
  CHECK((got - ref).norm() <= 1e-11 * std::max(1.0, ref.norm()));

  // per-anchor pieces sum to the same thing
  Mat anchor_sum = Mat::Zero(fs.dim(), fs.dim());
  for (const auto& part : ai.anchor) anchor_sum += part.matrix();
  CHECK((anchor_sum - ref).norm() <= 1e-11 * std::max(1.0, ref.norm()));

  // every term is self-adjoint (the coefficient equation preserves this)
  for (const auto& [sites, op] : ai.interaction.terms()) CHECK(op.self_adjoint(1e-10));
}

TEST_CASE("spectral flow derivative identity") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  Schedule sched(fs, 0.0, 1.0);
  const int rs = sched.add_ramp(Ramp::smoothstep(1.4, 1.1, 0.0, 1.0));
  const int rw = sched.add_ramp(Ramp::smoothstep(0.6, 0.9, 0.0, 1.0));
  for (int x = 0; x + 1 < 4; ++x) {
    SiteSet sites = {x, x + 1};
    sched.add_h_term(sites,
                     build_operator(fs, "hc(adag(" + std::to_string(x) + ")*a(" +
                                            std::to_string(x + 1) + "))",
                                    &sites),
                     x % 2 == 0 ? rs : rw);
  }
  sched.validate();

  const FockOperator a = fs.number(1);
  const FlowCheck c1 = spectral_flow_check(sched, 0.4, a, 1e-3);
  const FlowCheck c2 = spectral_flow_check(sched, 0.4, a, 2e-3);
  // central differences: the defect shrinks roughly like h^2
  CHECK(std::abs(c1.residual) <= std::abs(c2.residual) * 0.5 + 1e-10);
  CHECK(std::abs(c1.fd_derivative - c1.generator_side) <= 1e-5);
}
