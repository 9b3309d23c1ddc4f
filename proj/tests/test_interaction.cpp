#include <doctest.h>

#include <random>

#include "neass/builder.hpp"
#include "neass/norms.hpp"
#include "neass/random_ops.hpp"

using namespace neass;

TEST_CASE("interaction term algebra and globals") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  Interaction phi;
  phi.add({0, 1}, build_operator(fs, "hc(adag(0)*a(1))"));
  phi.add({2}, build_operator(fs, "n(2)"));
  phi.add({0, 1}, build_operator(fs, "n(0)"));  // merges into the existing key

  CHECK(phi.terms().size() == 2);
  const Mat g = phi.global(fs).matrix();
  const Mat ref = build_operator(fs, "hc(adag(0)*a(1)) + n(0) + n(2)").matrix();
  CHECK((g - ref).norm() <= 1e-13);

  const Interaction sum = phi + phi;
  CHECK((sum.global(fs).matrix() - 2.0 * g).norm() <= 1e-13);
  const Interaction scaled = phi * 0.5;
  CHECK((scaled.global(fs).matrix() - 0.5 * g).norm() <= 1e-13);
}

TEST_CASE("center site selection") {
  const auto g4 = LatticeGeometry::chain(4, 1);
  CHECK(center_site(g4, {0, 1}) == 1);  // tie resolved above the center of mass
  CHECK(center_site(g4, {1}) == 1);
  CHECK(center_site(g4, {0, 1, 2}) == 1);
  CHECK(center_site(g4, {0, 3}) == 3);  // members only; the upper one wins ties
  CHECK_THROWS_AS((void)center_site(g4, SiteSet{}), ValidationError);
}

TEST_CASE("interaction norm oracle") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  const FockOperator hop = build_operator(fs, "hc(adag(0)*a(1))");
  const double nh = spectral_norm(hop);
  Interaction phi;
  phi.add({0, 1}, hop);
  // a single diameter-1 term: sup_x reduces to (1 + 1)^nu * ||op||
  CHECK(interaction_norm(fs, phi, 0) == doctest::Approx(nh).epsilon(1e-10));
  CHECK(interaction_norm(fs, phi, 2) == doctest::Approx(4.0 * nh).epsilon(1e-10));

  // overlapping terms accumulate at the shared site
  Interaction two = phi;
  two.add({1, 2}, build_operator(fs, "hc(adag(1)*a(2))"));
  const double nh2 = spectral_norm(build_operator(fs, "hc(adag(1)*a(2))"));
  CHECK(interaction_norm(fs, two, 1) == doctest::Approx(2.0 * (nh + nh2)).epsilon(1e-10));
}

TEST_CASE("zero chain partitions the interaction") {
  const FockSpace fs(LatticeGeometry::chain(5, 1));
  std::mt19937 rng(31);
  const Interaction phi = random_interaction(fs, rng, 5, 3);
  const ZeroChain zc = zero_chain(fs, phi);
  Mat sum = Mat::Zero(fs.dim(), fs.dim());
  for (int x = 0; x < 5; ++x) sum += zc.at(x).matrix();
  const Mat g = phi.global(fs).matrix();
  CHECK((sum - g).norm() <= 1e-13 * std::max(1.0, g.norm()));

  // anchored-part localization bound relative to the interaction norm
  for (int nu = 0; nu <= 3; ++nu) {
    const double bound = 3.0 * interaction_norm(fs, phi, nu);
    for (int x = 0; x < 5; ++x) {
      if (zc.at(x).matrix().cwiseAbs().maxCoeff() == 0.0) continue;
      CHECK(localization_norm(fs, zc.at(x), nu, x) <= bound * (1 + 1e-9));
    }
  }
}

TEST_CASE("lipschitz potential") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  LipschitzPotential pot;
  pot.v = {0.0, 0.3, 0.6, 0.9};  // linear tilt with slope 0.3
  CHECK_FALSE(pot.is_zero());
  CHECK(pot.lipschitz_constant(fs.geometry()) == doctest::Approx(0.3).epsilon(1e-12));

  Mat diag = Mat::Zero(fs.dim(), fs.dim());
  for (int x = 0; x < 4; ++x) diag += pot.v[x] * fs.number(x).matrix();
  CHECK((pot.as_interaction(fs).global(fs).matrix() - diag).norm() <= 1e-13);

  LipschitzPotential zero;
  zero.v = {0.0, 0.0, 0.0, 0.0};
  CHECK(zero.is_zero());
}

TEST_CASE("liouvillian application agrees with the global commutator") {
  const FockSpace fs(LatticeGeometry::chain(5, 1));
  std::mt19937 rng(47);
  const Interaction phi = random_interaction(fs, rng, 4, 3);
  LipschitzPotential pot;
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int s = 0; s < 5; ++s) pot.v.push_back(uni(rng));
  const FockOperator a = random_local_operator(fs, {1, 2}, rng);

  const Mat direct = liouvillian_apply(fs, phi, &pot, a).matrix();
  const Mat glob =
      (phi.global(fs).matrix() + pot.as_interaction(fs).global(fs).matrix());
  const Mat ref = glob * a.matrix() - a.matrix() * glob;
  CHECK((direct - ref).norm() <= 1e-10 * std::max(1.0, ref.norm()));
}

TEST_CASE("interaction-level commutator") {
  const FockSpace fs(LatticeGeometry::chain(5, 1));
  std::mt19937 rng(59);
  const Interaction psi = random_interaction(fs, rng, 3, 3);
  const Interaction phi = random_interaction(fs, rng, 3, 3);
  LipschitzPotential pot;
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int s = 0; s < 5; ++s) pot.v.push_back(uni(rng));

  const Interaction c = commutator_interaction(fs, psi, &pot, phi);
  const Mat lhs = c.global(fs).matrix();
  const Mat pg = psi.global(fs).matrix() + pot.as_interaction(fs).global(fs).matrix();
  const Mat fg = phi.global(fs).matrix();
  const Mat ref = cplx(0, 1) * (pg * fg - fg * pg);
  CHECK((lhs - ref).norm() <= 1e-10 * std::max(1.0, ref.norm()));

  // every output term is self-adjoint (i[*, *] of self-adjoint inputs)
  for (const auto& [sites, op] : c.terms()) CHECK(op.self_adjoint(1e-11));

  // non-self-adjoint inputs are rejected (built unvalidated on purpose)
  Interaction bad;
  bad.add({0, 1}, build_operator(fs, "adag(0)*a(1)"), false);
  CHECK_THROWS_AS((void)commutator_interaction(fs, bad, nullptr, phi), ValidationError);
  CHECK_THROWS_AS((void)commutator_interaction(fs, phi, nullptr, bad), ValidationError);
}

TEST_CASE("interaction norm bound for the commutator") {
  const FockSpace fs(LatticeGeometry::chain(6, 1));
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const int d = 1;
  for (int rep = 0; rep < 5; ++rep) {
    const Interaction psi = random_interaction(fs, rng, 3, 3);
    const Interaction phi = random_interaction(fs, rng, 3, 3);
    LipschitzPotential pot;
    for (int s = 0; s < 6; ++s) pot.v.push_back(uni(rng));
    for (int nu = 0; nu <= 3; ++nu) {
      const double lhs = interaction_norm(fs, commutator_interaction(fs, psi, &pot, phi), nu);
      const double rhs = std::pow(2.0, d + 2) * interaction_norm(fs, psi, nu + d) *
                             interaction_norm(fs, phi, nu + d) +
                         3.0 * pot.lipschitz_constant(fs.geometry()) *
                             interaction_norm(fs, phi, nu + d + 2);
      CHECK(lhs <= rhs * (1 + 1e-9));
    }
  }
}
