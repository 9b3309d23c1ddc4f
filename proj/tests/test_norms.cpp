#include <doctest.h>

#include <random>

#include "neass/builder.hpp"
#include "neass/norms.hpp"
#include "neass/random_ops.hpp"

using namespace neass;

TEST_CASE("spectral norm oracles") {
  Mat d = Mat::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = -7.0;
  d(2, 2) = 0.5;
  CHECK(spectral_norm(d) == doctest::Approx(7.0).epsilon(1e-12));

  Mat nil = Mat::Zero(2, 2);
  nil(0, 1) = 2.0;
  CHECK(spectral_norm(nil) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK(spectral_norm(Mat::Zero(4, 4)) == 0.0);

  // consistency with a dense SVD on a random matrix
  std::mt19937 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  Mat r = Mat::Zero(12, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) r(i, j) = cplx(g(rng), g(rng));
  Eigen::JacobiSVD<Mat> svd(r);
  CHECK(spectral_norm(r) ==
        doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));
}

TEST_CASE("localization residual profile") {
  const FockSpace fs(LatticeGeometry::chain(5, 1));
  const FockOperator a = build_operator(fs, "adag(0)*a(3) + adag(3)*a(0)");
  const auto res = localization_residuals(fs, a, 0);
  CHECK(res.size() >= 5);
  // radius 3 ball around x=0 covers the support; beyond that the residual is 0
  CHECK(res[3] == 0.0);
  CHECK(res[4] == 0.0);
  // the hopping string is invisible to any smaller ball
  CHECK(res[0] == doctest::Approx(spectral_norm(a)).epsilon(1e-10));
  CHECK(res[2] == doctest::Approx(spectral_norm(a)).epsilon(1e-10));
}

TEST_CASE("anchored localization norm oracles") {
  const FockSpace fs(LatticeGeometry::chain(4, 1));
  // strictly on-site: every residual vanishes, so the norm is the bare norm
  for (int nu = 0; nu <= 4; ++nu) {
    CHECK(localization_norm(fs, fs.number(2), nu, 2) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // nearest-neighbour hopping of norm 1 anchored at an endpoint:
  // r_0 = 1, r_k = 0 for k >= 1, hence the norm is 1 + 1 * (1+0)^nu = 2
  const FockOperator hop = build_operator(fs, "adag(0)*a(1)");
  for (int nu = 0; nu <= 3; ++nu) {
    CHECK(localization_norm(fs, hop, nu, 0) == doctest::Approx(2.0).epsilon(1e-10));
  }
  // anchored two sites away the same residual persists to radius 2:
  // sup_k becomes (1+2)^nu
  for (int nu = 0; nu <= 3; ++nu) {
    CHECK(localization_norm(fs, hop, nu, 3) ==
          doctest::Approx(1.0 + std::pow(3.0, nu)).epsilon(1e-10));
  }
  // the minimizing anchor reproduces the best anchored value
  std::mt19937 rng(9);
  const FockOperator r = random_local_operator(fs, {1, 2}, rng);
  double best = 1e300;
  for (int x = 0; x < 4; ++x) best = std::min(best, localization_norm(fs, r, 2, x));
  CHECK(localization_norm_min(fs, r, 2) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("localization norm dominates the operator norm and scales linearly") {
  const FockSpace fs(LatticeGeometry::chain(5, 1));
  std::mt19937 rng(21);
  for (int rep = 0; rep < 5; ++rep) {
    const FockOperator a = random_local_operator(fs, random_small_support(fs, rng, 3), rng);
    const double n2 = localization_norm(fs, a, 2, 2);
    CHECK(n2 >= spectral_norm(a) * (1 - 1e-12));
    const double scaled = localization_norm(fs, a * cplx(2.5, 0.0), 2, 2);
    CHECK(scaled == doctest::Approx(2.5 * n2).epsilon(1e-10));
  }
}
