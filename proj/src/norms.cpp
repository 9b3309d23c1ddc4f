#include "neass/norms.hpp"

#include <cmath>
#include <random>

namespace neass {

double spectral_norm(const Mat& a, double rtol, int max_iter) {
  const long n = a.cols();
  if (n == 0 || a.rows() == 0) return 0.0;
  if (a.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  std::mt19937 rng(0x5eedu ^ static_cast<unsigned>(n));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(n);
  for (long i = 0; i < n; ++i) v(i) = cplx(gauss(rng), gauss(rng));
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vec w = a * v;
    const double lam = w.squaredNorm();  // v normalized, so this is v*A*Av
    Vec u = a.adjoint() * w;
    const double un = u.norm();
    if (un == 0.0) return 0.0;
    v = u / un;
    if (it > 0 && std::abs(lam - lambda) <= rtol * lam) {
      lambda = lam;
      break;
    }
    lambda = lam;
  }
  return std::sqrt(lambda);
}

std::vector<double> localization_residuals(const FockSpace& fs, const FockOperator& a, int x) {
  const auto& g = fs.geometry();
  std::vector<double> out(g.diameter() + 1, 0.0);
  auto pc = PauliCoefficients::forward(a.matrix());
  for (int k = 0; k <= g.diameter(); ++k) {
    SiteSet ball = g.ball(x, k);
    if (static_cast<int>(ball.size()) == g.num_sites()) break;  // E is the identity from here
    Mat em = pc.inverse_filtered(g.mode_mask(ball));
    out[k] = spectral_norm(Mat(a.matrix() - em));
  }
  return out;
}

double localization_norm(const FockSpace& fs, const FockOperator& a, int nu, int x) {
  if (nu < 0) throw ValidationError("localization norm needs nu >= 0");
  double sup = 0.0;
  auto res = localization_residuals(fs, a, x);
  for (size_t k = 0; k < res.size(); ++k)
    sup = std::max(sup, res[k] * std::pow(1.0 + double(k), nu));
  return spectral_norm(a) + sup;
}

double localization_norm_min(const FockSpace& fs, const FockOperator& a, int nu) {
  double best = -1.0;
  for (int x = 0; x < fs.geometry().num_sites(); ++x) {
    double v = localization_norm(fs, a, nu, x);
    if (best < 0 || v < best) best = v;
  }
  return best;
}

}  // namespace neass
