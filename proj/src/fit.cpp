#include "neass/fit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace neass {

namespace {

/// Plain least squares on (lx, ly); requires at least two distinct lx.
bool lsq(const std::vector<double>& lx, const std::vector<double>& ly, double& slope,
         double& icept) {
  const double n = double(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-12 * std::max(1.0, sxx)) return false;
  slope = (n * sxy - sx * sy) / det;
  icept = (sy - slope * sx) / n;
  return true;
}

}  // namespace

SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y, double floor,
                   int bootstrap, unsigned seed) {
  if (x.size() != y.size()) throw ValidationError("fit needs matching x/y lengths");
  SlopeFit out;
  std::vector<double> lx, ly;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0)) throw ValidationError("fit abscissae must be positive");
    if (!(y[i] > floor)) {
      ++out.floor_limited;
      continue;
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  out.used_points = static_cast<int>(lx.size());
  if (out.used_points < 2)
    throw ValidationError("fit needs at least two points above the floor");
  if (!lsq(lx, ly, out.slope, out.intercept))
    throw ValidationError("fit abscissae are degenerate");

  // Percentile bootstrap over point resamples; degenerate resamples skipped.
  std::mt19937 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, lx.size() - 1);
  std::vector<double> slopes;
  slopes.reserve(bootstrap);
  std::vector<double> bx(lx.size()), by(lx.size());
  for (int rep = 0; rep < bootstrap; ++rep) {
    for (size_t i = 0; i < lx.size(); ++i) {
      const size_t j = pick(rng);
      bx[i] = lx[j];
      by[i] = ly[j];
    }
    double s, c;
    if (lsq(bx, by, s, c)) slopes.push_back(s);
  }
  if (slopes.size() >= 8) {
    std::sort(slopes.begin(), slopes.end());
    out.ci_low = slopes[static_cast<size_t>(0.025 * (slopes.size() - 1))];
    out.ci_high = slopes[static_cast<size_t>(0.975 * (slopes.size() - 1))];
  } else {
    out.ci_low = out.ci_high = out.slope;
  }
  return out;
}

}  // namespace neass
