#pragma once

#include <vector>

#include "neass/errors.hpp"

namespace neass {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;       // in log-log coordinates
  double ci_low = 0.0, ci_high = 0.0;  // bootstrap 95% interval on the slope
  int used_points = 0;
  int floor_limited = 0;        // points excluded as at/below the floor
};

/// Least-squares slope of log y against log x.  Points with y <= floor are
/// reported as floor-limited and excluded.  Throws ValidationError when
/// fewer than two usable points remain or any x is non-positive.
SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y,
                   double floor = 1e-13, int bootstrap = 400, unsigned seed = 7u);

}  // namespace neass
