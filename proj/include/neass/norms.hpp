#pragma once

#include "neass/fock.hpp"

namespace neass {

/// Largest singular value, by power iteration on A*A with a deterministic
/// start vector.  Accurate to ~1e-12 relative on the scales used here.
double spectral_norm(const Mat& a, double rtol = 1e-13, int max_iter = 1000);
inline double spectral_norm(const FockOperator& a) { return spectral_norm(a.matrix()); }

/// Residual profile r_k = ||A - E_{B_k(x)} A|| for k = 0..diam; entries past
/// the radius where the ball covers the lattice are exactly zero.
std::vector<double> localization_residuals(const FockSpace& fs, const FockOperator& a, int x);

/// ||A||_{nu,x} = ||A|| + sup_k ||A - E_{B_k(x)} A|| (1+k)^nu.
double localization_norm(const FockSpace& fs, const FockOperator& a, int nu, int x);

/// ||A||_nu = min over sites x of ||A||_{nu,x}.
double localization_norm_min(const FockSpace& fs, const FockOperator& a, int nu);

}  // namespace neass
