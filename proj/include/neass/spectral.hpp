#pragma once

#include "neass/interaction.hpp"

namespace neass {

class Schedule;

/// Eigendecomposition of a self-adjoint operator with deterministic
/// conventions: eigenvalues ascending; within numerically degenerate groups
/// columns ordered lexicographically by rounded components; each column's
/// largest-magnitude component made real positive.
struct SpectralData {
  Eigen::VectorXd energies;
  Mat vectors;     // columns are eigenvectors
  int gs_dim = 1;  // dimension of the ground sector (within deg_tol of E0)
  double e0 = 0.0;
  double g_raw = 0.0;  // E_{gs_dim} - E_0
  double g = 0.0;      // min(g_raw, 1)
  double deg_tol = 0.0;  // absolute degeneracy tolerance used for grouping

  long dim() const { return energies.size(); }
};

/// Throws ValidationError unless H is self-adjoint; GapError if no level lies
/// above the ground sector.  deg_tol_rel is taken relative to the larger of 1
/// and the spectral spread.
SpectralData diagonalize(const Mat& h, double deg_tol_rel = 1e-9);
inline SpectralData diagonalize(const FockOperator& h, double deg_tol_rel = 1e-9) {
  if (!h.self_adjoint()) throw ValidationError("diagonalize: operator not self-adjoint");
  return diagonalize(h.matrix(), deg_tol_rel);
}

/// Odd interpolation of the Fourier transform -i/(sqrt(2 pi) k) through the
/// gap window: linear on (-g, g), exact outside.  Continuous, hat(0) = 0.
struct FilterFunction {
  double g = 1.0;

  explicit FilterFunction(double gap) : g(gap) {
    if (!(gap > 0)) throw GapError("filter function needs a positive gap");
  }
  cplx hat(double k) const;
};

/// Spectral-kernel form of the inverse Liouvillian: in the eigenbasis,
/// entry (E, E') of I(B) is -sqrt(2 pi) W^(E'-E)/(E-E') B_{EE'}, zero on
/// exactly degenerate pairs (|E-E'| <= deg_tol).  Satisfies
/// -i[H, I(B)] = OD(B) exactly.
Mat inverse_liouvillian(const SpectralData& sd, const FilterFunction& f, const Mat& b);
FockOperator inverse_liouvillian(const FockSpace& fs, const SpectralData& sd,
                                 const FilterFunction& f, const FockOperator& b);

/// Gap-filtered off-diagonal part: entry (E, E') of OD(B) is
/// i sqrt(2 pi) W^(E'-E) B_{EE'}, zero on degenerate pairs; reproduces B's
/// entries at |E'-E| >= g and removes the diagonal.
Mat off_diagonal_part(const SpectralData& sd, const FilterFunction& f, const Mat& b);
FockOperator off_diagonal_part(const FockSpace& fs, const SpectralData& sd,
                               const FilterFunction& f, const FockOperator& b);

/// Normalized projection onto the ground sector, omega(A) = tr(rho A).
struct GroundState {
  Mat vectors;  // dim x gs_dim
  double energy = 0.0;

  cplx expect(const Mat& a) const;
  double expect_real(const Mat& a) const { return expect(a).real(); }
};
GroundState ground_state(const SpectralData& sd);

/// Interaction-level inverse Liouvillian: per anchor x, apply the spectral
/// map to L_Psi H_x and distribute the result over boxes around x by
/// telescoping conditional expectations.  The per-anchor operators are kept
/// for reconstruction checks; their sum over boxes is exact at finite volume.
struct AnchoredInverse {
  Interaction interaction;
  std::vector<FockOperator> anchor;  // indexed by site
};
AnchoredInverse inverse_liouvillian_interaction(const FockSpace& fs, const SpectralData& sd,
                                                const FilterFunction& f, const Interaction& psi,
                                                const ZeroChain& h_chain);
/// Same construction when Psi is only available as a global operator.
AnchoredInverse inverse_liouvillian_interaction(const FockSpace& fs, const SpectralData& sd,
                                                const FilterFunction& f,
                                                const FockOperator& psi_global,
                                                const ZeroChain& h_chain);

/// Minimal slack of omega(A* L_H A) >= g (omega(A*A) - |omega(A)|^2) over
/// random local observables; non-negative (up to roundoff) for the ground
/// sector at the true gap.
double gap_condition_check(const FockSpace& fs, const FockOperator& h, const SpectralData& sd,
                           double g_claim, int samples, unsigned seed);

/// Central-difference check of d/dt omega_t(A) = -i omega_t(L_{I_t(Hdot)} A)
/// along a schedule.  Returns the defect and both sides.
struct FlowCheck {
  double residual;
  double fd_derivative;
  double generator_side;
};
FlowCheck spectral_flow_check(const Schedule& sched, double t, const FockOperator& a, double h);

}  // namespace neass
