#include "neass/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "neass/random_ops.hpp"
#include "neass/schedule.hpp"

namespace neass {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;

// Lexicographic comparison of rounded column components.
bool column_less(const Mat& v, long a, long b) {
  const double q = 1e8;
  for (long i = 0; i < v.rows(); ++i) {
    const long re_a = std::llround(v(i, a).real() * q), re_b = std::llround(v(i, b).real() * q);
    if (re_a != re_b) return re_a < re_b;
    const long im_a = std::llround(v(i, a).imag() * q), im_b = std::llround(v(i, b).imag() * q);
    if (im_a != im_b) return im_a < im_b;
  }
  return false;
}

}  // namespace

SpectralData diagonalize(const Mat& h, double deg_tol_rel) {
  const double herm_scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * herm_scale)
    throw ValidationError("diagonalize: matrix not self-adjoint");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw ValidationError("diagonalize: eigensolver failed");

  SpectralData sd;
  sd.energies = es.eigenvalues();
  sd.vectors = es.eigenvectors();
  const long n = sd.dim();

  // canonical phases: largest-magnitude component real positive
  for (long c = 0; c < n; ++c) {
    long imax = 0;
    double amax = -1.0;
    for (long i = 0; i < n; ++i) {
      const double a = std::abs(sd.vectors(i, c));
      if (a > amax + 1e-15) {
        amax = a;
        imax = i;
      }
    }
    const cplx z = sd.vectors(imax, c);
    if (std::abs(z) > 0) sd.vectors.col(c) *= std::conj(z) / std::abs(z);
  }

  const double spread = sd.energies(n - 1) - sd.energies(0);
  sd.deg_tol = deg_tol_rel * std::max(1.0, spread);

  // deterministic order inside degenerate groups
  std::vector<long> order(n);
  for (long i = 0; i < n; ++i) order[i] = i;
  long lo = 0;
  while (lo < n) {
    long hi = lo + 1;
    while (hi < n && sd.energies(hi) - sd.energies(hi - 1) <= sd.deg_tol) ++hi;
    std::sort(order.begin() + lo, order.begin() + hi,
              [&](long a, long b) { return column_less(sd.vectors, a, b); });
    lo = hi;
  }
  Mat sorted(n, n);
  Eigen::VectorXd es_sorted(n);
  for (long i = 0; i < n; ++i) {
    sorted.col(i) = sd.vectors.col(order[i]);
    es_sorted(i) = sd.energies(order[i]);
  }
  sd.vectors = std::move(sorted);
  sd.energies = std::move(es_sorted);

  sd.e0 = sd.energies(0);
  sd.gs_dim = 1;
  while (sd.gs_dim < n && sd.energies(sd.gs_dim) - sd.e0 <= sd.deg_tol) ++sd.gs_dim;
  if (sd.gs_dim == n) throw GapError("spectrum has no level above the ground sector");
  sd.g_raw = sd.energies(sd.gs_dim) - sd.e0;
  sd.g = std::min(sd.g_raw, 1.0);
  return sd;
}

cplx FilterFunction::hat(double k) const {
  if (std::abs(k) >= g) return cplx(0.0, -1.0 / (kSqrt2Pi * k));
  return cplx(0.0, -k / (kSqrt2Pi * g * g));
}

namespace {

enum class KernelKind { Inverse, OffDiagonal };

Mat spectral_map(const SpectralData& sd, const FilterFunction& f, const Mat& b,
                 KernelKind kind) {
  const long n = sd.dim();
  Mat bt = sd.vectors.adjoint() * b * sd.vectors;
  for (long col = 0; col < n; ++col)
    for (long row = 0; row < n; ++row) {
      const double delta = sd.energies(row) - sd.energies(col);  // E - E'
      if (std::abs(delta) <= sd.deg_tol) {
        bt(row, col) = 0.0;
        continue;
      }
      const cplx w = f.hat(-delta);  // W^(E' - E)
      if (kind == KernelKind::Inverse)
        bt(row, col) *= -kSqrt2Pi * w / delta;
      else
        bt(row, col) *= cplx(0, 1) * kSqrt2Pi * w;
    }
  return sd.vectors * bt * sd.vectors.adjoint();
}

}  // namespace

Mat inverse_liouvillian(const SpectralData& sd, const FilterFunction& f, const Mat& b) {
  return spectral_map(sd, f, b, KernelKind::Inverse);
}

FockOperator inverse_liouvillian(const FockSpace& fs, const SpectralData& sd,
                                 const FilterFunction& f, const FockOperator& b) {
  return FockOperator(inverse_liouvillian(sd, f, b.matrix()), fs.all_sites());
}

Mat off_diagonal_part(const SpectralData& sd, const FilterFunction& f, const Mat& b) {
  return spectral_map(sd, f, b, KernelKind::OffDiagonal);
}

FockOperator off_diagonal_part(const FockSpace& fs, const SpectralData& sd,
                               const FilterFunction& f, const FockOperator& b) {
  return FockOperator(off_diagonal_part(sd, f, b.matrix()), fs.all_sites());
}

GroundState ground_state(const SpectralData& sd) {
  GroundState gs;
  gs.vectors = sd.vectors.leftCols(sd.gs_dim);
  gs.energy = sd.e0;
  return gs;
}

cplx GroundState::expect(const Mat& a) const {
  const long d = vectors.cols();
  cplx sum = 0.0;
  for (long c = 0; c < d; ++c) sum += vectors.col(c).dot(a * vectors.col(c));
  return sum / double(d);
}

AnchoredInverse inverse_liouvillian_interaction(const FockSpace& fs, const SpectralData& sd,
                                                const FilterFunction& f, const Interaction& psi,
                                                const ZeroChain& h_chain) {
  return inverse_liouvillian_interaction(fs, sd, f, psi.global(fs), h_chain);
}

AnchoredInverse inverse_liouvillian_interaction(const FockSpace& fs, const SpectralData& sd,
                                                const FilterFunction& f,
                                                const FockOperator& psi_glob,
                                                const ZeroChain& h_chain) {
  const auto& g = fs.geometry();
  AnchoredInverse out;
  out.anchor.assign(g.num_sites(), fs.zero());
  for (int x = 0; x < g.num_sites(); ++x) {
    const FockOperator& hx = h_chain.at(x);
    if (hx.matrix().size() == 0 || hx.matrix().cwiseAbs().maxCoeff() == 0.0) continue;
    // L_Psi H_x; anti-self-adjoint, so the spectral map returns a
    // self-adjoint operator.
    FockOperator bx = commutator(psi_glob, hx);
    Mat ix = inverse_liouvillian(sd, f, bx.matrix());
    FockOperator ix_op(std::move(ix), fs.all_sites());
    out.anchor[x] = ix_op;
    if (ix_op.matrix().cwiseAbs().maxCoeff() == 0.0) continue;

    auto pc = PauliCoefficients::forward(ix_op.matrix());
    Mat prev = Mat::Zero(fs.dim(), fs.dim());
    for (int k = 0; k <= g.diameter(); ++k) {
      SiteSet ball = g.ball(x, k);
      const bool full = static_cast<int>(ball.size()) == g.num_sites();
      Mat ek = full ? ix_op.matrix() : pc.inverse_filtered(g.mode_mask(ball));
      Mat term = ek - prev;
      prev = std::move(ek);
      if (term.cwiseAbs().maxCoeff() > 0.0)
        out.interaction.add(ball,
                            FockOperator::trusted(std::move(term), ball, ix_op.parity(),
                                                  ix_op.gauge_invariant()),
                            false);
      if (full) break;
    }
  }
  return out;
}

double gap_condition_check(const FockSpace& fs, const FockOperator& h, const SpectralData& sd,
                           double g_claim, int samples, unsigned seed) {
  std::mt19937 rng(seed);
  GroundState gs = ground_state(sd);
  double min_slack = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    FockOperator a = random_local_operator(fs, random_small_support(fs, rng, 3), rng);
    const Mat& am = a.matrix();
    const Mat comm = h.matrix() * am - am * h.matrix();
    const double lhs = gs.expect(Mat(am.adjoint() * comm)).real();
    const double var =
        gs.expect(Mat(am.adjoint() * am)).real() - std::norm(gs.expect(am));
    min_slack = std::min(min_slack, lhs - g_claim * var);
  }
  return min_slack;
}

FlowCheck spectral_flow_check(const Schedule& sched, double t, const FockOperator& a, double h) {
  const FockSpace& fs = sched.fock();
  auto omega_at = [&](double s) {
    SpectralData sd = diagonalize(sched.hamiltonian(s).global(fs));
    return std::pair<double, int>(ground_state(sd).expect(a.matrix()).real(), sd.gs_dim);
  };
  auto [om_p, dim_p] = omega_at(t + h);
  auto [om_m, dim_m] = omega_at(t - h);
  SpectralData sd = diagonalize(sched.hamiltonian(t).global(fs));
  if (dim_p != sd.gs_dim || dim_m != sd.gs_dim)
    throw GapError("ground-sector dimension changes across the difference stencil");

  FlowCheck fc;
  fc.fd_derivative = (om_p - om_m) / (2.0 * h);

  FilterFunction f(sd.g);
  const Mat hglob = sched.hamiltonian(t).global(fs).matrix();
  const Mat hdot = sched.hdot(t).global(fs).matrix();
  const Mat i_glob = inverse_liouvillian(sd, f, Mat(hdot * hglob - hglob * hdot));
  GroundState gs = ground_state(sd);
  const Mat comm = i_glob * a.matrix() - a.matrix() * i_glob;
  fc.generator_side = (cplx(0, -1) * gs.expect(comm)).real();
  fc.residual = std::abs(fc.fd_derivative - fc.generator_side);
  return fc;
}

}  // namespace neass
