#include "neass/fock.hpp"

#include <bit>
#include <cmath>

namespace neass {

namespace {

int popcount(long s) { return std::popcount(static_cast<unsigned long>(s)); }

Parity combine_parity(Parity a, Parity b, bool product) {
  if (a == Parity::Mixed || b == Parity::Mixed) return Parity::Mixed;
  if (product) return a == b ? Parity::Even : Parity::Odd;
  return a == b ? a : Parity::Mixed;  // sum
}

}  // namespace

Parity classify_parity(const Mat& mat, double rel_tol) {
  const long n = mat.rows();
  double scale = mat.cwiseAbs().maxCoeff();
  if (scale == 0.0) return Parity::Even;
  const double tol = rel_tol * scale;
  bool has_even = false, has_odd = false;
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) {
      if (std::abs(mat(i, j)) <= tol) continue;
      if (((popcount(i) ^ popcount(j)) & 1) == 0)
        has_even = true;
      else
        has_odd = true;
      if (has_even && has_odd) return Parity::Mixed;
    }
  if (has_odd) return Parity::Odd;
  return Parity::Even;
}

bool classify_gauge_invariant(const Mat& mat, double rel_tol) {
  const long n = mat.rows();
  double scale = mat.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  const double tol = rel_tol * scale;
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i)
      if (std::abs(mat(i, j)) > tol && popcount(i) != popcount(j)) return false;
  return true;
}

FockOperator::FockOperator(Mat mat, SiteSet support)
    : mat_(std::move(mat)), support_(std::move(support)) {
  parity_ = classify_parity(mat_);
  gauge_ = classify_gauge_invariant(mat_);
}

FockOperator FockOperator::trusted(Mat mat, SiteSet support, Parity parity,
                                   bool gauge_invariant) {
  FockOperator f;
  f.mat_ = std::move(mat);
  f.support_ = std::move(support);
  f.parity_ = parity;
  f.gauge_ = gauge_invariant;
  return f;
}

FockOperator FockOperator::adjoint() const {
  return trusted(mat_.adjoint(), support_, parity_, gauge_);
}

bool FockOperator::self_adjoint(double tol) const {
  double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

namespace {

// Invariance of both operands certifies the combination, but the converse
// fails: a hopping term is a product of two non-invariant factors.  When the
// certificate is missing, settle the question from the combined matrix.
bool combined_gauge(const Mat& result, bool a, bool b) {
  return (a && b) || classify_gauge_invariant(result);
}

}  // namespace

FockOperator FockOperator::operator+(const FockOperator& o) const {
  Mat m = mat_ + o.mat_;
  const bool g = combined_gauge(m, gauge_, o.gauge_);
  return trusted(std::move(m), union_sites(support_, o.support_),
                 combine_parity(parity_, o.parity_, false), g);
}

FockOperator FockOperator::operator-(const FockOperator& o) const {
  Mat m = mat_ - o.mat_;
  const bool g = combined_gauge(m, gauge_, o.gauge_);
  return trusted(std::move(m), union_sites(support_, o.support_),
                 combine_parity(parity_, o.parity_, false), g);
}

FockOperator FockOperator::operator*(const FockOperator& o) const {
  Mat m = mat_ * o.mat_;
  const bool g = combined_gauge(m, gauge_, o.gauge_);
  return trusted(std::move(m), union_sites(support_, o.support_),
                 combine_parity(parity_, o.parity_, true), g);
}

FockOperator FockOperator::operator*(cplx s) const {
  return trusted(mat_ * s, support_, parity_, gauge_);
}

FockOperator& FockOperator::operator+=(const FockOperator& o) {
  if (mat_.size() == 0) {
    *this = o;
    return *this;
  }
  mat_ += o.mat_;
  support_ = union_sites(support_, o.support_);
  parity_ = combine_parity(parity_, o.parity_, false);
  gauge_ = combined_gauge(mat_, gauge_, o.gauge_);
  return *this;
}

FockOperator commutator(const FockOperator& a, const FockOperator& b) {
  Mat m = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  const bool g = combined_gauge(m, a.gauge_invariant(), b.gauge_invariant());
  return FockOperator::trusted(std::move(m), union_sites(a.support(), b.support()),
                               combine_parity(a.parity(), b.parity(), true), g);
}

FockSpace::FockSpace(LatticeGeometry geom)
    : geom_(std::move(geom)), m_(geom_.num_modes()), dim_(1L << m_) {}

SiteSet FockSpace::all_sites() const {
  SiteSet s(geom_.num_sites());
  for (int i = 0; i < geom_.num_sites(); ++i) s[i] = i;
  return s;
}

FockOperator FockSpace::identity() const {
  return FockOperator::trusted(Mat::Identity(dim_, dim_), {}, Parity::Even, true);
}

FockOperator FockSpace::zero() const {
  return FockOperator::trusted(Mat::Zero(dim_, dim_), {}, Parity::Even, true);
}

FockOperator FockSpace::ladder_monomial(const std::vector<std::pair<int, bool>>& factors,
                                        SiteSet support) const {
  Mat out = Mat::Zero(dim_, dim_);
  for (long s = 0; s < dim_; ++s) {
    long cur = s;
    double sign = 1.0;
    bool dead = false;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      const long bit = 1L << it->first;
      const bool occupied = cur & bit;
      if (it->second == occupied) {  // create on occupied / annihilate on empty
        dead = true;
        break;
      }
      if (popcount(cur & (bit - 1)) & 1) sign = -sign;
      cur ^= bit;
    }
    if (!dead) out(cur, s) += sign;
  }
  return FockOperator(std::move(out), canonical_sites(std::move(support), geom_.num_sites()));
}

FockOperator FockSpace::annihilator(int site, int flavor) const {
  return ladder_monomial({{geom_.mode(site, flavor), false}}, {site});
}

FockOperator FockSpace::creator(int site, int flavor) const {
  return ladder_monomial({{geom_.mode(site, flavor), true}}, {site});
}

FockOperator FockSpace::number_mode(int site, int flavor) const {
  const long bit = 1L << geom_.mode(site, flavor);
  Mat out = Mat::Zero(dim_, dim_);
  for (long s = 0; s < dim_; ++s)
    if (s & bit) out(s, s) = 1.0;
  return FockOperator::trusted(std::move(out), {site}, Parity::Even, true);
}

FockOperator FockSpace::number(int site) const {
  Mat out = Mat::Zero(dim_, dim_);
  for (int f = 0; f < geom_.flavors(); ++f) {
    const long bit = 1L << geom_.mode(site, f);
    for (long s = 0; s < dim_; ++s)
      if (s & bit) out(s, s) += 1.0;
  }
  return FockOperator::trusted(std::move(out), {site}, Parity::Even, true);
}

FockOperator FockSpace::total_number() const {
  Mat out = Mat::Zero(dim_, dim_);
  for (long s = 0; s < dim_; ++s) out(s, s) = popcount(s);
  return FockOperator::trusted(std::move(out), all_sites(), Parity::Even, true);
}

Mat FockSpace::parity_unitary() const {
  Mat out = Mat::Zero(dim_, dim_);
  for (long s = 0; s < dim_; ++s) out(s, s) = (popcount(s) & 1) ? -1.0 : 1.0;
  return out;
}

FockOperator FockSpace::gauge_transform(const FockOperator& a, double phi) const {
  Mat out(dim_, dim_);
  for (long j = 0; j < dim_; ++j)
    for (long i = 0; i < dim_; ++i)
      out(i, j) = a.matrix()(i, j) * std::polar(1.0, phi * (popcount(i) - popcount(j)));
  return FockOperator::trusted(std::move(out), a.support(), a.parity(), a.gauge_invariant());
}

FockOperator FockSpace::parity_transform(const FockOperator& a) const {
  Mat out(dim_, dim_);
  for (long j = 0; j < dim_; ++j)
    for (long i = 0; i < dim_; ++i) {
      const bool flip = (popcount(i) ^ popcount(j)) & 1;
      out(i, j) = flip ? -a.matrix()(i, j) : a.matrix()(i, j);
    }
  return FockOperator::trusted(std::move(out), a.support(), a.parity(), a.gauge_invariant());
}

FockOperator FockSpace::conditional_expectation(const FockOperator& a,
                                                const SiteSet& m_sites) const {
  SiteSet m = canonical_sites(m_sites, geom_.num_sites());
  if (subset_of(a.support(), m)) return a;
  auto pc = PauliCoefficients::forward(a.matrix());
  Mat out = pc.inverse_filtered(geom_.mode_mask(m));
  // E_M composes to E_{M \cap supp}, and flags survive projection.
  return FockOperator::trusted(std::move(out), intersect_sites(a.support(), m), a.parity(),
                               a.gauge_invariant());
}

Mat FockSpace::sector_restrict(const Mat& a, int n_particles) const {
  auto states = sector_states(n_particles);
  const long n = static_cast<long>(states.size());
  Mat out(n, n);
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) out(i, j) = a(states[i], states[j]);
  return out;
}

std::vector<long> FockSpace::sector_states(int n_particles) const {
  std::vector<long> states;
  for (long s = 0; s < dim_; ++s)
    if (popcount(s) == n_particles) states.push_back(s);
  return states;
}

PauliCoefficients PauliCoefficients::forward(const Mat& a) {
  PauliCoefficients pc;
  const long dim = a.rows();
  pc.m_ = std::countr_zero(static_cast<unsigned long>(dim));
  pc.c_ = a;
  Mat& c = pc.c_;
  for (int q = 0; q < pc.m_; ++q) {
    const long sq = 1L << q;
    for (long jb = 0; jb < dim; jb += 2 * sq)
      for (long j = jb; j < jb + sq; ++j)
        for (long ib = 0; ib < dim; ib += 2 * sq)
          for (long i = ib; i < ib + sq; ++i) {
            const cplx a00 = c(i, j), a01 = c(i, j + sq);
            const cplx a10 = c(i + sq, j), a11 = c(i + sq, j + sq);
            c(i, j) = 0.5 * (a00 + a11);                  // I
            c(i, j + sq) = 0.5 * (a01 + a10);             // X
            c(i + sq, j) = cplx(0, 0.5) * (a01 - a10);    // Y
            c(i + sq, j + sq) = 0.5 * (a00 - a11);        // Z
          }
  }
  pc.suffix_.assign(dim, 0);
  for (long x = 0; x < dim; ++x) {
    std::uint32_t s = 0;
    int par = 0;
    for (int q = pc.m_ - 1; q >= 0; --q) {
      if (par) s |= 1u << q;
      par ^= (x >> q) & 1;
    }
    pc.suffix_[x] = s;
  }
  return pc;
}

Mat PauliCoefficients::inverse_filtered(std::uint32_t mode_mask) const {
  const long dim = c_.rows();
  const std::uint32_t not_m = ~mode_mask & static_cast<std::uint32_t>(dim - 1);
  Mat c = c_;
  if (not_m != 0) {
    for (long j = 0; j < dim; ++j)
      for (long i = 0; i < dim; ++i) {
        const long x = i ^ j;
        if ((static_cast<std::uint32_t>(x) & not_m) ||
            ((static_cast<std::uint32_t>(i) ^ suffix_[x]) & not_m))
          c(i, j) = 0.0;
      }
  }
  for (int q = 0; q < m_; ++q) {
    const long sq = 1L << q;
    for (long jb = 0; jb < dim; jb += 2 * sq)
      for (long j = jb; j < jb + sq; ++j)
        for (long ib = 0; ib < dim; ib += 2 * sq)
          for (long i = ib; i < ib + sq; ++i) {
            const cplx ci = c(i, j), cx = c(i, j + sq);
            const cplx cy = c(i + sq, j), cz = c(i + sq, j + sq);
            c(i, j) = ci + cz;
            c(i, j + sq) = cx - cplx(0, 1) * cy;
            c(i + sq, j) = cx + cplx(0, 1) * cy;
            c(i + sq, j + sq) = ci - cz;
          }
  }
  return c;
}

Mat PauliCoefficients::inverse() const {
  const long dim = c_.rows();
  return inverse_filtered(static_cast<std::uint32_t>(dim - 1));
}

}  // namespace neass
