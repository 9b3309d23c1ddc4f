#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "neass/lattice.hpp"

namespace neass {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

enum class Parity { Even, Odd, Mixed };

/// Dense operator on the fermionic Fock space together with bookkeeping:
/// the smallest site set it is known to act in, its behaviour under the
/// parity automorphism, and whether it commutes with the total number
/// operator.  Parity and gauge flags are classified from the matrix itself
/// (basis states are occupation bitstrings, so both checks are structural).
class FockOperator {
 public:
  FockOperator() = default;
  /// Classifies parity/gauge flags by scanning the matrix.
  FockOperator(Mat mat, SiteSet support);
  /// Trusts the caller-supplied flags (used where they are known exactly).
  static FockOperator trusted(Mat mat, SiteSet support, Parity parity, bool gauge_invariant);

  const Mat& matrix() const { return mat_; }
  Mat& matrix() { return mat_; }
  const SiteSet& support() const { return support_; }
  Parity parity() const { return parity_; }
  bool gauge_invariant() const { return gauge_; }
  bool even() const { return parity_ == Parity::Even; }
  long dim() const { return mat_.rows(); }

  FockOperator adjoint() const;
  bool self_adjoint(double tol = 1e-12) const;

  FockOperator operator+(const FockOperator& o) const;
  FockOperator operator-(const FockOperator& o) const;
  FockOperator operator*(const FockOperator& o) const;
  FockOperator operator*(cplx s) const;
  FockOperator operator-() const { return *this * cplx(-1.0, 0.0); }
  FockOperator& operator+=(const FockOperator& o);

 private:
  Mat mat_;
  SiteSet support_;
  Parity parity_ = Parity::Even;
  bool gauge_ = true;
};

FockOperator commutator(const FockOperator& a, const FockOperator& b);

/// Classify parity of a matrix in the occupation basis: Even if entries only
/// connect states of equal particle-number parity, Odd if only opposite.
Parity classify_parity(const Mat& mat, double rel_tol = 1e-13);
/// True iff entries only connect states of equal particle number.
bool classify_gauge_invariant(const Mat& mat, double rel_tol = 1e-13);

/// CAR algebra representation on 2^m-dimensional Fock space, Jordan-Wigner
/// ordered by (site, flavor).  Basis state s has mode p occupied iff bit p of
/// s is set.
class FockSpace {
 public:
  explicit FockSpace(LatticeGeometry geom);

  const LatticeGeometry& geometry() const { return geom_; }
  int num_modes() const { return m_; }
  long dim() const { return dim_; }
  SiteSet all_sites() const;

  FockOperator identity() const;
  FockOperator zero() const;
  /// Ordered product of ladder operators (applied right to left);
  /// each entry is (mode, true for creation).
  FockOperator ladder_monomial(const std::vector<std::pair<int, bool>>& factors,
                               SiteSet support) const;
  FockOperator annihilator(int site, int flavor = 0) const;
  FockOperator creator(int site, int flavor = 0) const;
  /// Number operator of one mode.
  FockOperator number_mode(int site, int flavor) const;
  /// On-site density summed over flavors.
  FockOperator number(int site) const;
  FockOperator total_number() const;
  /// Diagonal unitary (-1)^N implementing the parity automorphism.
  Mat parity_unitary() const;

  /// Normalized trace tr(A)/2^m.
  cplx tracial_state(const FockOperator& a) const { return a.matrix().trace() / double(dim_); }

  /// Conjugation by exp(i phi N).
  FockOperator gauge_transform(const FockOperator& a, double phi) const;
  /// Parity automorphism g_pi.
  FockOperator parity_transform(const FockOperator& a) const;

  /// Conditional expectation onto the subalgebra generated by the modes of M,
  /// i.e. the orthogonal projection in the normalized Hilbert-Schmidt inner
  /// product onto the span of ladder monomials in those modes.  Satisfies
  /// tr(A B)/2^m = tr(E_M(A) B)/2^m for every B in the subalgebra.
  FockOperator conditional_expectation(const FockOperator& a, const SiteSet& m_sites) const;

  /// Restrict a matrix to the particle-number sector N (rows/cols with
  /// popcount == N, in ascending basis order).
  Mat sector_restrict(const Mat& a, int n_particles) const;
  std::vector<long> sector_states(int n_particles) const;

 private:
  LatticeGeometry geom_;
  int m_;
  long dim_;
};

/// Coefficients of a matrix over the tensor-product Pauli basis, used to
/// project onto mode subalgebras in O(m 4^m).  The coefficient at flattened
/// index (i, j) belongs to the Pauli string with X-part (i xor j) and Z-part
/// i; a string lies in the subalgebra of a mode set iff outside those modes
/// it carries no X-part and its Z-part equals the running parity of the
/// X-part on higher modes (the Jordan-Wigner string condition).
class PauliCoefficients {
 public:
  static PauliCoefficients forward(const Mat& a);
  /// Inverse transform after zeroing every string outside the mode set.
  Mat inverse_filtered(std::uint32_t mode_mask) const;
  Mat inverse() const;

 private:
  Mat c_;
  int m_ = 0;
  std::vector<std::uint32_t> suffix_;  // suffix_[x] bit q = parity of bits of x above q
};

}  // namespace neass
