#pragma once

#include <map>
#include <optional>

#include "neass/fock.hpp"

namespace neass {

/// Map from finite site subsets to self-adjoint, gauge-invariant operators
/// supported there.  Subset keys are canonical (sorted, unique); adding to an
/// existing key accumulates.
class Interaction {
 public:
  void add(SiteSet sites, FockOperator op, bool validate = true);
  const std::map<SiteSet, FockOperator>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  /// Sum of all terms as one operator.
  FockOperator global(const FockSpace& fs) const;

  Interaction& operator+=(const Interaction& o);
  Interaction operator+(const Interaction& o) const;
  Interaction operator-(const Interaction& o) const;
  Interaction operator*(double s) const;

  /// Drop terms whose largest entry is at most `tol`.
  void prune(double tol = 0.0);

  /// Largest term matrix entry, as a cheap magnitude estimate.
  double max_abs() const;

 private:
  std::map<SiteSet, FockOperator> terms_;
};

/// On-site potential v(x) n_x described by its site values.  Kept separate
/// from bulk interactions so the slowly-varying part can be tracked until it
/// enters a commutator.
struct LipschitzPotential {
  std::vector<double> v;  // one value per site

  bool is_zero() const;
  double lipschitz_constant(const LatticeGeometry& g) const;
  Interaction as_interaction(const FockSpace& fs) const;
  LipschitzPotential scaled(double s) const;
};

/// Interaction together with an optional tagged potential part.
struct InteractionSum {
  Interaction phi;
  LipschitzPotential pot;  // empty v means absent

  Interaction merged(const FockSpace& fs) const;
  bool has_potential() const { return !pot.is_zero(); }
};

/// The site of M closest (Euclidean) to M's center of mass; ties broken in
/// 1d toward the site above the center of mass, in 2d by the smaller polar
/// angle of (site - cm) in [0, 2pi).  Exact integer arithmetic throughout.
int center_site(const LatticeGeometry& g, const SiteSet& m);

/// Zero chain of an interaction: part[x] collects all terms whose center is x.
struct ZeroChain {
  std::vector<FockOperator> part;  // indexed by site; zero operator when no terms

  const FockOperator& at(int x) const { return part[x]; }
};
ZeroChain zero_chain(const FockSpace& fs, const Interaction& phi);

/// ||Phi||_nu = sup_x sum_{M containing x} (1 + diam M)^nu ||Phi(M)||.
double interaction_norm(const FockSpace& fs, const Interaction& phi, int nu);

/// L_{Phi+V} A = sum_M [Phi(M) + V(M), A].
FockOperator liouvillian_apply(const FockSpace& fs, const Interaction& phi,
                               const LipschitzPotential* pot, const FockOperator& a);

/// i[Psi + V, Phi] as an interaction, with term (M1, M2) assigned to the key
/// M1 union M2.  Inputs must have self-adjoint terms.
Interaction commutator_interaction(const FockSpace& fs, const Interaction& psi,
                                   const LipschitzPotential* pot, const Interaction& phi);

/// sup_x ||Phi_x||_{nu,x} (1 + dist(x, L))^m over the zero chain; diverges on
/// growing lattices when the chain does not decay away from L at rate m.
double l_localization_profile(const FockSpace& fs, const Interaction& phi, const SiteSet& l,
                              int nu, int m);

}  // namespace neass
