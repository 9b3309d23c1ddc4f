#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "neass/errors.hpp"

namespace neass {

/// Sites are referred to by their index into the geometry's (sorted) site list.
using SiteSet = std::vector<int>;  // sorted, unique

/// Finite lattice of sites in Z^d (d = 1 or 2) with n >= 1 fermionic flavors
/// per site.  Distances use the maximum norm.  Modes are ordered
/// lexicographically by (site, flavor); the total mode count is capped by a
/// memory budget since operators are dense 2^m x 2^m matrices.
class LatticeGeometry {
 public:
  LatticeGeometry(int dimension, std::vector<std::array<int, 2>> sites, int flavors,
                  int max_modes = kDefaultMaxModes);

  /// Open chain 0..length-1 embedded on the x axis.
  static LatticeGeometry chain(int length, int flavors = 1, int max_modes = kDefaultMaxModes);

  int dimension() const { return dim_; }
  int num_sites() const { return static_cast<int>(sites_.size()); }
  int flavors() const { return flavors_; }
  int num_modes() const { return num_sites() * flavors_; }

  const std::array<int, 2>& coord(int site) const { return sites_[site]; }
  const std::vector<std::array<int, 2>>& sites() const { return sites_; }

  /// Max-norm distance between two sites.
  int distance(int a, int b) const;
  /// Max-norm distance from a site to a subset (0 if the subset contains it).
  int distance_to(int site, const SiteSet& m) const;
  int diameter() const { return diameter_; }
  int diameter_of(const SiteSet& m) const;

  /// Sites within max-norm distance k of `center` (the box B_k intersected
  /// with the lattice), as a sorted site-index list.
  SiteSet ball(int center, int k) const;

  /// Mode index for (site, flavor), lexicographic in (site, flavor).
  int mode(int site, int flavor = 0) const { return site * flavors_ + flavor; }
  int mode_site(int mode) const { return mode / flavors_; }

  /// Bitmask over modes belonging to the given sites.
  std::uint32_t mode_mask(const SiteSet& m) const;

  static constexpr int kDefaultMaxModes = 14;

 private:
  int dim_;
  int flavors_;
  int diameter_;
  std::vector<std::array<int, 2>> sites_;
};

/// Canonicalize a site list: sorted, duplicates rejected.
SiteSet canonical_sites(SiteSet m, int num_sites);

bool contains_site(const SiteSet& m, int site);
SiteSet union_sites(const SiteSet& a, const SiteSet& b);
SiteSet intersect_sites(const SiteSet& a, const SiteSet& b);
bool subset_of(const SiteSet& a, const SiteSet& b);

}  // namespace neass
