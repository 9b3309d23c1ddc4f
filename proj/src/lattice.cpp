#include "neass/lattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace neass {

namespace {
int max_norm(const std::array<int, 2>& a, const std::array<int, 2>& b) {
  return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
}
}  // namespace

LatticeGeometry::LatticeGeometry(int dimension, std::vector<std::array<int, 2>> sites,
                                 int flavors, int max_modes)
    : dim_(dimension), flavors_(flavors), sites_(std::move(sites)) {
  if (dim_ != 1 && dim_ != 2) throw ValidationError("lattice dimension must be 1 or 2");
  if (flavors_ < 1) throw ValidationError("flavor count must be >= 1");
  if (sites_.empty()) throw ValidationError("lattice needs at least one site");
  for (const auto& s : sites_) {
    if (dim_ == 1 && s[1] != 0) throw ValidationError("1d sites must have zero y coordinate");
  }
  std::sort(sites_.begin(), sites_.end());
  if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end())
    throw ValidationError("duplicate lattice site");
  if (num_modes() > max_modes)
    throw SizeError("mode count " + std::to_string(num_modes()) + " exceeds budget " +
                    std::to_string(max_modes));
  diameter_ = 0;
  for (size_t i = 0; i < sites_.size(); ++i)
    for (size_t j = i + 1; j < sites_.size(); ++j)
      diameter_ = std::max(diameter_, max_norm(sites_[i], sites_[j]));
}

LatticeGeometry LatticeGeometry::chain(int length, int flavors, int max_modes) {
  std::vector<std::array<int, 2>> s;
  s.reserve(length);
  for (int x = 0; x < length; ++x) s.push_back({x, 0});
  return LatticeGeometry(1, std::move(s), flavors, max_modes);
}

int LatticeGeometry::distance(int a, int b) const { return max_norm(sites_[a], sites_[b]); }

int LatticeGeometry::distance_to(int site, const SiteSet& m) const {
  int best = -1;
  for (int s : m) {
    int d = distance(site, s);
    if (best < 0 || d < best) best = d;
  }
  return best < 0 ? diameter_ + 1 : best;
}

int LatticeGeometry::diameter_of(const SiteSet& m) const {
  int d = 0;
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = i + 1; j < m.size(); ++j) d = std::max(d, distance(m[i], m[j]));
  return d;
}

SiteSet LatticeGeometry::ball(int center, int k) const {
  SiteSet out;
  for (int s = 0; s < num_sites(); ++s)
    if (distance(center, s) <= k) out.push_back(s);
  return out;  // site indices ascend, so already sorted
}

std::uint32_t LatticeGeometry::mode_mask(const SiteSet& m) const {
  std::uint32_t mask = 0;
  for (int s : m)
    for (int f = 0; f < flavors_; ++f) mask |= 1u << mode(s, f);
  return mask;
}

SiteSet canonical_sites(SiteSet m, int num_sites) {
  std::sort(m.begin(), m.end());
  if (std::adjacent_find(m.begin(), m.end()) != m.end())
    throw ValidationError("duplicate site in subset");
  if (!m.empty() && (m.front() < 0 || m.back() >= num_sites))
    throw ValidationError("site index out of range");
  return m;
}

bool contains_site(const SiteSet& m, int site) {
  return std::binary_search(m.begin(), m.end(), site);
}

SiteSet union_sites(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

SiteSet intersect_sites(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset_of(const SiteSet& a, const SiteSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace neass
