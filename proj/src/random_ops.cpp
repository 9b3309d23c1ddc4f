#include "neass/random_ops.hpp"

#include <algorithm>

namespace neass {

namespace {

struct MonomialDraw {
  std::vector<std::pair<int, bool>> factors;
  int creators = 0;
  int annihilators = 0;
};

MonomialDraw draw_monomial(const FockSpace& fs, const SiteSet& support, std::mt19937& rng) {
  MonomialDraw md;
  std::uniform_int_distribution<int> choice(0, 3);
  for (int s : support)
    for (int f = 0; f < fs.geometry().flavors(); ++f) {
      const int mode = fs.geometry().mode(s, f);
      switch (choice(rng)) {
        case 0:
          break;  // skip this mode
        case 1:
          md.factors.push_back({mode, false});
          ++md.annihilators;
          break;
        case 2:
          md.factors.push_back({mode, true});
          ++md.creators;
          break;
        case 3:  // number operator a^* a
          md.factors.push_back({mode, true});
          md.factors.push_back({mode, false});
          ++md.creators;
          ++md.annihilators;
          break;
      }
    }
  return md;
}

FockOperator random_sum(const FockSpace& fs, const SiteSet& support, std::mt19937& rng,
                        bool require_even, bool require_gauge) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  FockOperator out = fs.zero();
  int picked = 0;
  int guard = 0;
  while (picked < 4 && ++guard < 400) {
    MonomialDraw md = draw_monomial(fs, support, rng);
    const int ladder = md.creators + md.annihilators;
    if (require_even && (ladder & 1)) continue;
    if (require_gauge && md.creators != md.annihilators) continue;
    cplx coeff(gauss(rng), gauss(rng));
    if (md.factors.empty())
      out += fs.identity() * coeff;
    else
      out += fs.ladder_monomial(md.factors, support) * coeff;
    ++picked;
  }
  // re-scan flags (sums of even monomials are even, but classification from
  // the matrix keeps the metadata honest after cancellations)
  return FockOperator(out.matrix(), intersect_sites(out.support(), support));
}

}  // namespace

SiteSet random_small_support(const FockSpace& fs, std::mt19937& rng, int max_sites) {
  const int n = fs.geometry().num_sites();
  std::uniform_int_distribution<int> size_d(1, std::min(max_sites, n));
  const int k = size_d(rng);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  SiteSet out(all.begin(), all.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

FockOperator random_local_operator(const FockSpace& fs, const SiteSet& support,
                                   std::mt19937& rng) {
  return random_sum(fs, support, rng, false, false);
}

FockOperator random_even_operator(const FockSpace& fs, const SiteSet& support,
                                  std::mt19937& rng) {
  return random_sum(fs, support, rng, true, false);
}

FockOperator random_gauge_invariant_operator(const FockSpace& fs, const SiteSet& support,
                                             std::mt19937& rng, bool self_adjoint) {
  FockOperator a = random_sum(fs, support, rng, false, true);
  if (!self_adjoint) return a;
  return FockOperator((a.matrix() + a.matrix().adjoint()) / 2.0, a.support());
}

Interaction random_interaction(const FockSpace& fs, std::mt19937& rng, int n_terms,
                               int max_sites_per_term) {
  Interaction out;
  for (int t = 0; t < n_terms; ++t) {
    SiteSet m = random_small_support(fs, rng, max_sites_per_term);
    FockOperator op = random_gauge_invariant_operator(fs, m, rng, true);
    if (op.matrix().cwiseAbs().maxCoeff() == 0.0) continue;
    out.add(m, std::move(op));
  }
  return out;
}

}  // namespace neass
