#pragma once

#include <random>

#include "neass/interaction.hpp"

namespace neass {

/// Uniformly chosen nonempty site subset of size <= max_sites.
SiteSet random_small_support(const FockSpace& fs, std::mt19937& rng, int max_sites);

/// Random combination of ladder monomials in the modes of `support`.
/// No symmetry constraints; generically of mixed parity.
FockOperator random_local_operator(const FockSpace& fs, const SiteSet& support,
                                   std::mt19937& rng);

/// Random even (parity-commuting) local operator.
FockOperator random_even_operator(const FockSpace& fs, const SiteSet& support,
                                  std::mt19937& rng);

/// Random gauge-invariant local operator, optionally symmetrized.
FockOperator random_gauge_invariant_operator(const FockSpace& fs, const SiteSet& support,
                                             std::mt19937& rng, bool self_adjoint);

/// Random interaction with gauge-invariant self-adjoint terms.
Interaction random_interaction(const FockSpace& fs, std::mt19937& rng, int n_terms,
                               int max_sites_per_term);

}  // namespace neass
