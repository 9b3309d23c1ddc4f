#pragma once

#include <string>

#include "neass/fock.hpp"

namespace neass {

/// Evaluate an operator expression over the CAR generators.
///
/// Grammar (whitespace ignored):
///   expr      := term (('+'|'-') term)*
///   term      := factor ('*' factor)*
///   factor    := ('-'|'+') factor | primary
///   primary   := NUMBER | 'i' | 'id' | primitive | 'hc(' expr ')' | '(' expr ')'
///   primitive := 'adag(' site [',' flavor] ')' | 'a(' site [',' flavor] ')'
///              | 'n(' site [',' flavor] ')'
///
/// 'i' is the imaginary unit, 'id' the identity, n(x) the on-site density
/// summed over flavors, and hc(X) = X + X^*.  Site arguments index the
/// geometry's site list.  When `allowed_sites` is non-null every referenced
/// site must lie in it.
FockOperator build_operator(const FockSpace& fs, const std::string& expr,
                            const SiteSet* allowed_sites = nullptr);

}  // namespace neass
