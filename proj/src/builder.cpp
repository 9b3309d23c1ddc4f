#include "neass/builder.hpp"

#include <cctype>
#include <cstdlib>

namespace neass {

namespace {

struct Parser {
  const FockSpace& fs;
  const std::string& src;
  const SiteSet* allowed;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("operator expression: " + msg + " at offset " + std::to_string(pos) +
                          " in '" + src + "'");
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool eat_word(const char* w) {
    skip_ws();
    size_t len = std::string(w).size();
    if (src.compare(pos, len, w) != 0) return false;
    // a word must not continue alphanumerically (distinguishes 'a(' from 'adag(')
    if (pos + len < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos + len])) ||
                                   src[pos + len] == '_'))
      return false;
    pos += len;
    return true;
  }

  int parse_int() {
    skip_ws();
    size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::atoi(src.substr(start, pos - start).c_str());
  }

  std::pair<int, int> parse_site_args() {
    if (!eat('(')) fail("expected '('");
    int site = parse_int();
    int flavor = eat(',') ? parse_int() : -1;
    if (!eat(')')) fail("expected ')'");
    if (site < 0 || site >= fs.geometry().num_sites()) fail("site out of range");
    if (allowed && !contains_site(*allowed, site)) fail("site not in declared site set");
    int nf = fs.geometry().flavors();
    if (flavor >= nf) fail("flavor out of range");
    return {site, flavor};
  }

  FockOperator parse_expr() {
    FockOperator v = parse_term();
    for (;;) {
      if (eat('+'))
        v += parse_term();
      else if (eat('-'))
        v += parse_term() * cplx(-1.0);
      else
        return v;
    }
  }

  FockOperator parse_term() {
    FockOperator v = parse_factor();
    for (;;) {
      skip_ws();
      if (pos < src.size() && src[pos] == '*') {
        ++pos;
        v = v * parse_factor();
      } else {
        return v;
      }
    }
  }

  FockOperator parse_factor() {
    if (eat('-')) return parse_factor() * cplx(-1.0);
    if (eat('+')) return parse_factor();
    return parse_primary();
  }

  FockOperator parse_primary() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end");
    const char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      char* end = nullptr;
      double val = std::strtod(src.c_str() + pos, &end);
      pos = end - src.c_str();
      return fs.identity() * cplx(val);
    }
    if (eat_word("id")) return fs.identity();
    if (eat_word("i")) return fs.identity() * cplx(0.0, 1.0);
    if (eat_word("hc")) {
      if (!eat('(')) fail("expected '(' after hc");
      FockOperator inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return inner + inner.adjoint();
    }
    if (eat_word("adag")) {
      auto [site, flavor] = parse_site_args();
      return fs.creator(site, flavor < 0 ? 0 : flavor);
    }
    if (eat_word("a")) {
      auto [site, flavor] = parse_site_args();
      return fs.annihilator(site, flavor < 0 ? 0 : flavor);
    }
    if (eat_word("n")) {
      auto [site, flavor] = parse_site_args();
      return flavor < 0 ? fs.number(site) : fs.number_mode(site, flavor);
    }
    if (eat('(')) {
      FockOperator inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected token");
  }
};

}  // namespace

FockOperator build_operator(const FockSpace& fs, const std::string& expr,
                            const SiteSet* allowed_sites) {
  Parser p{fs, expr, allowed_sites};
  FockOperator v = p.parse_expr();
  p.skip_ws();
  if (p.pos != expr.size()) p.fail("trailing input");
  return v;
}

}  // namespace neass
