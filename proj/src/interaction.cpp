#include "neass/interaction.hpp"

#include <cmath>

#include "neass/norms.hpp"

namespace neass {

void Interaction::add(SiteSet sites, FockOperator op, bool validate) {
  if (op.matrix().size() == 0) return;
  sites = canonical_sites(std::move(sites), 1 << 30);
  if (!subset_of(op.support(), sites))
    throw ValidationError("interaction term operator not supported on its site set");
  if (validate) {
    if (!op.self_adjoint()) throw ValidationError("interaction term not self-adjoint");
    if (!op.gauge_invariant()) throw ValidationError("interaction term not gauge-invariant");
  }
  auto it = terms_.find(sites);
  if (it == terms_.end())
    terms_.emplace(std::move(sites), std::move(op));
  else
    it->second += op;
}

FockOperator Interaction::global(const FockSpace& fs) const {
  FockOperator out = fs.zero();
  for (const auto& [sites, op] : terms_) out += op;
  return out;
}

Interaction& Interaction::operator+=(const Interaction& o) {
  for (const auto& [sites, op] : o.terms_) add(sites, op, false);
  return *this;
}

Interaction Interaction::operator+(const Interaction& o) const {
  Interaction out = *this;
  out += o;
  return out;
}

Interaction Interaction::operator-(const Interaction& o) const {
  Interaction out = *this;
  for (const auto& [sites, op] : o.terms_) out.add(sites, op * cplx(-1.0), false);
  return out;
}

Interaction Interaction::operator*(double s) const {
  Interaction out;
  for (const auto& [sites, op] : terms_) out.add(sites, op * cplx(s), false);
  return out;
}

void Interaction::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.matrix().cwiseAbs().maxCoeff() <= tol)
      it = terms_.erase(it);
    else
      ++it;
  }
}

double Interaction::max_abs() const {
  double m = 0.0;
  for (const auto& [sites, op] : terms_) m = std::max(m, op.matrix().cwiseAbs().maxCoeff());
  return m;
}

bool LipschitzPotential::is_zero() const {
  for (double x : v)
    if (x != 0.0) return false;
  return true;
}

double LipschitzPotential::lipschitz_constant(const LatticeGeometry& g) const {
  double c = 0.0;
  for (int a = 0; a < g.num_sites(); ++a)
    for (int b = a + 1; b < g.num_sites(); ++b)
      c = std::max(c, std::abs(v[a] - v[b]) / g.distance(a, b));
  return c;
}

Interaction LipschitzPotential::as_interaction(const FockSpace& fs) const {
  Interaction out;
  for (int x = 0; x < fs.geometry().num_sites(); ++x)
    if (x < static_cast<int>(v.size()) && v[x] != 0.0)
      out.add({x}, fs.number(x) * cplx(v[x]), false);
  return out;
}

LipschitzPotential LipschitzPotential::scaled(double s) const {
  LipschitzPotential out = *this;
  for (double& x : out.v) x *= s;
  return out;
}

Interaction InteractionSum::merged(const FockSpace& fs) const {
  Interaction out = phi;
  if (!pot.is_zero()) out += pot.as_interaction(fs);
  return out;
}

namespace {

// Polar-angle comparison of nonzero integer vectors, angles in [0, 2pi).
bool angle_less(const std::array<long, 2>& u, const std::array<long, 2>& w) {
  auto half = [](const std::array<long, 2>& p) {
    return (p[1] > 0 || (p[1] == 0 && p[0] > 0)) ? 0 : 1;
  };
  const int hu = half(u), hw = half(w);
  if (hu != hw) return hu < hw;
  const long cross = u[0] * w[1] - u[1] * w[0];
  return cross > 0;
}

}  // namespace

int center_site(const LatticeGeometry& g, const SiteSet& m) {
  if (m.empty()) throw ValidationError("center of empty subset");
  const long n = static_cast<long>(m.size());
  std::array<long, 2> sum = {0, 0};
  for (int s : m) {
    sum[0] += g.coord(s)[0];
    sum[1] += g.coord(s)[1];
  }
  int best = -1;
  long best_d2 = 0;
  std::array<long, 2> best_u = {0, 0};
  for (int s : m) {
    // u = n * (coord - cm), exactly
    std::array<long, 2> u = {n * g.coord(s)[0] - sum[0], n * g.coord(s)[1] - sum[1]};
    const long d2 = u[0] * u[0] + u[1] * u[1];
    bool take = false;
    if (best < 0 || d2 < best_d2) {
      take = true;
    } else if (d2 == best_d2) {
      if (g.dimension() == 1)
        take = u[0] > best_u[0];  // the site above the center of mass
      else
        take = angle_less(u, best_u);
    }
    if (take) {
      best = s;
      best_d2 = d2;
      best_u = u;
    }
  }
  return best;
}

ZeroChain zero_chain(const FockSpace& fs, const Interaction& phi) {
  ZeroChain zc;
  zc.part.assign(fs.geometry().num_sites(), fs.zero());
  for (const auto& [sites, op] : phi.terms()) zc.part[center_site(fs.geometry(), sites)] += op;
  return zc;
}

double interaction_norm(const FockSpace& fs, const Interaction& phi, int nu) {
  if (nu < 0) throw ValidationError("interaction norm needs nu >= 0");
  const auto& g = fs.geometry();
  std::vector<double> weighted;
  std::vector<const SiteSet*> keys;
  weighted.reserve(phi.terms().size());
  for (const auto& [sites, op] : phi.terms()) {
    weighted.push_back(std::pow(1.0 + g.diameter_of(sites), nu) * spectral_norm(op));
    keys.push_back(&sites);
  }
  double best = 0.0;
  for (int x = 0; x < g.num_sites(); ++x) {
    double sum = 0.0;
    for (size_t i = 0; i < keys.size(); ++i)
      if (contains_site(*keys[i], x)) sum += weighted[i];
    best = std::max(best, sum);
  }
  return best;
}

FockOperator liouvillian_apply(const FockSpace& fs, const Interaction& phi,
                               const LipschitzPotential* pot, const FockOperator& a) {
  FockOperator out = fs.zero();
  for (const auto& [sites, op] : phi.terms()) out += commutator(op, a);
  if (pot && !pot->is_zero()) {
    const Interaction v = pot->as_interaction(fs);
    for (const auto& [sites, op] : v.terms()) out += commutator(op, a);
  }
  return out;
}

Interaction commutator_interaction(const FockSpace& fs, const Interaction& psi,
                                   const LipschitzPotential* pot, const Interaction& phi) {
  Interaction lhs = psi;
  if (pot && !pot->is_zero()) lhs += pot->as_interaction(fs);
  for (const auto& [sites, op] : lhs.terms())
    if (!op.self_adjoint()) throw ValidationError("commutator input term not self-adjoint");
  for (const auto& [sites, op] : phi.terms())
    if (!op.self_adjoint()) throw ValidationError("commutator input term not self-adjoint");
  Interaction out;
  for (const auto& [m1, a1] : lhs.terms())
    for (const auto& [m2, a2] : phi.terms()) {
      FockOperator c = commutator(a1, a2) * cplx(0.0, 1.0);
      if (c.matrix().cwiseAbs().maxCoeff() == 0.0) continue;
      out.add(union_sites(m1, m2), std::move(c), false);
    }
  return out;
}

double l_localization_profile(const FockSpace& fs, const Interaction& phi, const SiteSet& l,
                              int nu, int m) {
  auto zc = zero_chain(fs, phi);
  const auto& g = fs.geometry();
  double sup = 0.0;
  for (int x = 0; x < g.num_sites(); ++x) {
    if (zc.part[x].matrix().cwiseAbs().maxCoeff() == 0.0) continue;
    const double w = std::pow(1.0 + g.distance_to(x, l), m);
    sup = std::max(sup, localization_norm(fs, zc.part[x], nu, x) * w);
  }
  return sup;
}

}  // namespace neass
