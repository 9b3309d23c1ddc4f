#include "neass/schedule.hpp"

#include <cmath>
#include <limits>

#include "neass/spectral.hpp"

namespace neass {

TaylorSeries TaylorSeries::variable(int order, double value, double slope) {
  TaylorSeries s(order, value);
  if (order >= 1) s.c_[1] = slope;
  return s;
}

TaylorSeries TaylorSeries::operator+(const TaylorSeries& o) const {
  TaylorSeries r = *this;
  for (int k = 0; k <= order(); ++k) r.c_[k] += o.c_[k];
  return r;
}

TaylorSeries TaylorSeries::operator-(const TaylorSeries& o) const {
  TaylorSeries r = *this;
  for (int k = 0; k <= order(); ++k) r.c_[k] -= o.c_[k];
  return r;
}

TaylorSeries TaylorSeries::operator*(const TaylorSeries& o) const {
  TaylorSeries r(order());
  for (int k = 0; k <= order(); ++k)
    for (int j = 0; j <= k; ++j) r.c_[k] += c_[j] * o.c_[k - j];
  return r;
}

TaylorSeries TaylorSeries::operator*(double s) const {
  TaylorSeries r = *this;
  for (double& x : r.c_) x *= s;
  return r;
}

TaylorSeries TaylorSeries::operator+(double s) const {
  TaylorSeries r = *this;
  r.c_[0] += s;
  return r;
}

TaylorSeries TaylorSeries::recip() const {
  TaylorSeries r(order(), 1.0 / c_[0]);
  for (int k = 1; k <= order(); ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
    r.c_[k] = -acc / c_[0];
  }
  return r;
}

TaylorSeries TaylorSeries::operator/(const TaylorSeries& o) const { return *this * o.recip(); }

TaylorSeries TaylorSeries::exp() const {
  TaylorSeries r(order(), std::exp(c_[0]));
  for (int k = 1; k <= order(); ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * c_[j] * r.c_[k - j];
    r.c_[k] = acc / k;
  }
  return r;
}

TaylorSeries TaylorSeries::sin() const {
  TaylorSeries s(order(), std::sin(c_[0])), c(order(), std::cos(c_[0]));
  for (int k = 1; k <= order(); ++k) {
    double as = 0.0, ac = 0.0;
    for (int j = 1; j <= k; ++j) {
      as += j * c_[j] * c.c_[k - j];
      ac += j * c_[j] * s.c_[k - j];
    }
    s.c_[k] = as / k;
    c.c_[k] = -ac / k;
  }
  return s;
}

TaylorSeries TaylorSeries::cos() const {
  TaylorSeries s(order(), std::sin(c_[0])), c(order(), std::cos(c_[0]));
  for (int k = 1; k <= order(); ++k) {
    double as = 0.0, ac = 0.0;
    for (int j = 1; j <= k; ++j) {
      as += j * c_[j] * c.c_[k - j];
      ac += j * c_[j] * s.c_[k - j];
    }
    s.c_[k] = as / k;
    c.c_[k] = -ac / k;
  }
  return c;
}

double TaylorSeries::derivative(int k) const {
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) fact *= j;
  return c_[k] * fact;
}

Ramp Ramp::constant(double c) {
  Ramp r;
  r.kind_ = Kind::Constant;
  r.from = r.to = c;
  return r;
}

Ramp Ramp::linear(double from, double to, double t0, double t1) {
  if (!(t1 > t0)) throw ValidationError("ramp window needs t1 > t0");
  Ramp r;
  r.kind_ = Kind::Linear;
  r.from = from;
  r.to = to;
  r.t0 = t0;
  r.t1 = t1;
  return r;
}

Ramp Ramp::smoothstep(double from, double to, double t0, double t1) {
  Ramp r = linear(from, to, t0, t1);
  r.kind_ = Kind::Smoothstep;
  return r;
}

Ramp Ramp::sinusoid(double offset, double amp, double omega, double phase) {
  Ramp r;
  r.kind_ = Kind::Sinusoid;
  r.from = offset;
  r.to = amp;
  r.omega = omega;
  r.phase = phase;
  return r;
}

double Ramp::derivative(double t, int order) const {
  switch (kind_) {
    case Kind::Constant:
      return order == 0 ? from : 0.0;
    case Kind::Linear: {
      const double slope = (to - from) / (t1 - t0);
      if (order == 0) return from + slope * (t - t0);
      return order == 1 ? slope : 0.0;
    }
    case Kind::Sinusoid: {
      TaylorSeries arg = TaylorSeries::variable(order, omega * t + phase, omega);
      TaylorSeries v = arg.sin() * to + from;
      return v.derivative(order);
    }
    case Kind::Smoothstep: {
      const double u0 = (t - t0) / (t1 - t0);
      if (u0 <= 1e-9) return order == 0 ? from : 0.0;
      if (u0 >= 1.0 - 1e-9) return order == 0 ? to : 0.0;
      TaylorSeries u = TaylorSeries::variable(order, u0, 1.0 / (t1 - t0));
      TaylorSeries a = (u.recip() * -1.0).exp();              // e^{-1/u}
      TaylorSeries b = ((u * -1.0 + 1.0).recip() * -1.0).exp();  // e^{-1/(1-u)}
      TaylorSeries sigma = a / (a + b);
      TaylorSeries v = sigma * (to - from) + from;
      return v.derivative(order);
    }
  }
  return 0.0;
}

Schedule::Schedule(FockSpace fs, double t_begin, double t_end)
    : fs_(std::move(fs)), t_begin_(t_begin), t_end_(t_end) {
  if (!(t_end_ > t_begin_)) throw ValidationError("schedule needs t_end > t_begin");
}

int Schedule::add_ramp(Ramp r) {
  ramps_.push_back(r);
  return static_cast<int>(ramps_.size()) - 1;
}

void Schedule::add_h_term(SiteSet sites, FockOperator op, int ramp) {
  if (ramp < 0 || ramp >= static_cast<int>(ramps_.size()))
    throw ValidationError("unknown ramp index");
  if (!op.self_adjoint()) throw ValidationError("schedule term not self-adjoint");
  if (!op.gauge_invariant()) throw ValidationError("schedule term not gauge-invariant");
  sites = canonical_sites(std::move(sites), fs_.geometry().num_sites());
  if (!subset_of(op.support(), sites))
    throw ValidationError("schedule term not supported on its site set");
  h_terms_.push_back({std::move(sites), std::move(op), ramp});
  globals_ready_ = false;
}

void Schedule::add_h1_term(SiteSet sites, FockOperator op, int ramp) {
  if (ramp < 0 || ramp >= static_cast<int>(ramps_.size()))
    throw ValidationError("unknown ramp index");
  if (!op.self_adjoint()) throw ValidationError("schedule term not self-adjoint");
  if (!op.gauge_invariant()) throw ValidationError("schedule term not gauge-invariant");
  sites = canonical_sites(std::move(sites), fs_.geometry().num_sites());
  if (!subset_of(op.support(), sites))
    throw ValidationError("schedule term not supported on its site set");
  h1_terms_.push_back({std::move(sites), std::move(op), ramp});
  globals_ready_ = false;
}

void Schedule::set_potential(std::vector<double> values, int ramp) {
  if (ramp < 0 || ramp >= static_cast<int>(ramps_.size()))
    throw ValidationError("unknown ramp index");
  if (static_cast<int>(values.size()) != fs_.geometry().num_sites())
    throw ValidationError("potential needs one value per site");
  pot_values_ = std::move(values);
  pot_ramp_ = ramp;
  globals_ready_ = false;
}

void Schedule::set_region(SiteSet l) {
  region_ = canonical_sites(std::move(l), fs_.geometry().num_sites());
}

Interaction Schedule::assemble(const std::vector<Term>& terms, double t, int order) const {
  Interaction out;
  for (const auto& term : terms) {
    const double c = ramps_[term.ramp].derivative(t, order);
    if (c == 0.0) continue;
    out.add(term.sites, term.op * cplx(c), false);
  }
  return out;
}

Interaction Schedule::hamiltonian(double t) const { return assemble(h_terms_, t, 0); }
Interaction Schedule::hdot(double t) const { return assemble(h_terms_, t, 1); }
Interaction Schedule::h_derivative(double t, int order) const {
  return assemble(h_terms_, t, order);
}
Interaction Schedule::h1(double t) const { return assemble(h1_terms_, t, 0); }

LipschitzPotential Schedule::potential(double t) const {
  LipschitzPotential p;
  if (pot_ramp_ < 0) {
    p.v.assign(fs_.geometry().num_sites(), 0.0);
    return p;
  }
  const double c = ramps_[pot_ramp_].value(t);
  p.v.resize(pot_values_.size());
  for (size_t i = 0; i < pot_values_.size(); ++i) p.v[i] = c * pot_values_[i];
  return p;
}

bool Schedule::time_independent() const {
  for (const auto& term : h_terms_)
    if (!ramps_[term.ramp].is_constant()) return false;
  for (const auto& term : h1_terms_)
    if (!ramps_[term.ramp].is_constant()) return false;
  if (pot_ramp_ >= 0 && !ramps_[pot_ramp_].is_constant()) return false;
  return true;
}

void Schedule::validate() const {
  const auto& g = fs_.geometry();
  SiteSet l = region_.empty() ? fs_.all_sites() : region_;
  for (const auto& term : h_terms_)
    if (!ramps_[term.ramp].is_constant() && !subset_of(term.sites, l))
      throw ValidationError("driven term leaves the declared region");
  for (const auto& term : h1_terms_)
    if (!subset_of(term.sites, l))
      throw ValidationError("perturbation term leaves the declared region");
  if (pot_ramp_ >= 0 && static_cast<int>(l.size()) < g.num_sites()) {
    // potential must be constant on each connected component of the complement
    std::vector<int> comp(g.num_sites(), -1);
    int ncomp = 0;
    for (int s = 0; s < g.num_sites(); ++s) {
      if (contains_site(l, s) || comp[s] >= 0) continue;
      std::vector<int> stack = {s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (int nb = 0; nb < g.num_sites(); ++nb)
          if (!contains_site(l, nb) && comp[nb] < 0 && g.distance(cur, nb) == 1) {
            comp[nb] = ncomp;
            stack.push_back(nb);
          }
      }
      ++ncomp;
    }
    std::vector<double> first(ncomp, 0.0);
    std::vector<bool> seen(ncomp, false);
    for (int s = 0; s < g.num_sites(); ++s) {
      if (comp[s] < 0) continue;
      if (!seen[comp[s]]) {
        seen[comp[s]] = true;
        first[comp[s]] = pot_values_[s];
      } else if (pot_values_[s] != first[comp[s]]) {
        throw ValidationError("potential varies outside the declared region");
      }
    }
  }
}

void Schedule::build_globals() const {
  if (globals_ready_) return;
  h_term_globals_.clear();
  h1_term_globals_.clear();
  for (const auto& term : h_terms_) h_term_globals_.push_back(term.op.matrix());
  for (const auto& term : h1_terms_) h1_term_globals_.push_back(term.op.matrix());
  pot_global_ = Mat::Zero(fs_.dim(), fs_.dim());
  if (pot_ramp_ >= 0) {
    LipschitzPotential p;
    p.v = pot_values_;
    pot_global_ = p.as_interaction(fs_).global(fs_).matrix();
  }
  globals_ready_ = true;
}

Mat Schedule::generator(double t, double eps) const {
  build_globals();
  Mat g = Mat::Zero(fs_.dim(), fs_.dim());
  for (size_t i = 0; i < h_terms_.size(); ++i)
    g += ramps_[h_terms_[i].ramp].value(t) * h_term_globals_[i];
  if (eps != 0.0) {
    for (size_t i = 0; i < h1_terms_.size(); ++i)
      g += eps * ramps_[h1_terms_[i].ramp].value(t) * h1_term_globals_[i];
    if (pot_ramp_ >= 0) g += eps * ramps_[pot_ramp_].value(t) * pot_global_;
  }
  return g;
}

double Schedule::path_gap(int grid_points) const {
  double gmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double t = t_begin_ + time_scale() * i / (grid_points - 1);
    SpectralData sd = diagonalize(hamiltonian(t).global(fs_));
    gmin = std::min(gmin, sd.g);
  }
  if (!(gmin > 0)) throw GapError("gap closes along the schedule");
  return gmin;
}

}  // namespace neass
