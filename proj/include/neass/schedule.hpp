#pragma once

#include <memory>

#include "neass/interaction.hpp"

namespace neass {

/// Truncated power series in one variable with elementary arithmetic, used to
/// evaluate ramp derivatives of any order without finite differences.
class TaylorSeries {
 public:
  TaylorSeries(int order, double c0 = 0.0) : c_(order + 1, 0.0) { c_[0] = c0; }
  static TaylorSeries variable(int order, double value, double slope);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }

  TaylorSeries operator+(const TaylorSeries& o) const;
  TaylorSeries operator-(const TaylorSeries& o) const;
  TaylorSeries operator*(const TaylorSeries& o) const;
  TaylorSeries operator/(const TaylorSeries& o) const;
  TaylorSeries operator*(double s) const;
  TaylorSeries operator+(double s) const;

  TaylorSeries exp() const;
  TaylorSeries sin() const;
  TaylorSeries cos() const;
  TaylorSeries recip() const;

  /// k-th derivative of the represented function: k! c_k.
  double derivative(int k) const;

 private:
  std::vector<double> c_;
};

/// Scalar ramp with derivatives of every order.  The smoothstep is the C^inf
/// bump ratio e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)}) rescaled to [t0, t1]; it
/// is exactly flat outside the window.  The linear ramp extends beyond its
/// window; the sinusoid is offset + amp sin(omega t + phase).
class Ramp {
 public:
  enum class Kind { Constant, Linear, Smoothstep, Sinusoid };

  static Ramp constant(double c);
  static Ramp linear(double from, double to, double t0, double t1);
  static Ramp smoothstep(double from, double to, double t0, double t1);
  static Ramp sinusoid(double offset, double amp, double omega, double phase);

  Kind kind() const { return kind_; }
  bool is_constant() const {
    switch (kind_) {
      case Kind::Constant: return true;
      case Kind::Linear:
      case Kind::Smoothstep: return from == to;
      case Kind::Sinusoid: return to == 0.0 || omega == 0.0;
    }
    return false;
  }
  double value(double t) const { return derivative(t, 0); }
  double derivative(double t, int order) const;

  // parameters, meaning depends on kind
  double from = 0, to = 0, t0 = 0, t1 = 1, omega = 0, phase = 0;

 private:
  Kind kind_ = Kind::Constant;
};

/// Time-dependent model data: unperturbed interaction H_t, perturbation
/// H^1_t, and on-site potential V_t, each a fixed term set with scalar ramps.
/// The declared region L must carry the driving (Hdot) and the perturbation.
class Schedule {
 public:
  Schedule(FockSpace fs, double t_begin, double t_end);

  const FockSpace& fock() const { return fs_; }
  double t_begin() const { return t_begin_; }
  double t_end() const { return t_end_; }
  double time_scale() const { return t_end_ - t_begin_; }

  int add_ramp(Ramp r);
  void add_h_term(SiteSet sites, FockOperator op, int ramp);
  void add_h1_term(SiteSet sites, FockOperator op, int ramp);
  void set_potential(std::vector<double> values, int ramp);
  void set_region(SiteSet l);
  const SiteSet& region() const { return region_; }

  Interaction hamiltonian(double t) const;
  /// d/dt H_t via the ramps' analytic derivatives.
  Interaction hdot(double t) const;
  /// n-th time derivative of H_t.
  Interaction h_derivative(double t, int order) const;
  Interaction h1(double t) const;
  LipschitzPotential potential(double t) const;

  bool time_independent() const;
  /// True when every ramped (non-constant) H term and every H1 term sits in
  /// the declared region and the potential is constant on the components of
  /// the complement.
  void validate() const;

  /// Dense generator H_t + eps (H1_t + V_t) with cached term globals.
  Mat generator(double t, double eps) const;

  /// Smallest effective gap min(g_raw, 1) over a uniform time grid.
  double path_gap(int grid_points = 33) const;

 private:
  struct Term {
    SiteSet sites;
    FockOperator op;
    int ramp;
  };

  Interaction assemble(const std::vector<Term>& terms, double t, int order) const;

  FockSpace fs_;
  double t_begin_, t_end_;
  std::vector<Ramp> ramps_;
  std::vector<Term> h_terms_, h1_terms_;
  std::vector<double> pot_values_;
  int pot_ramp_ = -1;
  SiteSet region_;

  mutable std::vector<Mat> h_term_globals_, h1_term_globals_;
  mutable Mat pot_global_;
  mutable bool globals_ready_ = false;
  void build_globals() const;
};

}  // namespace neass
