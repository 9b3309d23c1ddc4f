#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "neass/propagator.hpp"
#include "neass/schedule.hpp"

namespace neass {

enum class ScenarioKind { Adiabatic, Neass, LiebRobinson };

struct TermSpec {
  SiteSet sites;
  std::string expr;       // builder expression
  std::string ramp_name;
};

struct SweepSpec {
  enum class Mode { Eta, Eps } mode = Mode::Eta;
  double t0 = 0.0, t1 = 1.0;
  double fixed_eps = 0.0;  // used in eta mode
  double fixed_eta = 1.0;  // used in eps mode
  std::vector<double> grid;
  std::vector<int> orders;
  std::string observable;
};

struct ProbeSpec {
  std::string a_expr;
  std::vector<int> b_sites;  // B_d = n(site); distance measured from A's support
  std::vector<double> times;
  double eps = 0.0;
  double eta = 1.0;
};

struct ToleranceSpec {
  double slope_margin = 0.3;
  double floor = 1e-12;
  double eta_independence = 1e-10;
};

/// Declarative experiment description, loaded from a JSON document.  All
/// validation failures throw ValidationError naming the offending key.
class Scenario {
 public:
  static Scenario load(const std::filesystem::path& file);
  static Scenario parse(const std::string& text);

  // identity
  std::string name;
  ScenarioKind kind = ScenarioKind::Adiabatic;
  std::string schema;

  // model
  int dimension = 1;
  int length = 8;
  int flavors = 1;
  double t_begin = 0.0, t_end = 1.0;
  SiteSet region;  // empty = whole lattice
  int order = 2;
  std::map<std::string, Ramp> ramps;
  std::vector<TermSpec> h_terms;
  std::vector<TermSpec> h1_terms;
  std::vector<double> potential_values;  // empty = none
  std::string potential_ramp;
  std::vector<std::pair<std::string, std::string>> observables;  // name -> expr

  // experiment
  SweepSpec sweep;
  std::optional<ProbeSpec> probe;
  IntegratorOptions integrator;
  double fd_step = 0.0;
  unsigned seed = 11;
  ToleranceSpec tolerances;

  /// Canonical (sorted-key) JSON dump; its FNV-1a 64 hash labels outputs.
  std::string canonical() const;
  std::uint64_t hash() const;

  LatticeGeometry make_geometry() const;
  FockSpace make_space() const;
  Schedule make_schedule() const;
  FockOperator make_observable(const FockSpace& fs, const std::string& name) const;
};

}  // namespace neass
