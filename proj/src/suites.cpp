#include "neass/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "neass/builder.hpp"
#include "neass/errors.hpp"
#include "neass/norms.hpp"
#include "neass/random_ops.hpp"

namespace neass {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

FockOperator normalized(FockOperator op) {
  const double n = spectral_norm(op);
  if (n > 1e-300) op = op * cplx(1.0 / n, 0.0);
  return op;
}

Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

// ---------------------------------------------------------------- norms (A7)

SuiteReport suite_norms() {
  SuiteReport rep;
  rep.suite = "norms";
  const auto t0 = Clock::now();
  int violations = 0;
  std::ostringstream worst;

  // Conditional-expectation laws: unital, positive, bimodule, composition,
  // parity/gauge preservation, contraction.
  {
    std::mt19937 rng(101);
    double w_unital = 0, w_module = 0, w_compose = 0, w_positive = 0, w_contract = 0;
    for (int k = 0; k < 100; ++k) {
      const FockSpace fs(LatticeGeometry::chain(4 + k % 3, 1));
      const SiteSet m = random_small_support(fs, rng, 3);
      const FockOperator a = random_local_operator(fs, random_small_support(fs, rng, 3), rng);
      const FockOperator one = build_operator(fs, "id");

      const double u = (fs.conditional_expectation(one, m).matrix() - one.matrix()).norm();
      w_unital = std::max(w_unital, u);
      if (u > 1e-12) ++violations;

      const double na = spectral_norm(a);
      const FockOperator pos = fs.conditional_expectation(
          FockOperator(a.adjoint().matrix() * a.matrix(), a.support()), m);
      Eigen::SelfAdjointEigenSolver<Mat> es(pos.matrix(), Eigen::EigenvaluesOnly);
      const double lam = -es.eigenvalues().minCoeff();
      w_positive = std::max(w_positive, lam);
      if (lam > 1e-10 * std::max(1.0, na * na)) ++violations;

      const FockOperator x = random_local_operator(fs, m, rng);
      const FockOperator y = random_local_operator(fs, m, rng);
      const Mat lhs =
          fs.conditional_expectation(FockOperator(x.matrix() * a.matrix() * y.matrix(),
                                                  fs.all_sites()),
                                     m)
              .matrix();
      const Mat rhs = x.matrix() * fs.conditional_expectation(a, m).matrix() * y.matrix();
      const double md =
          (lhs - rhs).norm() / std::max(1.0, x.matrix().norm() * a.matrix().norm() *
                                                 y.matrix().norm());
      w_module = std::max(w_module, md);
      if (md > 1e-10) ++violations;

      const SiteSet m2 = random_small_support(fs, rng, 3);
      const Mat c1 = fs.conditional_expectation(fs.conditional_expectation(a, m2), m).matrix();
      const Mat c2 = fs.conditional_expectation(a, intersect_sites(m, m2)).matrix();
      const double cd = (c1 - c2).norm() / std::max(1.0, a.matrix().norm());
      w_compose = std::max(w_compose, cd);
      if (cd > 1e-11) ++violations;

      const FockOperator ev = random_even_operator(fs, random_small_support(fs, rng, 2), rng);
      if (!fs.conditional_expectation(ev, m).even()) ++violations;
      const FockOperator gi =
          random_gauge_invariant_operator(fs, random_small_support(fs, rng, 2), rng, false);
      if (!fs.conditional_expectation(gi, m).gauge_invariant()) ++violations;

      const double ne = spectral_norm(fs.conditional_expectation(a, m));
      w_contract = std::max(w_contract, ne - na);
      if (ne > na * (1 + 1e-12) + 1e-13) ++violations;
    }
    worst << "projection laws " << fmt3(std::max({w_unital, w_module, w_compose})) << "; ";
  }

  // Commutator locality bound on random even x arbitrary pairs.
  {
    std::mt19937 rng(202);
    double w = 0;
    for (int k = 0; k < 100; ++k) {
      const int len = (k == 0) ? 10 : (k < 11 ? 8 : 6);
      const FockSpace fs(LatticeGeometry::chain(len, 1));
      const auto& g = fs.geometry();
      std::uniform_int_distribution<int> site(0, len - 1);
      const int y = site(rng), x = site(rng);
      const int nu = k % 5, m = (k / 5) % 5;
      const FockOperator a = random_even_operator(fs, g.ball(y, k % 2), rng);
      const FockOperator b = random_local_operator(fs, g.ball(x, (k / 2) % 2), rng);
      const double lhs = localization_norm(fs, commutator(a, b), nu, x);
      const double rhs = std::pow(4.0, nu + m + 3) * localization_norm(fs, a, nu + m, y) *
                         localization_norm(fs, b, nu + m, x) /
                         std::pow(1.0 + g.distance(x, y), m);
      w = std::max(w, lhs / std::max(rhs, 1e-300));
      if (lhs > rhs * (1 + 1e-9)) ++violations;
    }
    worst << "commutator bound ratio " << fmt3(w) << "; ";
  }

  // Zero-chain anchored norm against three times the interaction norm.
  {
    std::mt19937 rng(303);
    double w = 0;
    for (int k = 0; k < 100; ++k) {
      const FockSpace fs(LatticeGeometry::chain(6, 1));
      const Interaction phi = random_interaction(fs, rng, 4, 3);
      const int nu = k % 5;
      const double bound = 3.0 * interaction_norm(fs, phi, nu);
      const ZeroChain chain = zero_chain(fs, phi);
      for (int x = 0; x < fs.geometry().num_sites(); ++x) {
        if (chain.at(x).matrix().cwiseAbs().maxCoeff() == 0.0) continue;
        const double lhs = localization_norm(fs, chain.at(x), nu, x);
        w = std::max(w, lhs / std::max(bound, 1e-300));
        if (lhs > bound * (1 + 1e-9)) ++violations;
      }
    }
    worst << "zero-chain ratio " << fmt3(w) << "; ";
  }

  // Interaction-commutator norm bound, with a Lipschitz potential present.
  {
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double w = 0;
    for (int k = 0; k < 100; ++k) {
      const FockSpace fs(LatticeGeometry::chain(6, 1));
      const int d = 1;
      const Interaction psi = random_interaction(fs, rng, 3, 3);
      const Interaction phi = random_interaction(fs, rng, 3, 3);
      LipschitzPotential pot;
      for (int s = 0; s < 6; ++s) pot.v.push_back(uni(rng));
      const int nu = k % 4;
      const double cv = pot.lipschitz_constant(fs.geometry());
      const double lhs =
          interaction_norm(fs, commutator_interaction(fs, psi, &pot, phi), nu);
      const double rhs =
          std::pow(2.0, d + 2) * interaction_norm(fs, psi, nu + d) *
              interaction_norm(fs, phi, nu + d) +
          3.0 * cv * interaction_norm(fs, phi, nu + d + 2);
      w = std::max(w, lhs / std::max(rhs, 1e-300));
      if (lhs > rhs * (1 + 1e-9)) ++violations;
    }
    worst << "interaction-commutator ratio " << fmt3(w) << "; ";
  }

  // Dual sum representations of the generator agree.
  {
    std::mt19937 rng(505);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double w = 0;
    for (int k = 0; k < 100; ++k) {
      const FockSpace fs(LatticeGeometry::chain(6, 1));
      const Interaction phi = random_interaction(fs, rng, 4, 3);
      LipschitzPotential pot;
      for (int s = 0; s < 6; ++s) pot.v.push_back(uni(rng));
      const FockOperator a =
          random_local_operator(fs, random_small_support(fs, rng, 3), rng);
      const Mat direct = liouvillian_apply(fs, phi, &pot, a).matrix();
      const ZeroChain chain = zero_chain(fs, phi + pot.as_interaction(fs));
      Mat regrouped = Mat::Zero(direct.rows(), direct.cols());
      for (int x = 0; x < fs.geometry().num_sites(); ++x)
        regrouped += comm(chain.at(x).matrix(), a.matrix());
      const double dd = (direct - regrouped).norm() / std::max(1.0, direct.norm());
      w = std::max(w, dd);
      if (dd > 1e-12) ++violations;
    }
    worst << "dual-sum defect " << fmt3(w);
  }

  CriterionLine line;
  line.name = "A7 norm/algebra property suite";
  const double secs = elapsed(t0);
  line.pass = violations == 0 && secs < 300.0;
  line.detail = std::to_string(violations) + " violations in 5x100 instances (" +
                worst.str() + "), " + fmt3(secs) + " s (budget 300)";
  rep.lines.push_back(line);
  rep.pass = line.pass;
  rep.seconds = secs;
  return rep;
}

// ---------------------------------------------------- spectral (A1 and A2)

SuiteReport suite_spectral() {
  SuiteReport rep;
  rep.suite = "spectral";
  const auto t_total = Clock::now();

  const Scenario sc = Scenario::parse(reference_adiabatic_json());
  const Schedule sched = sc.make_schedule();
  const FockSpace& fs = sched.fock();
  const double t = 0.5;
  const FockOperator h = sched.hamiltonian(t).global(fs);
  const Mat& hm = h.matrix();
  const SpectralData sd = diagonalize(h);
  const FilterFunction f(sd.g);

  {
    const auto t0 = Clock::now();
    std::mt19937 rng(1001);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      const FockOperator b =
          random_local_operator(fs, random_small_support(fs, rng, 4), rng);
      const Mat ib = inverse_liouvillian(sd, f, b.matrix());
      const Mat od = off_diagonal_part(sd, f, b.matrix());
      const Mat lhs = cplx(0, -1) * comm(hm, ib);
      const double nb = std::max(spectral_norm(b), 1e-300);
      worst = std::max(worst, (lhs - od).norm() / nb);
    }
    CriterionLine line;
    line.name = "A1 inverse-Liouvillian spectral identity";
    const double secs = elapsed(t0);
    line.pass = worst <= 1e-10 && secs < 60.0;
    line.detail = "max residual " + fmt3(worst) + " of 1e-10 (100 ops), " + fmt3(secs) +
                  " s (budget 60)";
    rep.lines.push_back(line);
  }

  {
    const auto t0 = Clock::now();
    const GroundState gs = ground_state(sd);

    std::mt19937 rng(2002);
    double worst_inv = 0;
    for (int k = 0; k < 200; ++k) {
      const FockOperator a = normalized(
          random_local_operator(fs, random_small_support(fs, rng, 3), rng));
      worst_inv = std::max(worst_inv, std::abs(gs.expect(comm(hm, a.matrix()))));
    }

    const double slack = gap_condition_check(fs, h, sd, sd.g_raw, 200, 3003);

    std::mt19937 rng2(4004);
    double worst_od = 0;
    for (int k = 0; k < 50; ++k) {
      Mat pg = random_interaction(fs, rng2, 3, 3).global(fs).matrix();
      pg /= std::max(spectral_norm(pg), 1e-300);
      const Mat od = off_diagonal_part(sd, f, comm(pg, hm));
      const Mat am = normalized(random_local_operator(fs, random_small_support(fs, rng2, 3),
                                                      rng2))
                         .matrix();
      const cplx lhs = gs.expect(comm(pg, am));
      const cplx rhs = gs.expect(comm(od, am));
      worst_od = std::max(worst_od, std::abs(lhs - rhs));
    }

    CriterionLine line;
    line.name = "A2 ground-state machinery";
    const double secs = elapsed(t0);
    line.pass = worst_inv <= 1e-10 && slack >= -1e-10 && worst_od <= 1e-9 && secs < 120.0;
    line.detail = "invariance " + fmt3(worst_inv) + " of 1e-10, gap slack " + fmt3(slack) +
                  " >= -1e-10, off-diagonal equality " + fmt3(worst_od) + " of 1e-9, " +
                  fmt3(secs) + " s (budget 120)";
    rep.lines.push_back(line);
  }

  rep.pass = true;
  for (const auto& l : rep.lines) rep.pass = rep.pass && l.pass;
  rep.seconds = elapsed(t_total);
  return rep;
}

// ------------------------------------------- expansion (A5, A6, and A8)

SuiteReport suite_expansion() {
  SuiteReport rep;
  rep.suite = "expansion";
  const auto t_total = Clock::now();

  const Scenario sc = Scenario::parse(reference_adiabatic_json());
  const Schedule sched = sc.make_schedule();
  const FockSpace& fs = sched.fock();
  ExpansionOptions opt;
  opt.order = 3;
  const ExpansionEngine eng(sched, opt);
  const double t = 0.5;
  const KTable& tab = eng.table(t);
  const GroundState gs = ground_state(tab.spectral);
  const double d = static_cast<double>(tab.spectral.gs_dim);

  // A5: the chosen coefficients cancel the collected interaction inside the
  // ground-state expectation; forcing the coefficient to zero must not.
  {
    std::mt19937 rng(5005);
    double worst = 0;
    double weakest_control = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= 3; ++j)
      for (int i = 0; i <= j; ++i) {
        const Mat c = eng.c_global(t, j, i);
        const Mat& c0 = tab.l(j, i);  // collector with the coefficient zeroed
        const double nc = std::max(spectral_norm(c), 1e-300);
        const double nc0 = std::max(spectral_norm(c0), 1e-300);
        const Mat cv = c * gs.vectors;
        const Mat c0v = c0 * gs.vectors;
        double control = 0;
        for (int k = 0; k < 50; ++k) {
          const Mat am = normalized(random_local_operator(
                             fs, random_small_support(fs, rng, 3), rng))
                             .matrix();
          const Mat av = am * gs.vectors;
          const Mat adv = am.adjoint() * gs.vectors;
          cplx r = 0, r0 = 0;
          for (long col = 0; col < gs.vectors.cols(); ++col) {
            r += cv.col(col).dot(av.col(col)) - adv.col(col).dot(cv.col(col));
            r0 += c0v.col(col).dot(av.col(col)) - adv.col(col).dot(c0v.col(col));
          }
          worst = std::max(worst, std::abs(r) / d / nc);
          control = std::max(control, std::abs(r0) / d / nc0);
        }
        weakest_control = std::min(weakest_control, control);
      }
    CriterionLine line;
    line.name = "A5 order-by-order cancellation";
    line.pass = worst <= 1e-9 && weakest_control > 1e-3;
    line.detail = "max residual " + fmt3(worst) + " of 1e-9 (all orders <= 3, 50 ops each), "
                  "weakest zeroed-coefficient control " +
                  fmt3(weakest_control) + " > 1e-3";
    rep.lines.push_back(line);
  }

  // A6: the generic collector reproduces the explicit low-order formulas.
  {
    const Mat& h = tab.h_global;
    const Mat e11 = cplx(0, 1) * comm(tab.k(1, 1), h) + tab.h1v_global;
    const Mat e10 = cplx(0, 1) * comm(tab.k(1, 0), h) + tab.ihdot_global;
    const Mat e22 = cplx(0, 1) * comm(tab.k(2, 2), h) -
                    0.5 * comm(tab.k(1, 1), comm(tab.k(1, 1), h)) +
                    cplx(0, 1) * comm(tab.k(1, 1), tab.h1v_global);
    double dev = 0;
    dev = std::max(dev, spectral_norm(eng.c_global(t, 1, 1) - e11) /
                            std::max(1.0, spectral_norm(e11)));
    dev = std::max(dev, spectral_norm(eng.c_global(t, 1, 0) - e10) /
                            std::max(1.0, spectral_norm(e10)));
    dev = std::max(dev, spectral_norm(eng.c_global(t, 2, 2) - e22) /
                            std::max(1.0, spectral_norm(e22)));
    CriterionLine line;
    line.name = "A6 explicit low-order formulas";
    line.pass = dev <= 1e-12;
    line.detail = "max deviation " + fmt3(dev) + " of 1e-12";
    rep.lines.push_back(line);
  }

  // A8: exact specializations on constant schedules.
  {
    const FockSpace fs6(LatticeGeometry::chain(6, 1));
    auto bonds = [&](Schedule& s, double strong, double weak) {
      const int rs = s.add_ramp(Ramp::constant(strong));
      const int rw = s.add_ramp(Ramp::constant(weak));
      for (int x = 0; x < 5; ++x) {
        SiteSet sites = {x, x + 1};
        s.add_h_term(sites,
                     build_operator(fs6, "hc(adag(" + std::to_string(x) + ")*a(" +
                                             std::to_string(x + 1) + "))",
                                    &sites),
                     x % 2 == 0 ? rs : rw);
      }
    };

    bool frozen_zero = true;
    {
      Schedule frozen(fs6, 0.0, 1.0);
      bonds(frozen, 1.5, 0.5);
      frozen.validate();
      ExpansionOptions o;
      o.order = 3;
      const ExpansionEngine e(frozen, o);
      const KTable& tb = e.table(0.37);
      for (int j = 1; j <= 3; ++j)
        for (int i = 0; i <= j; ++i)
          frozen_zero = frozen_zero && tb.k(j, i).cwiseAbs().maxCoeff() == 0.0 &&
                        tb.l(j, i).cwiseAbs().maxCoeff() == 0.0;
    }

    bool stationary_zero = true;
    bool diagonal_nonzero = false;
    {
      Schedule pert(fs6, 0.0, 1.0);
      bonds(pert, 1.5, 0.5);
      const int rh = pert.add_ramp(Ramp::constant(0.3));
      const int ru = pert.add_ramp(Ramp::constant(1.0));
      for (int x = 0; x < 5; ++x) {
        SiteSet sites = {x, x + 1};
        pert.add_h1_term(sites,
                         build_operator(fs6, "hc(adag(" + std::to_string(x) + ")*a(" +
                                                 std::to_string(x + 1) + "))",
                                        &sites),
                         rh);
      }
      pert.set_potential({0.0, 0.1, 0.2, 0.3, 0.4, 0.5}, ru);
      pert.validate();
      ExpansionOptions o;
      o.order = 3;
      const ExpansionEngine e(pert, o);
      const KTable& tb = e.table(0.37);
      for (int j = 1; j <= 3; ++j)
        for (int i = 0; i < j; ++i)
          stationary_zero = stationary_zero && tb.k(j, i).cwiseAbs().maxCoeff() == 0.0;
      diagonal_nonzero = tb.k(1, 1).cwiseAbs().maxCoeff() > 0.0;
    }

    CriterionLine line;
    line.name = "A8 exact specializations";
    line.pass = frozen_zero && stationary_zero && diagonal_nonzero;
    line.detail = std::string("frozen unperturbed table identically zero: ") +
                  (frozen_zero ? "yes" : "NO") +
                  "; constant-schedule sub-diagonal entries zero: " +
                  (stationary_zero ? "yes" : "NO") +
                  "; perturbation entries present: " + (diagonal_nonzero ? "yes" : "NO");
    rep.lines.push_back(line);
  }

  rep.pass = true;
  for (const auto& l : rep.lines) rep.pass = rep.pass && l.pass;
  rep.seconds = elapsed(t_total);
  return rep;
}

// ----------------------------------------- scenario-driven suites (A3/A4/A9)

SuiteReport scenario_suite(const std::string& suite, const std::string& json,
                           const std::string& criterion, double budget, int threads) {
  SuiteReport rep;
  rep.suite = suite;
  const auto t0 = Clock::now();
  const Scenario sc = Scenario::parse(json);
  const SweepResult res = run_scenario(sc, threads);
  const double secs = elapsed(t0);

  CriterionLine line;
  line.name = criterion;
  line.pass = res.pass && secs < budget;
  std::ostringstream os;
  for (size_t i = 0; i < res.criteria.size(); ++i)
    os << (i ? "; " : "") << res.criteria[i].name << ": "
       << (res.criteria[i].pass ? "ok, " : "FAIL, ") << res.criteria[i].detail;
  os << "; " << fmt3(secs) << " s (budget " << fmt3(budget) << ")";
  line.detail = os.str();
  rep.lines.push_back(line);
  rep.pass = line.pass;
  rep.seconds = secs;
  return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"norms", "spectral", "expansion", "adiabatic", "neass", "lr"};
}

std::string reference_adiabatic_json() {
  return R"json({
  "schema": "neass-scenario/1",
  "name": "ssh_ramp",
  "kind": "adiabatic",
  "geometry": {"dimension": 1, "length": 8, "flavors": 1},
  "interval": [0.0, 1.0],
  "order": 2,
  "ramps": {
    "strong": {"kind": "smoothstep", "from": 1.6, "to": 1.3, "window": [0.0, 1.0]},
    "weak": {"kind": "smoothstep", "from": 0.4, "to": 0.7, "window": [0.0, 1.0]},
    "gate": {"kind": "smoothstep", "from": 0.0, "to": 0.6, "window": [0.0, 1.0]},
    "unit": {"kind": "constant", "value": 1.0}
  },
  "hamiltonian": [
    {"sites": [3], "op": "n(3)", "ramp": "gate"},
    {"sites": [0, 1], "op": "hc(adag(0)*a(1))", "ramp": "strong"},
    {"sites": [1, 2], "op": "hc(adag(1)*a(2))", "ramp": "weak"},
    {"sites": [2, 3], "op": "hc(adag(2)*a(3))", "ramp": "strong"},
    {"sites": [3, 4], "op": "hc(adag(3)*a(4))", "ramp": "weak"},
    {"sites": [4, 5], "op": "hc(adag(4)*a(5))", "ramp": "strong"},
    {"sites": [5, 6], "op": "hc(adag(5)*a(6))", "ramp": "weak"},
    {"sites": [6, 7], "op": "hc(adag(6)*a(7))", "ramp": "strong"}
  ],
  "perturbation": [
    {"sites": [3, 4], "op": "hc(adag(3)*a(4))", "ramp": "unit"}
  ],
  "potential": {
    "values": [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7],
    "ramp": "unit"
  },
  "observables": [
    {"name": "density_center", "op": "n(3)"},
    {"name": "current_center", "op": "i*(adag(3)*a(4)-adag(4)*a(3))"}
  ],
  "sweep": {
    "mode": "eta",
    "t0": 0.0,
    "t1": 0.5,
    "eps": 0.0,
    "grid": [0.4, 0.2, 0.1, 0.05],
    "orders": [0, 1, 2],
    "observable": "current_center"
  },
  "seed": 11
}
)json";
}

std::string reference_neass_json() {
  return R"json({
  "schema": "neass-scenario/1",
  "name": "neass_tilt",
  "kind": "neass",
  "geometry": {"dimension": 1, "length": 8, "flavors": 1},
  "interval": [0.0, 1.0],
  "order": 2,
  "ramps": {
    "strong": {"kind": "constant", "value": 1.6},
    "weak": {"kind": "constant", "value": 0.4},
    "half": {"kind": "constant", "value": 0.5},
    "unit": {"kind": "constant", "value": 1.0}
  },
  "hamiltonian": [
    {"sites": [0, 1], "op": "hc(adag(0)*a(1))", "ramp": "strong"},
    {"sites": [1, 2], "op": "hc(adag(1)*a(2))", "ramp": "weak"},
    {"sites": [2, 3], "op": "hc(adag(2)*a(3))", "ramp": "strong"},
    {"sites": [3, 4], "op": "hc(adag(3)*a(4))", "ramp": "weak"},
    {"sites": [4, 5], "op": "hc(adag(4)*a(5))", "ramp": "strong"},
    {"sites": [5, 6], "op": "hc(adag(5)*a(6))", "ramp": "weak"},
    {"sites": [6, 7], "op": "hc(adag(6)*a(7))", "ramp": "strong"}
  ],
  "perturbation": [
    {"sites": [0, 1], "op": "hc(adag(0)*a(1))", "ramp": "half"},
    {"sites": [1, 2], "op": "hc(adag(1)*a(2))", "ramp": "half"},
    {"sites": [2, 3], "op": "hc(adag(2)*a(3))", "ramp": "half"},
    {"sites": [3, 4], "op": "hc(adag(3)*a(4))", "ramp": "half"},
    {"sites": [4, 5], "op": "hc(adag(4)*a(5))", "ramp": "half"},
    {"sites": [5, 6], "op": "hc(adag(5)*a(6))", "ramp": "half"},
    {"sites": [6, 7], "op": "hc(adag(6)*a(7))", "ramp": "half"}
  ],
  "potential": {
    "values": [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7],
    "ramp": "unit"
  },
  "observables": [
    {"name": "density_center", "op": "n(3)"},
    {"name": "current_center", "op": "i*(adag(3)*a(4)-adag(4)*a(3))"}
  ],
  "sweep": {
    "mode": "eps",
    "t0": 0.0,
    "t1": 1.0,
    "eta": 1.0,
    "grid": [0.2, 0.1, 0.05],
    "orders": [1, 2],
    "observable": "current_center"
  },
  "seed": 11
}
)json";
}

std::string reference_lr_json() {
  return R"json({
  "schema": "neass-scenario/1",
  "name": "lr_chain",
  "kind": "lr",
  "geometry": {"dimension": 1, "length": 10, "flavors": 1},
  "interval": [0.0, 2.0],
  "ramps": {
    "unit": {"kind": "constant", "value": 1.0}
  },
  "hamiltonian": [
    {
      "sites": [0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
      "op": "hc(adag(0)*a(1))+hc(adag(1)*a(2))+hc(adag(2)*a(3))+hc(adag(3)*a(4))+hc(adag(4)*a(5))+hc(adag(5)*a(6))+hc(adag(6)*a(7))+hc(adag(7)*a(8))+hc(adag(8)*a(9))",
      "ramp": "unit"
    }
  ],
  "observables": [
    {"name": "density_near_edge", "op": "n(1)"}
  ],
  "probe": {
    "a": "n(1)",
    "b_sites": [3, 5, 7, 9],
    "times": [0.3, 0.6, 1.2],
    "eps": 0.0,
    "eta": 1.0
  },
  "seed": 11
}
)json";
}

SuiteReport run_suite(const std::string& name, int threads) {
  if (name == "norms") return suite_norms();
  if (name == "spectral") return suite_spectral();
  if (name == "expansion") return suite_expansion();
  if (name == "adiabatic")
    return scenario_suite("adiabatic", reference_adiabatic_json(),
                          "A3 adiabatic drift eta-scaling", 1800.0, threads);
  if (name == "neass")
    return scenario_suite("neass", reference_neass_json(),
                          "A4 stationary-state eps-scaling", 1200.0, threads);
  if (name == "lr")
    return scenario_suite("lr", reference_lr_json(), "A9 commutator-decay probe", 600.0,
                          threads);
  std::string valid;
  for (const auto& n : suite_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw UsageError("unknown suite '" + name + "'; valid names: " + valid);
}

}  // namespace neass
