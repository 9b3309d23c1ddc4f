#include "neass/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "neass/builder.hpp"
#include "neass/io.hpp"

namespace neass {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Task {
  int order;
  double x;
};

GridRecord compute_point(const Scenario& sc, const Task& task) {
  GridRecord rec;
  rec.order = task.order;
  rec.x = task.x;
  const auto clock0 = std::chrono::steady_clock::now();
  try {
    Schedule sched = sc.make_schedule();
    ExpansionOptions opt;
    opt.order = task.order;
    opt.fd_step = sc.fd_step;
    ExpansionEngine eng(sched, opt);
    const FockOperator a = sc.make_observable(sched.fock(), sc.sweep.observable);
    DriftResult d;
    if (sc.kind == ScenarioKind::Adiabatic)
      d = dressed_drift(eng, sc.sweep.fixed_eps, task.x, sc.sweep.t0, sc.sweep.t1, a,
                        sc.integrator);
    else
      d = neass_drift(eng, task.x, sc.sweep.t0, sc.sweep.t1, a, sc.integrator);
    rec.drift = d.drift;
    rec.instantaneous = d.instantaneous;
    rec.transported = d.transported;
    rec.steps = d.steps;
  } catch (const GapError& e) {
    rec.error = std::string("gap: ") + e.what();
  } catch (const StiffnessError& e) {
    rec.error = std::string("stiffness: ") + e.what() +
                " (suggested eta floor " + fmt6(e.eta_floor) + ")";
  } catch (const std::exception& e) {
    rec.error = std::string("internal: ") + e.what();
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - clock0).count();
  return rec;
}

void append_scaling_criteria(const Scenario& sc, SweepResult& out, const char* parameter) {
  for (int n : sc.sweep.orders) {
    std::vector<double> xs, ys;
    int failed = 0;
    for (const auto& rec : out.records) {
      if (rec.order != n) continue;
      if (!rec.error.empty()) {
        ++failed;
        continue;
      }
      xs.push_back(rec.x);
      ys.push_back(rec.drift);
    }
    CriterionLine line;
    line.name = "order " + std::to_string(n) + " " + parameter + "-scaling";
    const double want = n + 1 - sc.tolerances.slope_margin;
    if (failed > 0) {
      line.pass = false;
      line.detail = std::to_string(failed) + " grid point(s) failed";
      out.criteria.push_back(line);
      continue;
    }
    int below = 0;
    for (double y : ys)
      if (y <= sc.tolerances.floor) ++below;
    if (sc.kind == ScenarioKind::Adiabatic && below > 0) {
      // the adiabatic criterion demands every grid point above the numerical
      // floor: a drift that is zero to machine precision means the observable
      // does not see the drive at all (symmetry-dead), not that the state
      // tracks perfectly
      line.pass = false;
      line.detail = "drift at or below the " + fmt6(sc.tolerances.floor) + " floor on " +
                    std::to_string(below) + "/" + std::to_string(ys.size()) +
                    " points; scaling not measurable";
      out.criteria.push_back(line);
      continue;
    }
    if (static_cast<size_t>(below) + 1 >= ys.size()) {
      line.pass = true;
      line.detail = "floor-limited: drift at or below " + fmt6(sc.tolerances.floor) +
                    " on " + std::to_string(below) + "/" + std::to_string(ys.size()) +
                    " points";
      out.criteria.push_back(line);
      continue;
    }
    try {
      SlopeFit fit = fit_slope(xs, ys, sc.tolerances.floor, 400, sc.seed);
      out.fits[n] = fit;
      line.pass = fit.slope >= want;
      line.detail = "slope " + fmt6(fit.slope) + " (ci " + fmt6(fit.ci_low) + ".." +
                    fmt6(fit.ci_high) + ", " + std::to_string(fit.used_points) +
                    " points), need >= " + fmt6(want);
    } catch (const ValidationError& e) {
      line.pass = false;
      line.detail = std::string("fit failed: ") + e.what();
    }
    out.criteria.push_back(line);
  }
}

}  // namespace

int resolve_threads(int cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("NEASS_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

std::string plan_text(const Scenario& sc, int threads) {
  std::ostringstream os;
  os << "scenario   " << sc.name << " (hash " << hash_hex(sc.hash()) << ")\n";
  os << "kind       "
     << (sc.kind == ScenarioKind::Adiabatic ? "adiabatic"
         : sc.kind == ScenarioKind::Neass   ? "neass"
                                            : "lr")
     << "\n";
  os << "geometry   chain of " << sc.length << " sites, " << sc.flavors
     << " flavor(s), " << (sc.length * sc.flavors) << " modes\n";
  os << "interval   [" << fmt6(sc.t_begin) << ", " << fmt6(sc.t_end) << "]\n";
  if (!sc.region.empty()) {
    os << "region     {";
    for (size_t i = 0; i < sc.region.size(); ++i)
      os << (i ? ", " : "") << sc.region[i];
    os << "}\n";
  }
  os << "terms      " << sc.h_terms.size() << " in H, " << sc.h1_terms.size()
     << " in the perturbation" << (sc.potential_values.empty() ? "" : ", plus a potential")
     << "\n";
  if (sc.probe) {
    os << "probe      A = " << sc.probe->a_expr << ", " << sc.probe->b_sites.size()
       << " B sites, " << sc.probe->times.size() << " times, eps = "
       << fmt6(sc.probe->eps) << ", eta = " << fmt6(sc.probe->eta) << "\n";
  } else {
    os << "sweep      " << (sc.sweep.mode == SweepSpec::Mode::Eta ? "eta" : "eps")
       << " in {";
    for (size_t i = 0; i < sc.sweep.grid.size(); ++i)
      os << (i ? ", " : "") << fmt6(sc.sweep.grid[i]);
    os << "}, orders {";
    for (size_t i = 0; i < sc.sweep.orders.size(); ++i)
      os << (i ? ", " : "") << sc.sweep.orders[i];
    os << "}, window [" << fmt6(sc.sweep.t0) << ", " << fmt6(sc.sweep.t1)
       << "], observable " << sc.sweep.observable << "\n";
    os << "tasks      " << (sc.sweep.grid.size() * sc.sweep.orders.size()) << " grid points\n";
  }
  os << "threads    " << threads << "\n";
  return os.str();
}

SweepResult run_scenario(const Scenario& sc, int threads) {
  SweepResult out;

  if (sc.kind == ScenarioKind::LiebRobinson) {
    Schedule sched = sc.make_schedule();
    const FockSpace& fs = sched.fock();
    const FockOperator a = build_operator(fs, sc.probe->a_expr);
    std::vector<FockOperator> bs;
    std::vector<int> dists;
    for (int site : sc.probe->b_sites) {
      bs.push_back(build_operator(fs, "n(" + std::to_string(site) + ")"));
      dists.push_back(fs.geometry().distance_to(site, a.support()));
    }
    out.lr = lieb_robinson_probe(sched, sc.probe->eps, sc.probe->eta, a, bs, dists,
                                 sc.probe->times, sc.integrator);
    out.has_lr = true;
    CriterionLine line;
    line.name = "commutator decay monotone in distance";
    line.pass = out.lr.monotone_at_first_time;
    line.detail = "light cone: velocity " + fmt6(out.lr.velocity) + ", decay power " +
                  fmt6(out.lr.nu) + ", fit quality " + fmt6(out.lr.quality);
    out.criteria.push_back(line);
    out.pass = line.pass;
    return out;
  }

  std::vector<Task> tasks;
  for (int n : sc.sweep.orders)
    for (double x : sc.sweep.grid) tasks.push_back({n, x});
  out.records.resize(tasks.size());

  const int nw = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  if (nw == 1) {
    for (size_t i = 0; i < tasks.size(); ++i) out.records[i] = compute_point(sc, tasks[i]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
          out.records[i] = compute_point(sc, tasks[i]);
      });
    for (auto& th : pool) th.join();
  }

  for (const auto& rec : out.records)
    if (!rec.error.empty()) out.environment_failure = true;

  append_scaling_criteria(sc, out,
                          sc.kind == ScenarioKind::Adiabatic ? "eta" : "eps");

  if (sc.kind == ScenarioKind::Neass) {
    CriterionLine line;
    line.name = "eta-independence of the stationary state";
    try {
      Schedule sched = sc.make_schedule();
      ExpansionOptions opt;
      opt.order = *std::max_element(sc.sweep.orders.begin(), sc.sweep.orders.end());
      opt.fd_step = sc.fd_step;
      ExpansionEngine eng(sched, opt);
      std::vector<FockOperator> obs;
      for (const auto& [nm, ignored] : sc.observables)
        obs.push_back(sc.make_observable(sched.fock(), nm));
      const double eps = *std::max_element(sc.sweep.grid.begin(), sc.sweep.grid.end());
      out.eta_independence = eta_independence_defect(
          eng, sc.sweep.t0, eps, sc.sweep.fixed_eta, 0.5 * sc.sweep.fixed_eta, obs);
      line.pass = out.eta_independence <= sc.tolerances.eta_independence;
      line.detail = "defect " + fmt6(out.eta_independence) + ", need <= " +
                    fmt6(sc.tolerances.eta_independence);
    } catch (const std::exception& e) {
      line.pass = false;
      line.detail = std::string("failed: ") + e.what();
      out.environment_failure = true;
    }
    out.criteria.push_back(line);
  }

  out.pass = !out.environment_failure;
  for (const auto& c : out.criteria) out.pass = out.pass && c.pass;
  return out;
}

std::filesystem::path write_outputs(const Scenario& sc, const SweepResult& r,
                                    const std::filesystem::path& out_dir,
                                    const std::string& timestamp, int threads) {
  std::filesystem::create_directories(out_dir);
  const std::string hash = hash_hex(sc.hash());

  json doc;
  doc["schema"] = "neass-results/1";
  doc["timestamp"] = timestamp;
  doc["scenario"] = {{"name", sc.name},
                     {"hash", hash},
                     {"kind", sc.kind == ScenarioKind::Adiabatic ? "adiabatic"
                              : sc.kind == ScenarioKind::Neass   ? "neass"
                                                                 : "lr"}};
  doc["environment"] = {{"threads", threads},
                        {"seed", sc.seed},
                        {"compiler", __VERSION__},
                        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                      std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                      std::to_string(EIGEN_MINOR_VERSION)}};
  json records = json::array();
  for (const auto& rec : r.records) {
    json jr = {{"order", rec.order},
               {"x", rec.x},
               {"drift", rec.drift},
               {"instantaneous", {rec.instantaneous.real(), rec.instantaneous.imag()}},
               {"transported", {rec.transported.real(), rec.transported.imag()}},
               {"steps", rec.steps}};
    if (!rec.error.empty()) jr["error"] = rec.error;
    records.push_back(jr);
  }
  doc["records"] = records;
  json fits = json::object();
  for (const auto& [n, fit] : r.fits)
    fits[std::to_string(n)] = {{"slope", fit.slope},
                               {"intercept", fit.intercept},
                               {"ci_low", fit.ci_low},
                               {"ci_high", fit.ci_high},
                               {"used_points", fit.used_points},
                               {"floor_limited", fit.floor_limited}};
  doc["fits"] = fits;
  if (r.eta_independence >= 0) doc["eta_independence"] = r.eta_independence;
  if (r.has_lr) {
    json table = json::array();
    for (const auto& e : r.lr.table)
      table.push_back({{"time", e.time}, {"distance", e.distance}, {"value", e.value}});
    doc["lr"] = {{"table", table},
                 {"velocity", r.lr.velocity},
                 {"nu", r.lr.nu},
                 {"quality", r.lr.quality},
                 {"monotone", r.lr.monotone_at_first_time}};
  }
  json criteria = json::array();
  for (const auto& c : r.criteria)
    criteria.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  doc["criteria"] = criteria;
  doc["pass"] = r.pass;
  doc["environment_failure"] = r.environment_failure;

  const auto results_path = out_dir / "results.json";
  {
    std::ofstream f(results_path, std::ios::binary);
    f << doc.dump(2) << "\n";
  }

  // Per-order CSV files with the fitted power law as a third column.
  std::vector<int> orders;
  for (const auto& rec : r.records)
    if (orders.empty() || orders.back() != rec.order) orders.push_back(rec.order);
  for (int n : orders) {
    std::ofstream f(out_dir / ("sweep_order" + std::to_string(n) + ".csv"),
                    std::ios::binary);
    f << "# scenario " << sc.name << " hash " << hash << "\n";
    f << "x,drift,fit\n";
    const SlopeFit* fit = r.fits.count(n) ? &r.fits.at(n) : nullptr;
    for (const auto& rec : r.records) {
      if (rec.order != n || !rec.error.empty()) continue;
      const double y_fit =
          fit ? std::exp(fit->intercept + fit->slope * std::log(rec.x)) : 0.0;
      f << fmt(rec.x) << "," << fmt(rec.drift) << "," << fmt(y_fit) << "\n";
    }
  }
  if (r.has_lr) {
    std::ofstream f(out_dir / "lr_decay.csv", std::ios::binary);
    f << "# scenario " << sc.name << " hash " << hash << "\n";
    f << "time,distance,value\n";
    for (const auto& e : r.lr.table)
      f << fmt(e.time) << "," << e.distance << "," << fmt(e.value) << "\n";
  }

  // Gnuplot script over the emitted data files.
  {
    std::ofstream f(out_dir / "plot.gp", std::ios::binary);
    f << "# gnuplot script for scenario " << sc.name << " (hash " << hash << ")\n";
    f << "set datafile separator ','\n";
    if (r.has_lr) {
      f << "set logscale y\nset xlabel 'distance'\nset ylabel '||[A(t), B]||'\n";
      f << "set key outside\n";
      f << "plot for [t in system(\"awk -F, 'NR>2 {print $1}' lr_decay.csv | sort -u\")] \\\n";
      f << "  'lr_decay.csv' using 2:($1 == t+0 ? $3 : 1/0) with linespoints title 't='.t\n";
    } else {
      f << "set logscale xy\nset xlabel '"
        << (sc.kind == ScenarioKind::Adiabatic ? "eta" : "eps")
        << "'\nset ylabel 'drift'\nset key left top\n";
      f << "plot";
      bool first = true;
      for (int n : orders) {
        const std::string file = "sweep_order" + std::to_string(n) + ".csv";
        f << (first ? " " : ", \\\n     ") << "'" << file
          << "' using 1:2 skip 2 with points title 'order " << n << "', '" << file
          << "' using 1:3 skip 2 with lines notitle";
        first = false;
      }
      f << "\n";
    }
  }

  // Human-readable summary; wall-clock times live here, not in results.json.
  {
    std::ofstream f(out_dir / "summary.txt", std::ios::binary);
    f << "scenario " << sc.name << " (hash " << hash << ")\n";
    f << "written  " << timestamp << "\n";
    f << "threads  " << threads << "\n\n";
    for (const auto& c : r.criteria)
      f << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
    f << "\noverall  " << (r.pass ? "PASS" : "FAIL")
      << (r.environment_failure ? " (environment failures present)" : "") << "\n";
    if (!r.records.empty()) {
      f << "\n  order           x           drift    steps   seconds\n";
      double total = 0.0;
      for (const auto& rec : r.records) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "  %5d %11.6g %15.6e %8ld %9.2f", rec.order,
                      rec.x, rec.drift, rec.steps, rec.wall_seconds);
        f << buf;
        if (!rec.error.empty()) f << "   " << rec.error;
        f << "\n";
        total += rec.wall_seconds;
      }
      char buf[80];
      std::snprintf(buf, sizeof(buf), "  total wall time %.2f s\n", total);
      f << buf;
    }
  }

  return results_path;
}

}  // namespace neass
