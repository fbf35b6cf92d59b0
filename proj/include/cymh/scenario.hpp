#pragma once

// Config-driven scenario execution: parse a JSON scenario, evolve it, emit
// the CSV series, snapshot files, and the JSON report, and score the
// configured checks.  The schema is versioned and strict; unknown keys are
// errors, because a silently ignored physics knob is worse than a refusal.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cymh/diagnostics.hpp"
#include "cymh/evolve.hpp"
#include "cymh/profiles.hpp"
#include "cymh/sampler.hpp"

namespace cymh {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckSpec {
  std::string name;
  double tol = 0.0;
  double apex = 0.0;  // cone or lightcone anchor time
  double base = 0.0;
  int samples = 0;
};

struct Scenario {
  std::string name;
  Chart chart = Chart::Cylinder;
  Ansatz ansatz = Ansatz::FixedDirection;
  int n = 0;
  double lambda = 0.0;
  double xmax = 0.0;
  unsigned seed = 0;
  ProfileSpec data;
  RunConfig run;
  int snapshot_stride = 1;
  std::vector<CheckSpec> checks;
};

struct CheckResult {
  std::string name;
  std::string op;  // library operation the number came from
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ScenarioOutcome {
  int exit = 0;
  std::string status;  // pass | check_failures | numerical_abort
  json report;
};

namespace detail {

inline void expect_keys(const json& j, std::initializer_list<const char*> keys,
                        const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError(where + ": unknown key \"" + it.key() + "\"");
  }
}

inline double num_field(const json& j, const char* key, const std::string& where,
                        bool required, double fallback = 0.0) {
  if (!j.contains(key)) {
    if (required) throw ConfigError(where + ": missing \"" + key + "\"");
    return fallback;
  }
  if (!j[key].is_number())
    throw ConfigError(where + ": \"" + key + "\" must be a number");
  return j[key].get<double>();
}

inline std::string str_field(const json& j, const char* key,
                             const std::string& where) {
  if (!j.contains(key) || !j[key].is_string())
    throw ConfigError(where + ": missing string \"" + key + "\"");
  return j[key].get<std::string>();
}

inline ProfileSpec parse_data(const json& j) {
  expect_keys(j, {"family", "aw", "ah", "ac", "apw", "aph", "apc", "width",
                  "seed"},
              "data");
  ProfileSpec sp;
  std::string fam = str_field(j, "family", "data");
  if (fam == "gaussian")
    sp.family = ProfileSpec::Family::Gaussian;
  else if (fam == "bump")
    sp.family = ProfileSpec::Family::Bump;
  else if (fam == "constant")
    sp.family = ProfileSpec::Family::Constant;
  else
    throw ConfigError("data: unknown family \"" + fam + "\"");
  sp.aw = num_field(j, "aw", "data", false);
  sp.ah = num_field(j, "ah", "data", false);
  sp.ac = num_field(j, "ac", "data", false);
  sp.apw = num_field(j, "apw", "data", false);
  sp.aph = num_field(j, "aph", "data", false);
  sp.apc = num_field(j, "apc", "data", false);
  sp.width = num_field(j, "width", "data", false, 1.0);
  if (!(sp.width > 0.0)) throw ConfigError("data: width must be positive");
  return sp;
}

inline CheckSpec parse_check(const std::string& name, const json& j,
                             const Scenario& sc) {
  const std::string where = "checks." + name;
  CheckSpec ck;
  ck.name = name;
  if (name == "energy_drift") {
    expect_keys(j, {"tol"}, where);
    ck.tol = num_field(j, "tol", where, true);
    if (sc.chart != Chart::Cylinder)
      throw ConfigError(where + ": needs frame \"cylinder\"");
  } else if (name == "cone_identity" || name == "cone_l2_bound") {
    expect_keys(j, {"apex", "base", "tol"}, where);
    ck.apex = num_field(j, "apex", where, true);
    ck.base = num_field(j, "base", where, false);
    ck.tol = num_field(j, "tol", where, name == "cone_identity");
    if (sc.chart != Chart::MinkSph)
      throw ConfigError(where + ": needs frame \"minkowski\"");
    if (!(ck.apex > ck.base))
      throw ConfigError(where + ": apex must exceed base");
    if (ck.apex > sc.run.t_end)
      throw ConfigError(where + ": apex beyond the end of the run");
  } else if (name == "lightcone") {
    expect_keys(j, {"t0", "tol"}, where);
    ck.apex = num_field(j, "t0", where, true);
    ck.tol = num_field(j, "tol", where, true);
    if (sc.chart != Chart::MinkSph || sc.ansatz != Ansatz::FixedDirection)
      throw ConfigError(where +
                        ": needs frame \"minkowski\" and ansatz "
                        "\"fixed_direction\"");
    if (ck.apex > sc.run.t_end)
      throw ConfigError(where + ": t0 beyond the end of the run");
  } else if (name == "norm_equivalence") {
    expect_keys(j, {"samples"}, where);
    ck.samples = int(num_field(j, "samples", where, true));
    if (ck.samples < 1) throw ConfigError(where + ": samples must be positive");
  } else {
    throw ConfigError("checks: unknown check \"" + name + "\"");
  }
  return ck;
}

}  // namespace detail

inline Scenario parse_scenario(const json& j) {
  detail::expect_keys(j,
                      {"schema", "name", "frame", "ansatz", "n", "lambda",
                       "xmax", "seed", "data", "run", "snapshot_stride",
                       "checks"},
                      "config");
  if (detail::str_field(j, "schema", "config") != "cymh/1")
    throw ConfigError("config: schema must be \"cymh/1\"");
  Scenario sc;
  sc.name = detail::str_field(j, "name", "config");
  if (sc.name.empty() ||
      sc.name.find_first_not_of(
          "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_") !=
          std::string::npos)
    throw ConfigError("config: name must be a nonempty [A-Za-z0-9_-] token");

  std::string frame = detail::str_field(j, "frame", "config");
  if (frame == "cylinder")
    sc.chart = Chart::Cylinder;
  else if (frame == "minkowski")
    sc.chart = Chart::MinkSph;
  else
    throw ConfigError("config: unknown frame \"" + frame + "\"");

  std::string an = detail::str_field(j, "ansatz", "config");
  if (an == "hedgehog")
    sc.ansatz = Ansatz::Hedgehog;
  else if (an == "fixed_direction")
    sc.ansatz = Ansatz::FixedDirection;
  else
    throw ConfigError("config: unknown ansatz \"" + an + "\"");

  sc.n = int(detail::num_field(j, "n", "config", true));
  sc.lambda = detail::num_field(j, "lambda", "config", true);
  if (sc.lambda < 0.0) throw ConfigError("config: lambda must be >= 0");
  sc.xmax = detail::num_field(j, "xmax", "config", false);
  if (sc.chart == Chart::MinkSph && !(sc.xmax > 0.0))
    throw ConfigError("config: minkowski runs need a positive xmax");
  if (sc.chart == Chart::Cylinder && j.contains("xmax"))
    throw ConfigError("config: xmax is fixed on the cylinder");
  sc.seed = unsigned(detail::num_field(j, "seed", "config", false));

  if (!j.contains("data")) throw ConfigError("config: missing \"data\"");
  sc.data = detail::parse_data(j["data"]);

  if (!j.contains("run")) throw ConfigError("config: missing \"run\"");
  const json& r = j["run"];
  detail::expect_keys(r, {"t_end", "dt", "cfl", "sigma", "snapshot_every"},
                      "run");
  sc.run.t_end = detail::num_field(r, "t_end", "run", true);
  if (!(sc.run.t_end > 0.0)) throw ConfigError("run: t_end must be positive");
  sc.run.dt = detail::num_field(r, "dt", "run", false);
  sc.run.cfl = detail::num_field(r, "cfl", "run", false, kCourantBound);
  sc.run.sigma = detail::num_field(r, "sigma", "run", false);
  sc.run.snapshot_every =
      int(detail::num_field(r, "snapshot_every", "run", false));
  sc.snapshot_stride =
      int(detail::num_field(j, "snapshot_stride", "config", false, 1.0));
  if (sc.snapshot_stride < 1)
    throw ConfigError("config: snapshot_stride must be >= 1");

  if (j.contains("checks")) {
    const json& cs = j["checks"];
    if (!cs.is_object()) throw ConfigError("checks: expected an object");
    for (auto it = cs.begin(); it != cs.end(); ++it)
      sc.checks.push_back(detail::parse_check(it.key(), it.value(), sc));
    std::sort(sc.checks.begin(), sc.checks.end(),
              [](const CheckSpec& a, const CheckSpec& b) {
                return a.name < b.name;
              });
    for (const CheckSpec& ck : sc.checks)
      if (ck.name != "energy_drift" && ck.name != "norm_equivalence" &&
          sc.run.snapshot_every < 1)
        throw ConfigError("checks." + ck.name +
                          ": needs stored frames; set run.snapshot_every");
  }
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config \"" + path + "\"");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  try {
    return parse_scenario(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Output files

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline const char* frame_name(Chart c) {
  return c == Chart::Cylinder ? "cylinder" : "minkowski";
}
inline const char* ansatz_name(Ansatz a) {
  return a == Ansatz::Hedgehog ? "hedgehog" : "fixed_direction";
}

inline void write_snapshot(const std::filesystem::path& file,
                           const Scenario& sc, const EquivariantState& st) {
  json meta{{"schema", "cymh-snapshot/1"},
            {"scenario", sc.name},
            {"time", st.time},
            {"frame", frame_name(st.background)},
            {"ansatz", ansatz_name(st.ansatz)},
            {"n", st.n()},
            {"live", st.live},
            {"lambda", st.lambda},
            {"xmax", st.xmax}};
  std::ofstream out(file);
  out << "# " << meta.dump() << "\n";
  const bool hh = st.ansatz == Ansatz::Hedgehog;
  out << (hh ? "x,w,pw,h,ph" : "x,c,pc") << "\n";
  for (int i = 0; i <= st.n(); ++i) {
    double x = i * st.dx();
    if (hh)
      out << fmt(x) << ',' << fmt(st.w[i]) << ',' << fmt(st.pw[i]) << ','
          << fmt(st.h[i]) << ',' << fmt(st.ph[i]) << "\n";
    else
      out << fmt(x) << ',' << fmt(st.c[i]) << ',' << fmt(st.pc[i]) << "\n";
  }
}

inline std::vector<std::string> series_columns(const Scenario& sc) {
  if (sc.chart == Chart::Cylinder)
    return {"time",  "total", "electric", "magnetic",
            "pi",    "dphi",  "mass",     "quartic"};
  if (sc.ansatz == Ansatz::Hedgehog)
    return {"time", "max_dev_w", "max_pw", "max_h", "max_ph"};
  return {"time", "max_c", "max_pc"};
}

inline std::vector<double> series_row(const Scenario& sc,
                                      const EquivariantState& st) {
  if (sc.chart == Chart::Cylinder) {
    auto e = energy_cylinder(st);
    return {st.time, e.total, e.electric, e.magnetic,
            e.pi,    e.dphi,  e.mass,     e.quartic};
  }
  auto amax = [&](const std::vector<double>& a, double off) {
    double m = 0.0;
    for (int i = 0; i <= st.live; ++i) m = std::max(m, std::abs(a[i] - off));
    return m;
  };
  if (sc.ansatz == Ansatz::Hedgehog)
    return {st.time, amax(st.w, 1.0), amax(st.pw, 0.0), amax(st.h, 0.0),
            amax(st.ph, 0.0)};
  return {st.time, amax(st.c, 0.0), amax(st.pc, 0.0)};
}

inline void write_series(const std::filesystem::path& file, const Scenario& sc,
                         const Trajectory& tr) {
  auto cols = series_columns(sc);
  json meta{{"schema", "cymh-series/1"},
            {"scenario", sc.name},
            {"frame", frame_name(sc.chart)},
            {"ansatz", ansatz_name(sc.ansatz)},
            {"n", sc.n},
            {"lambda", sc.lambda},
            {"columns", cols}};
  std::ofstream out(file);
  out << "# " << meta.dump() << "\n";
  for (std::size_t k = 0; k < cols.size(); ++k)
    out << cols[k] << (k + 1 < cols.size() ? "," : "\n");
  for (const auto& st : tr.frames) {
    auto row = series_row(sc, st);
    for (std::size_t k = 0; k < row.size(); ++k)
      out << fmt(row[k]) << (k + 1 < row.size() ? "," : "\n");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Execution

inline ScenarioOutcome run_scenario_outcome(const Scenario& sc,
                                            const std::string& outroot) {
  namespace fs = std::filesystem;
  ScenarioOutcome oc;
  fs::path outdir = fs::path(outroot) / sc.name;
  fs::create_directories(outdir / "snapshots");

  json rep{{"schema", "cymh-report/1"},
           {"scenario", sc.name},
           {"frame", detail::frame_name(sc.chart)},
           {"ansatz", detail::ansatz_name(sc.ansatz)},
           {"n", sc.n},
           {"lambda", sc.lambda},
           {"seed", sc.seed},
           {"t_end", sc.run.t_end}};
  auto finish = [&](const std::string& status, int exit) {
    oc.status = status;
    oc.exit = exit;
    rep["status"] = status;
    oc.report = rep;
    std::ofstream out(outdir / "report.json");
    out << rep.dump(2) << "\n";
    return oc;
  };

  EquivariantState st;
  try {
    st = make_state(sc.chart, sc.ansatz, sc.n, sc.lambda, sc.xmax);
    fill_data(st, sc.data);
  } catch (const std::invalid_argument& e) {
    rep["error"] = e.what();
    // state construction failures are configuration mistakes
    oc.status = "config_error";
    oc.exit = 2;
    rep["status"] = oc.status;
    oc.report = rep;
    return oc;
  }

  double e0 = sc.chart == Chart::Cylinder ? energy_cylinder(st).total : 0.0;

  Trajectory tr;
  RunResult rr;
  try {
    rr = run(st, sc.run, &tr);
  } catch (const std::invalid_argument& e) {
    rep["error"] = e.what();
    oc.status = "config_error";
    oc.exit = 2;
    rep["status"] = oc.status;
    oc.report = rep;
    return oc;
  }
  rep["steps"] = rr.steps;
  rep["dt"] = rr.dt;
  rep["frames"] = tr.frames.size();
  if (rr.status != RunStatus::Ok) {
    rep["error"] = json{{"kind", rr.status == RunStatus::NonFinite
                                     ? "non_finite"
                                     : "domain_exhausted"},
                        {"time", rr.time},
                        {"node", rr.node},
                        {"field", rr.field}};
    return finish("numerical_abort", 3);
  }

  detail::write_series(outdir / "series.csv", sc, tr);
  rep["series"] = "series.csv";
  int written = 0;
  for (std::size_t k = 0; k < tr.frames.size(); k += sc.snapshot_stride) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04zu.csv", k);
    detail::write_snapshot(outdir / "snapshots" / name, sc, tr.frames[k]);
    ++written;
  }
  rep["snapshots"] = written;

  // checks; the sampler is only built when a check walks the trajectory
  std::vector<CheckResult> results;
  std::optional<TrajectorySampler> smp;
  auto sampler = [&]() -> TrajectorySampler& {
    if (!smp) smp.emplace(tr);
    return *smp;
  };
  auto cart = [&](const Vec4& p) { return sampler().fields_cart(p); };
  auto eval = [&](const CheckSpec& ck, CheckResult& cr) {
    if (ck.name == "energy_drift") {
      cr.op = "energy_cylinder";
      double e1 = energy_cylinder(st).total;
      cr.value = std::abs(e1 - e0) / std::max(std::abs(e0), 1e-300);
      cr.pass = cr.value < ck.tol;
    } else if (ck.name == "cone_identity") {
      cr.op = "cone_energy_identity";
      auto ci = cone_energy_identity(
          cart, ConeSpec{ck.apex, {0.0, 0.0, 0.0}, ck.base}, sc.lambda);
      cr.value = ci.residual;
      cr.pass = cr.value < ck.tol;
    } else if (ck.name == "cone_l2_bound") {
      cr.op = "l2_cone_bound";
      auto rb = l2_cone_bound(cart, ConeSpec{ck.apex, {0.0, 0.0, 0.0}, ck.base},
                              sc.lambda);
      cr.value = rb.cone_norm / std::max(rb.bound_energy, 1e-300);
      cr.tolerance = 1.0;
      cr.pass = rb.pass_energy && (sc.lambda <= 0.0 || rb.pass_quartic);
    } else if (ck.name == "lightcone") {
      cr.op = "scalar_lightcone_representation";
      cr.value =
          scalar_lightcone_representation(sampler(), ck.apex, sc.lambda)
              .residual;
      cr.pass = cr.value < ck.tol;
    } else if (ck.name == "norm_equivalence") {
      cr.op = "norm_equivalence_sample";
      auto ns = norm_equivalence_sample(ck.samples, sc.seed);
      cr.value = ns.min_ratio;
      cr.tolerance = 0.125;
      cr.pass = ns.violations == 0 && ns.min_ratio >= 0.125;
    }
  };
  for (const CheckSpec& ck : sc.checks) {
    CheckResult cr;
    cr.name = ck.name;
    cr.tolerance = ck.tol;
    try {
      eval(ck, cr);
    } catch (const std::exception& e) {
      rep["error"] = json{{"kind", "check_failed_to_evaluate"},
                          {"check", cr.name},
                          {"what", e.what()}};
      return finish("numerical_abort", 3);
    }
    if (!std::isfinite(cr.value)) {
      rep["error"] = json{{"kind", "non_finite"}, {"check", cr.name}};
      return finish("numerical_abort", 3);
    }
    results.push_back(cr);
  }

  json jc = json::array();
  bool all = true;
  for (const auto& cr : results) {
    jc.push_back({{"name", cr.name},
                  {"op", cr.op},
                  {"value", cr.value},
                  {"tolerance", cr.tolerance},
                  {"pass", cr.pass}});
    all = all && cr.pass;
  }
  rep["checks"] = jc;
  return finish(all ? "pass" : "check_failures", all ? 0 : 1);
}

inline int run_scenario(const std::string& config_path,
                        const std::string& outroot) {
  Scenario sc;
  try {
    sc = load_scenario(config_path);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  auto oc = run_scenario_outcome(sc, outroot);
  if (oc.report.contains("checks"))
    for (const auto& c : oc.report["checks"])
      std::printf("%-18s %-28s value %.6e tol %.2e %s\n",
                  c["name"].get<std::string>().c_str(),
                  c["op"].get<std::string>().c_str(), c["value"].get<double>(),
                  c["tolerance"].get<double>(),
                  c["pass"].get<bool>() ? "pass" : "FAIL");
  std::printf("%s: %s\n", sc.name.c_str(), oc.status.c_str());
  return oc.exit;
}

inline int verify_all(const std::string& dir, const std::string& outroot,
                      int threads) {
  namespace fs = std::filesystem;
  std::vector<fs::path> configs;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec))
    if (e.path().extension() == ".json") configs.push_back(e.path());
  if (ec) {
    std::fprintf(stderr, "config error: cannot read suite directory \"%s\"\n",
                 dir.c_str());
    return 2;
  }
  std::sort(configs.begin(), configs.end());

  struct Entry {
    std::string scenario;
    int exit = 0;
    std::string status;
    json checks = json::array();
  };
  std::vector<Entry> entries(configs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      Entry& en = entries[i];
      en.scenario = configs[i].stem().string();
      try {
        Scenario sc = load_scenario(configs[i].string());
        auto oc = run_scenario_outcome(sc, outroot);
        en.scenario = sc.name;
        en.exit = oc.exit;
        en.status = oc.status;
        if (oc.report.contains("checks")) en.checks = oc.report["checks"];
      } catch (const ConfigError& e) {
        en.exit = 2;
        en.status = "config_error";
        en.checks = json::array({json{{"name", "config"},
                                      {"op", "parse_scenario"},
                                      {"error", e.what()}}});
      }
    }
  };
  int nt = std::max(1, std::min<int>(threads, int(configs.size())));
  if (nt <= 1 || configs.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < nt; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  int worst = 0;
  json out{{"schema", "cymh-verify/1"}, {"results", json::array()}};
  for (const auto& en : entries) {
    worst = std::max(worst, en.exit);
    out["results"].push_back({{"scenario", en.scenario},
                              {"exit", en.exit},
                              {"status", en.status},
                              {"checks", en.checks}});
    std::printf("%-24s %s\n", en.scenario.c_str(), en.status.c_str());
  }
  std::filesystem::create_directories(outroot);
  std::ofstream sf(std::filesystem::path(outroot) / "summary.json");
  sf << out.dump(2) << "\n";
  return worst;
}

// ---------------------------------------------------------------------------
// Series fitting

inline int fit_series(const std::string& csv, double lo, double hi) {
  if (!(hi > lo)) {
    std::fprintf(stderr, "config error: fit window must have a < b\n");
    return 2;
  }
  std::ifstream in(csv);
  if (!in) {
    std::fprintf(stderr, "config error: cannot open series \"%s\"\n",
                 csv.c_str());
    return 2;
  }
  std::string line;
  std::vector<std::string> names;
  std::vector<std::vector<double>> cols;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (names.empty()) {
      while (std::getline(ss, cell, ',')) names.push_back(cell);
      if (names.size() < 2) {
        std::fprintf(stderr, "config error: series needs >= 2 columns\n");
        return 2;
      }
      cols.resize(names.size());
      continue;
    }
    std::size_t k = 0;
    while (std::getline(ss, cell, ',') && k < cols.size()) {
      try {
        cols[k].push_back(std::stod(cell));
      } catch (const std::exception&) {
        std::fprintf(stderr, "config error: bad number \"%s\" in %s\n",
                     cell.c_str(), csv.c_str());
        return 2;
      }
      ++k;
    }
    if (k != cols.size()) {
      std::fprintf(stderr, "config error: ragged row in %s\n", csv.c_str());
      return 2;
    }
  }
  if (names.empty() || cols[0].empty()) {
    std::fprintf(stderr, "config error: no data rows in %s\n", csv.c_str());
    return 2;
  }
  for (std::size_t j = 1; j < cols.size(); ++j) {
    try {
      auto f = decay_fit(cols[0], cols[j], lo, hi);
      std::printf("%-16s exponent %+.6e residual %.3e points %d\n",
                  names[j].c_str(), f.exponent, f.residual, f.used);
    } catch (const std::invalid_argument&) {
      std::printf("%-16s skipped (not positive on the window)\n",
                  names[j].c_str());
    }
  }
  return 0;
}

}  // namespace cymh
