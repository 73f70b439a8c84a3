#include "mlcm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlcm/errors.hpp"
#include "mlcm/gamma.hpp"
#include "mlcm/mittag_leffler.hpp"
#include "mlcm/numerics.hpp"
#include "mlcm/pollard.hpp"
#include "mlcm/spectral.hpp"
#include "mlcm/stable.hpp"
#include "mlcm/verify.hpp"

namespace mlcm::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kArtifactVersion = "1.0.0";

std::string fmt(double v, bool full) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), full ? "%.17g" : "%.10g", v);
  return buf;
}

std::optional<double> env_default_tol() {
  const char* e = std::getenv("MLCM_DEFAULT_TOL");
  if (e == nullptr || *e == '\0') return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(e, &end);
  if (end == e || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    std::cerr << "warning: ignoring invalid MLCM_DEFAULT_TOL value '" << e << "'\n";
    return std::nullopt;
  }
  return v;
}

struct Options {
  double alpha = 0.5;
  double beta = 1.0;
  double gamma = 1.0;
  double lambda = 1.0;
  double theta = 0.5;
  double mu = 1.0;
  int n = 64;
  double x = 1.0;  // eval requires --x explicitly; limit-demo default
  double x_min = 0.0;
  double x_max = 1.0;
  int steps = 11;
  std::string method = "series";
  std::string family = "stable";
  std::string suite = "all";
  std::string format;  // resolved per subcommand
  std::string output;  // empty -> stdout
  std::string mu_list = "0.5,1,2";
  std::string n_list = "1,2,4,8,16,32,64";
  bool full_precision = false;
  double tol = std::numeric_limits<double>::quiet_NaN();  // NaN -> unset

  double effective_tol(double fallback) const {
    if (std::isfinite(tol)) return tol;
    if (const auto env = env_default_tol()) return *env;
    return fallback;
  }
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw DomainError("cannot open output file '" + o.output + "'");
  f << text;
}

struct Row {
  double x;
  double value;
  double error_estimate;
  std::string method;
};

std::string csv_rows(const std::vector<Row>& rows, bool full) {
  std::string out = "x,value,error_estimate,method\n";
  for (const Row& r : rows) {
    out += fmt(r.x, full) + "," + fmt(r.value, full) + "," +
           fmt(r.error_estimate, full) + "," + r.method + "\n";
  }
  return out;
}

ordered_json rows_json(const std::vector<Row>& rows) {
  ordered_json data = ordered_json::array();
  for (const Row& r : rows) {
    ordered_json j;
    j["x"] = r.x;
    j["value"] = r.value;
    j["error_estimate"] = r.error_estimate;
    j["method"] = r.method;
    data.push_back(j);
  }
  return data;
}

ordered_json report_json(const ValidationReport& r) {
  ordered_json j;
  j["kind"] = "validation_report";
  j["suite_name"] = r.suite_name;
  j["tolerance"] = r.tolerance;
  j["reference_truth"] = r.reference_truth;
  j["pass"] = r.pass;
  j["worst_case"] = r.worst_case;
  ordered_json cases = ordered_json::array();
  for (const CaseRecord& c : r.cases) {
    ordered_json jc;
    jc["label"] = c.label;
    ordered_json rv;
    for (const auto& [name, value] : c.route_values) rv[name] = value;
    jc["route_values"] = rv;
    jc["max_discrepancy"] = c.max_discrepancy;
    jc["pass"] = c.pass;
    if (!c.note.empty()) jc["note"] = c.note;
    cases.push_back(jc);
  }
  j["cases"] = cases;
  return j;
}

ordered_json cert_json(const CMCertificate& c, const std::string& label) {
  ordered_json j;
  j["kind"] = "cm_certificate";
  j["label"] = label;
  j["grid_min"] = c.grid.front();
  j["grid_max"] = c.grid.back();
  j["grid_points"] = c.grid.size();
  j["max_order"] = c.max_order;
  j["tolerance"] = c.tolerance;
  j["min_signed_by_order"] = c.min_signed_by_order;
  ordered_json viols = ordered_json::array();
  for (const CMViolation& v : c.violations) {
    ordered_json jv;
    jv["order"] = v.order;
    jv["x"] = v.x;
    jv["value"] = v.value;
    viols.push_back(jv);
  }
  j["violations"] = viols;
  j["pass"] = c.pass;
  return j;
}

// ---------------------------------------------------------------------------
// eval / table

// z is the function argument: E^g_{a,b}(z).  The mixture routes evaluate
// E(-lambda x^a) and therefore need z <= 0 (z < 0 for the limit route).
Row eval_method(const Options& o, const std::string& method, double z) {
  if (method == "series") {
    const MLParams mp(o.alpha, o.beta, o.gamma);
    const SeriesResult r = ml_series_detailed(mp, z);
    return {z, r.value, r.error_estimate, "series"};
  }
  if (z > 0.0) {
    throw DomainError("method '" + method +
                      "' evaluates E(-lambda x^alpha) and needs a nonpositive "
                      "argument --x");
  }
  const PollardParams pp(StableIndex(o.alpha), o.beta, o.gamma);
  const double lam = (z == 0.0) ? 1.0 : -z;
  const double xx = (z == 0.0) ? 0.0 : 1.0;
  if (method == "pollard") {
    const IntegralResult r = ml_via_pollard_detailed(pp, lam, xx);
    return {z, r.value, r.error_estimate, "pollard"};
  }
  if (method == "spectral") {
    const IntegralResult r = ml_via_spectral_detailed(pp, lam, xx);
    return {z, r.value, r.error_estimate, "spectral"};
  }
  if (method == "limit") {
    if (!(z < 0.0)) {
      throw DomainError("method 'limit' needs a strictly negative argument --x");
    }
    const IntegralResult r = ml_via_limit_detailed(pp, -z, 1.0, o.n, o.mu);
    return {z, r.value, r.error_estimate, "limit"};
  }
  throw DomainError("unknown method '" + method + "'");
}

struct AllRow {
  double x;
  double series;
  double pollard;
  double spectral;
  double max_discrepancy;
  bool pass;
};

AllRow eval_all(const Options& o, double z, double tol) {
  if (z > 0.0) {
    throw DomainError(
        "--method all cross-validates the mixture routes and needs a "
        "nonpositive argument --x");
  }
  const MLParams mp(o.alpha, o.beta, o.gamma);
  const PollardParams pp(StableIndex(o.alpha), o.beta, o.gamma);
  const double lam = (z == 0.0) ? 1.0 : -z;
  const double xx = (z == 0.0) ? 0.0 : 1.0;
  const double s = ml_series(mp, z);
  const double p = ml_via_pollard(pp, lam, xx);
  const double sp = ml_via_spectral(pp, lam, xx);
  const double lo = std::min({s, p, sp});
  const double hi = std::max({s, p, sp});
  return {z, s, p, sp, hi - lo, (hi - lo) <= tol};
}

std::string csv_all_rows(const std::vector<AllRow>& rows, bool full) {
  std::string out = "x,series,pollard,spectral,max_discrepancy,pass\n";
  for (const AllRow& r : rows) {
    out += fmt(r.x, full) + "," + fmt(r.series, full) + "," +
           fmt(r.pollard, full) + "," + fmt(r.spectral, full) + "," +
           fmt(r.max_discrepancy, full) + "," + (r.pass ? "true" : "false") +
           "\n";
  }
  return out;
}

ordered_json all_rows_json(const std::vector<AllRow>& rows) {
  ordered_json data = ordered_json::array();
  for (const AllRow& r : rows) {
    ordered_json j;
    j["x"] = r.x;
    j["series"] = r.series;
    j["pollard"] = r.pollard;
    j["spectral"] = r.spectral;
    j["max_discrepancy"] = r.max_discrepancy;
    j["pass"] = r.pass;
    data.push_back(j);
  }
  return data;
}

ordered_json eval_meta(const Options& o, const std::string& subcommand,
                       double tol, bool with_tol) {
  ordered_json meta;
  meta["subcommand"] = subcommand;
  meta["artifact_version"] = kArtifactVersion;
  ordered_json params;
  params["alpha"] = o.alpha;
  params["beta"] = o.beta;
  params["gamma"] = o.gamma;
  meta["parameters"] = params;
  if (with_tol) meta["tolerance"] = tol;
  return meta;
}

int cmd_eval(const Options& o) {
  const std::string format = o.format.empty() ? "text" : o.format;
  if (o.method == "all") {
    const double tol = o.effective_tol(1e-5);
    const AllRow row = eval_all(o, o.x, tol);
    if (format == "text") {
      std::string out;
      out += "series " + fmt(row.series, o.full_precision) + "\n";
      out += "pollard " + fmt(row.pollard, o.full_precision) + "\n";
      out += "spectral " + fmt(row.spectral, o.full_precision) + "\n";
      out += "max_discrepancy " + fmt(row.max_discrepancy, o.full_precision) +
             " " + (row.pass ? "pass" : "fail") + "\n";
      emit(o, out);
    } else if (format == "csv") {
      emit(o, csv_all_rows({row}, o.full_precision));
    } else {
      ordered_json doc;
      doc["meta"] = eval_meta(o, "eval", tol, true);
      doc["data"] = all_rows_json({row});
      emit(o, doc.dump(2) + "\n");
    }
    return row.pass ? 0 : 1;
  }

  const Row row = eval_method(o, o.method, o.x);
  if (format == "text") {
    emit(o, fmt(row.value, o.full_precision) + "\n");
  } else if (format == "csv") {
    emit(o, csv_rows({row}, o.full_precision));
  } else {
    ordered_json doc;
    doc["meta"] = eval_meta(o, "eval", 0.0, false);
    doc["data"] = rows_json({row});
    emit(o, doc.dump(2) + "\n");
  }
  return 0;
}

int cmd_table(const Options& o) {
  if (o.steps < 2) throw DomainError("--steps must be at least 2");
  const std::vector<double> grid = uniform_grid(o.x_min, o.x_max, o.steps);
  const std::string format = o.format.empty() ? "csv" : o.format;

  if (o.method == "all") {
    const double tol = o.effective_tol(1e-5);
    std::vector<AllRow> rows;
    rows.reserve(grid.size());
    bool pass = true;
    for (double z : grid) {
      rows.push_back(eval_all(o, z, tol));
      pass = pass && rows.back().pass;
    }
    if (format == "csv" || format == "text") {
      emit(o, csv_all_rows(rows, o.full_precision));
    } else {
      ordered_json doc;
      doc["meta"] = eval_meta(o, "table", tol, true);
      doc["data"] = all_rows_json(rows);
      emit(o, doc.dump(2) + "\n");
    }
    return pass ? 0 : 1;
  }

  std::vector<Row> rows;
  rows.reserve(grid.size());
  for (double z : grid) rows.push_back(eval_method(o, o.method, z));
  if (format == "csv" || format == "text") {
    emit(o, csv_rows(rows, o.full_precision));
  } else {
    ordered_json doc;
    doc["meta"] = eval_meta(o, "table", 0.0, false);
    doc["data"] = rows_json(rows);
    emit(o, doc.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// density / cdf

double tilted_density_value(const Options& o, double u) {
  const TiltParams tp(StableIndex(o.alpha), o.theta);  // validates theta
  const PollardParams base(tp.alpha, 1.0, 1.0);
  const double norm = gamma_ratio(o.theta + 1.0, o.theta / o.alpha + 1.0);
  if (!(u > 0.0)) throw DomainError("density: abscissa must be positive");
  const double core = mlcm::detail::pollard_density_core(base, u);
  return core <= 0.0 ? 0.0 : norm * std::pow(u, o.theta / o.alpha) * core;
}

int cmd_density(const Options& o) {
  if (o.steps < 2) throw DomainError("--steps must be at least 2");
  const std::vector<double> grid = uniform_grid(o.x_min, o.x_max, o.steps);
  std::vector<Row> rows;
  rows.reserve(grid.size());
  for (double x : grid) {
    double v;
    if (o.family == "stable") {
      v = stable_density(StableIndex(o.alpha), x);
    } else if (o.family == "pollard") {
      const PollardParams pp(StableIndex(o.alpha), o.beta, o.gamma);
      if (!(x > 0.0)) throw DomainError("density: abscissa must be positive");
      v = rgamma(o.gamma) * mlcm::detail::pollard_density_core(pp, x);
    } else if (o.family == "spectral") {
      const PollardParams pp(StableIndex(o.alpha), o.beta, o.gamma);
      v = spectral_density_r(SpectralPoint(x, o.lambda, pp));
    } else if (o.family == "tilted") {
      v = tilted_density_value(o, x);
    } else {
      throw DomainError("unknown density family '" + o.family + "'");
    }
    rows.push_back({x, v, 0.0, o.family});
  }
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format == "csv" || format == "text") {
    emit(o, csv_rows(rows, o.full_precision));
  } else {
    ordered_json doc;
    ordered_json meta;
    meta["subcommand"] = "density";
    meta["artifact_version"] = kArtifactVersion;
    ordered_json params;
    params["family"] = o.family;
    params["alpha"] = o.alpha;
    if (o.family == "pollard" || o.family == "spectral") {
      params["beta"] = o.beta;
      params["gamma"] = o.gamma;
    }
    if (o.family == "spectral") params["lambda"] = o.lambda;
    if (o.family == "tilted") params["theta"] = o.theta;
    meta["parameters"] = params;
    doc["meta"] = meta;
    doc["data"] = rows_json(rows);
    emit(o, doc.dump(2) + "\n");
  }
  return 0;
}

int cmd_cdf(const Options& o) {
  if (o.steps < 2) throw DomainError("--steps must be at least 2");
  const std::vector<double> grid = uniform_grid(o.x_min, o.x_max, o.steps);
  std::vector<Row> rows;
  rows.reserve(grid.size());
  for (double x : grid) {
    IntegralResult r;
    if (o.family == "stable") {
      r = stable_cdf_detailed(StableIndex(o.alpha), x);
    } else if (o.family == "pollard") {
      const PollardParams pp(StableIndex(o.alpha), o.beta, o.gamma);
      r = pollard_cdf_detailed(pp, x);
    } else if (o.family == "tilted") {
      r = tilted_pollard_cdf_detailed(TiltParams(StableIndex(o.alpha), o.theta), x);
    } else {
      throw DomainError("unknown cdf family '" + o.family + "' (spectral has no cdf)");
    }
    if (!r.converged) {
      throw ConvergenceError("cdf quadrature did not converge at x = " +
                             fmt(x, true));
    }
    rows.push_back({x, r.value, r.error_estimate, o.family});
  }
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format == "csv" || format == "text") {
    emit(o, csv_rows(rows, o.full_precision));
  } else {
    ordered_json doc;
    ordered_json meta;
    meta["subcommand"] = "cdf";
    meta["artifact_version"] = kArtifactVersion;
    ordered_json params;
    params["family"] = o.family;
    params["alpha"] = o.alpha;
    if (o.family == "pollard") {
      params["beta"] = o.beta;
      params["gamma"] = o.gamma;
    }
    if (o.family == "tilted") params["theta"] = o.theta;
    meta["parameters"] = params;
    doc["meta"] = meta;
    doc["data"] = rows_json(rows);
    emit(o, doc.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct SuiteResult {
  ordered_json doc;
  bool pass;
  std::string label;
  double metric;  // headline number for the CSV summary
};

std::vector<SuiteResult> run_cm_suite(double tol) {
  const std::vector<double> grid = uniform_grid(0.1, 10.1, 81);
  std::vector<SuiteResult> out;
  struct Cfg {
    double a, b, g;
    const char* route;
  };
  const Cfg sets[] = {{0.5, 1.0, 1.0, "pollard"},
                      {0.5, 1.2, 1.5, "pollard"},
                      {0.7, 1.5, 1.8, "series"}};
  for (const Cfg& s : sets) {
    std::function<double(double)> f;
    if (std::string(s.route) == "series") {
      const MLParams mp(s.a, s.b, s.g);
      f = [mp](double x) { return ml_series(mp, -x); };
    } else {
      const PollardParams pp(StableIndex(s.a), s.b, s.g);
      f = [pp](double x) { return ml_via_pollard(pp, x, 1.0); };
    }
    const CMCertificate c = check_complete_monotonicity(f, grid, 8, tol);
    const std::string label = "cm alpha=" + fmt(s.a, false) + " beta=" +
                              fmt(s.b, false) + " gamma=" + fmt(s.g, false) +
                              " route=" + s.route;
    const double metric =
        *std::min_element(c.min_signed_by_order.begin(), c.min_signed_by_order.end());
    out.push_back({cert_json(c, label), c.pass, label, metric});
  }
  for (double a2 : {0.5, 0.7}) {
    const PollardParams pp(StableIndex(0.5), 1.2, 1.5);
    const CMCertificate c =
        bernstein_composition_check(pp, 2.0, StableIndex(a2), grid, 8, tol);
    const std::string label = "bernstein alpha=0.5 beta=1.2 gamma=1.5 lambda=2 a2=" +
                              fmt(a2, false);
    const double metric =
        *std::min_element(c.min_signed_by_order.begin(), c.min_signed_by_order.end());
    out.push_back({cert_json(c, label), c.pass, label, metric});
  }
  return out;
}

std::vector<SuiteResult> run_routes_suite(double tol) {
  std::vector<SuiteResult> out;
  struct S {
    double a, b, g;
  };
  const S sets[] = {{0.5, 1.2, 1.5}, {0.7, 1.5, 1.8}};
  std::vector<double> zs;
  for (int i = 0; i <= 12; ++i) zs.push_back(0.25 * i);
  for (const S& s : sets) {
    const MLParams mp(s.a, s.b, s.g);
    const PollardParams pp(StableIndex(s.a), s.b, s.g);
    const std::vector<NamedRoute> routes = {
        {"series", [mp](double z) { return ml_series(mp, -z); }},
        {"pollard",
         [pp](double z) {
           return z == 0.0 ? ml_via_pollard(pp, 1.0, 0.0)
                           : ml_via_pollard(pp, z, 1.0);
         }},
        {"spectral",
         [pp](double z) {
           return z == 0.0 ? ml_via_spectral(pp, 1.0, 0.0)
                           : ml_via_spectral(pp, z, 1.0);
         }},
    };
    const std::string name = "routes alpha=" + fmt(s.a, false) + " beta=" +
                             fmt(s.b, false) + " gamma=" + fmt(s.g, false);
    const ValidationReport rep = cross_validate(routes, zs, tol, name);
    const double metric =
        rep.worst_case >= 0 ? rep.cases[rep.worst_case].max_discrepancy : 0.0;
    out.push_back({report_json(rep), rep.pass, name, metric});
  }
  return out;
}

std::vector<SuiteResult> run_laplace_suite(double tol) {
  std::vector<SuiteResult> out;
  struct S {
    double a, b, g, lam;
  };
  const S sets[] = {{0.5, 1.0, 1.0, 1.0}, {0.5, 1.2, 1.5, 1.0}, {0.7, 1.5, 1.8, 2.0}};
  const std::vector<double> s_grid = {1.0, 2.0, 4.0};
  for (const S& s : sets) {
    const PollardParams pp(StableIndex(s.a), s.b, s.g);
    const MLParams mp(s.a, s.b, s.g);
    const double lam = s.lam;
    auto f = [pp, lam](double x) {
      const double z = lam * std::pow(x, pp.alpha_value());
      return std::pow(x, pp.beta - 1.0) * ml_reference(pp, z);
    };
    auto closed = [mp, lam](double sv) {
      return ml_laplace_closed(mp, RatePair(lam, sv));
    };
    const std::string name = "laplace alpha=" + fmt(s.a, false) + " beta=" +
                             fmt(s.b, false) + " gamma=" + fmt(s.g, false) +
                             " lambda=" + fmt(s.lam, false);
    const ValidationReport rep = check_laplace_identity(f, closed, s_grid, tol, name);
    const double metric =
        rep.worst_case >= 0 ? rep.cases[rep.worst_case].max_discrepancy : 0.0;
    out.push_back({report_json(rep), rep.pass, name, metric});
  }
  return out;
}

std::vector<SuiteResult> run_limit_suite() {
  std::vector<SuiteResult> out;
  struct S {
    double a, b, g;
  };
  const S sets[] = {{0.5, 1.0, 1.0}, {0.5, 1.2, 1.5}};
  const std::vector<double> mus = {0.5, 1.0, 2.0};
  const std::vector<int> ns = {1, 2, 4, 8, 16, 32, 64};
  for (const S& s : sets) {
    const PollardParams pp(StableIndex(s.a), s.b, s.g);
    ValidationReport rep = limit_convergence_report(pp, 1.0, 1.0, mus, ns);
    rep.suite_name += " alpha=" + fmt(s.a, false) + " beta=" + fmt(s.b, false) +
                      " gamma=" + fmt(s.g, false);
    const double metric =
        rep.worst_case >= 0 ? rep.cases[rep.worst_case].max_discrepancy : 0.0;
    out.push_back({report_json(rep), rep.pass, rep.suite_name, metric});
  }
  return out;
}

std::vector<SuiteResult> run_inject_suite(double tol) {
  const MLParams mp(0.5, 1.0, 1.0);
  auto f = [mp](double x) { return ml_series(mp, -x); };
  const std::vector<NamedRoute> routes = {
      {"series", f},
      {"corrupted", [f](double x) { return f(x) + 1e-3 * x; }},
  };
  std::vector<double> xs;
  for (int i = 0; i <= 10; ++i) xs.push_back(0.5 * i);
  const ValidationReport rep =
      cross_validate(routes, xs, tol, "inject (deliberate 1e-3 corruption)");
  const double metric =
      rep.worst_case >= 0 ? rep.cases[rep.worst_case].max_discrepancy : 0.0;
  return {{report_json(rep), rep.pass, rep.suite_name, metric}};
}

int cmd_verify(const Options& o) {
  std::vector<SuiteResult> results;
  const std::string& suite = o.suite;
  if (suite == "cm" || suite == "all") {
    const auto r = run_cm_suite(o.effective_tol(1e-7));
    results.insert(results.end(), r.begin(), r.end());
  }
  if (suite == "routes" || suite == "all") {
    const auto r = run_routes_suite(o.effective_tol(1e-5));
    results.insert(results.end(), r.begin(), r.end());
  }
  if (suite == "laplace" || suite == "all") {
    const auto r = run_laplace_suite(o.effective_tol(1e-6));
    results.insert(results.end(), r.begin(), r.end());
  }
  if (suite == "limit") {
    const auto r = run_limit_suite();
    results.insert(results.end(), r.begin(), r.end());
  }
  if (suite == "inject") {
    const auto r = run_inject_suite(o.effective_tol(1e-5));
    results.insert(results.end(), r.begin(), r.end());
  }
  if (results.empty()) {
    throw DomainError("unknown verify suite '" + suite +
                      "' (expected cm, routes, laplace, limit, inject, or all)");
  }
  bool pass = true;
  for (const SuiteResult& r : results) pass = pass && r.pass;

  const std::string format = o.format.empty() ? "json" : o.format;
  if (format == "csv") {
    std::string out = "suite,metric,pass\n";
    for (const SuiteResult& r : results) {
      out += "\"" + r.label + "\"," + fmt(r.metric, o.full_precision) + "," +
             (r.pass ? "true" : "false") + "\n";
    }
    emit(o, out);
  } else if (format == "text") {
    std::string out;
    for (const SuiteResult& r : results) {
      out += (r.pass ? "PASS " : "FAIL ") + r.label + " (metric " +
             fmt(r.metric, o.full_precision) + ")\n";
    }
    out += (pass ? "PASS" : "FAIL") + std::string(" overall\n");
    emit(o, out);
  } else {
    ordered_json doc;
    ordered_json meta;
    meta["subcommand"] = "verify";
    meta["artifact_version"] = kArtifactVersion;
    meta["suite"] = suite;
    doc["meta"] = meta;
    ordered_json rep;
    rep["pass"] = pass;
    ordered_json suites = ordered_json::array();
    for (const SuiteResult& r : results) suites.push_back(r.doc);
    rep["suites"] = suites;
    doc["report"] = rep;
    emit(o, doc.dump(2) + "\n");
  }
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// limit-demo

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') {
      throw DomainError(std::string("invalid number '") + item + "' in " + flag);
    }
    out.push_back(v);
  }
  if (out.empty()) throw DomainError(std::string(flag) + " must be nonempty");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  for (double v : parse_double_list(text, flag)) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v || i < 1) {
      throw DomainError(std::string(flag) + " entries must be positive integers");
    }
    out.push_back(i);
  }
  return out;
}

int cmd_limit_demo(const Options& o) {
  const std::vector<double> mus = parse_double_list(o.mu_list, "--mu-list");
  const std::vector<int> ns = parse_int_list(o.n_list, "--n-list");
  const PollardParams pp(StableIndex(o.alpha), o.beta, o.gamma);
  const ValidationReport rep =
      limit_convergence_report(pp, o.lambda, o.x, mus, ns);

  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format == "csv" || format == "text") {
    std::string out = "case,limit,reference,discrepancy,pass\n";
    for (const CaseRecord& c : rep.cases) {
      double limit_v = std::numeric_limits<double>::quiet_NaN();
      double ref_v = std::numeric_limits<double>::quiet_NaN();
      for (const auto& [name, v] : c.route_values) {
        if (name == "limit" || name == "error_at_n_max") limit_v = v;
        if (name == "reference" || name == "error_at_n_min") ref_v = v;
      }
      out += "\"" + c.label + "\"," + fmt(limit_v, o.full_precision) + "," +
             fmt(ref_v, o.full_precision) + "," +
             fmt(c.max_discrepancy, o.full_precision) + "," +
             (c.pass ? "true" : "false") + "\n";
    }
    emit(o, out);
  } else {
    ordered_json doc;
    ordered_json meta;
    meta["subcommand"] = "limit-demo";
    meta["artifact_version"] = kArtifactVersion;
    ordered_json params;
    params["alpha"] = o.alpha;
    params["beta"] = o.beta;
    params["gamma"] = o.gamma;
    params["lambda"] = o.lambda;
    params["x"] = o.x;
    meta["parameters"] = params;
    doc["meta"] = meta;
    doc["report"] = report_json(rep);
    emit(o, doc.dump(2) + "\n");
  }
  return 0;  // demonstration: the report carries the pass flags
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{
      "mlcm: Mittag-Leffler functions via series, stable-mixture, and "
      "spectral representations, with complete-monotonicity verification"};
  app.require_subcommand(1);
  Options o;

  const auto add_param_flags = [&o](CLI::App* cmd) {
    cmd->add_option("--alpha", o.alpha, "first parameter (series: >= 0; mixtures: in (0,1))");
    cmd->add_option("--beta", o.beta, "second parameter (> 0)");
    cmd->add_option("--gamma", o.gamma, "third parameter (> 0)");
  };
  const auto add_output_flags = [&o](CLI::App* cmd, const char* formats) {
    cmd->add_option("--format", o.format, std::string("output format: ") + formats);
    cmd->add_option("-o,--output", o.output, "write output to this file instead of stdout");
    cmd->add_flag("--full-precision", o.full_precision,
                  "print 17 significant digits (round-trip exact)");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate E^gamma_{alpha,beta}(x) at one point");
  add_param_flags(eval);
  eval->add_option("--x", o.x, "function argument (mixture methods need x <= 0)")->required();
  eval->add_option("--method", o.method, "series|pollard|spectral|limit|all")
      ->check(CLI::IsMember({"series", "pollard", "spectral", "limit", "all"}));
  eval->add_option("--n", o.n, "limit-route subdivision (method limit)");
  eval->add_option("--mu", o.mu, "limit-route prior shape (method limit)");
  eval->add_option("--tol", o.tol, "agreement tolerance for --method all");
  add_output_flags(eval, "text (default) | csv | json");

  CLI::App* table = app.add_subcommand("table", "evaluate over a uniform argument range");
  add_param_flags(table);
  table->add_option("--x-min", o.x_min, "range start")->required();
  table->add_option("--x-max", o.x_max, "range end")->required();
  table->add_option("--steps", o.steps, "number of points (>= 2)");
  table->add_option("--method", o.method, "series|pollard|spectral|limit|all")
      ->check(CLI::IsMember({"series", "pollard", "spectral", "limit", "all"}));
  table->add_option("--n", o.n, "limit-route subdivision (method limit)");
  table->add_option("--mu", o.mu, "limit-route prior shape (method limit)");
  table->add_option("--tol", o.tol, "agreement tolerance for --method all");
  add_output_flags(table, "csv (default) | json");

  CLI::App* density = app.add_subcommand("density", "tabulate a density");
  density->add_option("--family", o.family, "stable|pollard|spectral|tilted")
      ->check(CLI::IsMember({"stable", "pollard", "spectral", "tilted"}));
  add_param_flags(density);
  density->add_option("--lambda", o.lambda, "rate (family spectral)");
  density->add_option("--theta", o.theta, "tilt exponent (family tilted, > -alpha)");
  density->add_option("--x-min", o.x_min, "range start")->required();
  density->add_option("--x-max", o.x_max, "range end")->required();
  density->add_option("--steps", o.steps, "number of points (>= 2)");
  add_output_flags(density, "csv (default) | json");

  CLI::App* cdf = app.add_subcommand("cdf", "tabulate a distribution function");
  cdf->add_option("--family", o.family, "stable|pollard|tilted")
      ->check(CLI::IsMember({"stable", "pollard", "tilted"}));
  add_param_flags(cdf);
  cdf->add_option("--theta", o.theta, "tilt exponent (family tilted, > -alpha)");
  cdf->add_option("--x-min", o.x_min, "range start")->required();
  cdf->add_option("--x-max", o.x_max, "range end")->required();
  cdf->add_option("--steps", o.steps, "number of points (>= 2)");
  add_output_flags(cdf, "csv (default) | json");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", o.suite, "cm|routes|laplace|limit|inject|all")
      ->check(CLI::IsMember({"cm", "routes", "laplace", "limit", "inject", "all"}));
  verify->add_option("--tol", o.tol,
                     "tolerance override (defaults: cm 1e-7, routes/inject 1e-5, "
                     "laplace 1e-6; env MLCM_DEFAULT_TOL also overrides)");
  add_output_flags(verify, "json (default) | csv | text");

  CLI::App* demo = app.add_subcommand("limit-demo", "small-shape limit convergence table");
  add_param_flags(demo);
  demo->add_option("--lambda", o.lambda, "rate (> 0)");
  demo->add_option("--x", o.x, "argument (> 0)");
  demo->add_option("--mu-list", o.mu_list, "comma-separated prior shapes");
  demo->add_option("--n-list", o.n_list, "comma-separated subdivision counts");
  add_output_flags(demo, "csv (default) | json");

  for (CLI::App* cmd : {eval, table, density, cdf, verify, demo}) {
    if (CLI::Option* fo = cmd->get_option_no_throw("--format")) {
      fo->check(CLI::IsMember({"text", "csv", "json"}));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(o);
    if (table->parsed()) return cmd_table(o);
    if (density->parsed()) return cmd_density(o);
    if (cdf->parsed()) return cmd_cdf(o);
    if (verify->parsed()) return cmd_verify(o);
    if (demo->parsed()) return cmd_limit_demo(o);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace mlcm::cli
