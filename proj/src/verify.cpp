#include "mlcm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mlcm/errors.hpp"
#include "mlcm/gamma.hpp"
#include "mlcm/mittag_leffler.hpp"

namespace mlcm {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void finalize_report(ValidationReport& rep) {
  rep.pass = true;
  rep.worst_case = -1;
  double worst = -1.0;
  for (std::size_t i = 0; i < rep.cases.size(); ++i) {
    const CaseRecord& c = rep.cases[i];
    if (!c.pass) rep.pass = false;
    const double d = std::isfinite(c.max_discrepancy)
                         ? c.max_discrepancy
                         : std::numeric_limits<double>::max();
    if (d > worst) {
      worst = d;
      rep.worst_case = static_cast<long>(i);
    }
  }
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 2) throw DomainError("uniform_grid: count must be at least 2");
  if (!(hi > lo)) throw DomainError("uniform_grid: hi must exceed lo");
  std::vector<double> g(count);
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = lo + i * step;
  g.back() = hi;
  return g;
}

CMCertificate check_complete_monotonicity(const std::function<double(double)>& f,
                                          const std::vector<double>& grid,
                                          int k_max, double tol) {
  if (k_max < 0) throw DomainError("check_complete_monotonicity: k_max must be >= 0");
  if (!(tol >= 0.0)) throw DomainError("check_complete_monotonicity: tol must be >= 0");
  const long n = static_cast<long>(grid.size());
  if (n <= k_max) {
    throw DomainError("check_complete_monotonicity: grid length must exceed k_max");
  }
  const double h = grid[1] - grid[0];
  if (!(h > 0.0)) {
    throw DomainError("check_complete_monotonicity: grid must be strictly increasing");
  }
  for (long i = 1; i + 1 < n; ++i) {
    const double hi = grid[i + 1] - grid[i];
    if (std::abs(hi - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw DomainError("check_complete_monotonicity: grid must be uniform");
    }
  }

  CMCertificate cert;
  cert.grid = grid;
  cert.max_order = k_max;
  cert.tolerance = tol;

  std::vector<double> d(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v;
    try {
      v = f(grid[i]);
    } catch (const std::exception& e) {
      throw IntegrandError(std::string("check_complete_monotonicity: evaluation "
                                       "failed at x = ") +
                               fmt_double(grid[i]) + ": " + e.what(),
                           grid[i]);
    }
    if (!std::isfinite(v)) {
      throw IntegrandError(
          std::string("check_complete_monotonicity: non-finite value at x = ") +
              fmt_double(grid[i]),
          grid[i]);
    }
    d[i] = v;
  }

  cert.min_signed_by_order.assign(k_max + 1, std::numeric_limits<double>::infinity());
  for (int k = 0; k <= k_max; ++k) {
    const double parity = (k % 2 == 0) ? 1.0 : -1.0;
    const long len = n - k;
    double lo = std::numeric_limits<double>::infinity();
    for (long i = 0; i < len; ++i) {
      const double signed_diff = parity * d[i];
      lo = std::min(lo, signed_diff);
      if (signed_diff < -tol) {
        cert.violations.push_back({k, grid[i], signed_diff});
      }
    }
    cert.min_signed_by_order[k] = lo;
    for (long i = 0; i + 1 < len; ++i) d[i] = d[i + 1] - d[i];
  }
  cert.pass = cert.violations.empty();
  return cert;
}

ValidationReport cross_validate(const std::vector<NamedRoute>& routes,
                                const std::vector<double>& grid, double tol,
                                const std::string& suite_name) {
  if (routes.size() < 2) {
    throw DomainError("cross_validate: at least two routes are required");
  }
  ValidationReport rep;
  rep.suite_name = suite_name;
  rep.tolerance = tol;
  for (double xv : grid) {
    CaseRecord c;
    c.label = "x=" + fmt_double(xv);
    bool all_ok = true;
    for (const auto& [name, route] : routes) {
      double v = std::numeric_limits<double>::quiet_NaN();
      try {
        v = route(xv);
        if (!std::isfinite(v)) throw Error("route returned a non-finite value");
      } catch (const std::exception& e) {
        all_ok = false;
        if (!c.note.empty()) c.note += "; ";
        c.note += name + " failed: " + e.what();
      }
      c.route_values.emplace_back(name, v);
    }
    if (all_ok) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      for (const auto& [name, v] : c.route_values) {
        (void)name;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      c.max_discrepancy = hi - lo;
      c.pass = c.max_discrepancy <= tol;
    } else {
      c.max_discrepancy = std::numeric_limits<double>::infinity();
      c.pass = false;
    }
    rep.cases.push_back(std::move(c));
  }
  finalize_report(rep);
  return rep;
}

ValidationReport check_laplace_identity(
    const std::function<double(double)>& f,
    const std::function<double(double)>& closed_form,
    const std::vector<double>& s_grid, double tol,
    const std::string& suite_name) {
  ValidationReport rep;
  rep.suite_name = suite_name;
  rep.tolerance = tol;
  rep.reference_truth = "closed_form";
  for (double s : s_grid) {
    if (!(s > 0.0)) throw DomainError("check_laplace_identity: s must be positive");
    CaseRecord c;
    c.label = "s=" + fmt_double(s);
    try {
      auto integrand = [&f, s](double x) -> double {
        const double e = s * x;
        if (e > 745.0) return 0.0;
        const double fv = f(x);
        return fv == 0.0 ? 0.0 : std::exp(-e) * fv;
      };
      const IntegralResult ir = integrate_semi_infinite(integrand, QuadratureConfig{});
      if (!ir.converged) {
        throw ConvergenceError("transform quadrature did not converge");
      }
      const double closed = closed_form(s);
      c.route_values = {{"numeric_transform", ir.value}, {"closed_form", closed}};
      c.max_discrepancy =
          std::abs(ir.value - closed) / std::max(std::abs(closed), 1e-300);
      c.pass = c.max_discrepancy <= tol;
    } catch (const std::exception& e) {
      c.note = e.what();
      c.max_discrepancy = std::numeric_limits<double>::infinity();
      c.pass = false;
    }
    rep.cases.push_back(std::move(c));
  }
  finalize_report(rep);
  return rep;
}

CMCertificate bernstein_composition_check(const PollardParams& params,
                                          double lambda, StableIndex a2,
                                          const std::vector<double>& grid,
                                          int k_max, double tol) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("bernstein_composition_check: lambda must be positive and finite");
  }
  const double a2v = a2.alpha();
  auto f = [&params, lambda, a2v](double x) {
    return ml_via_pollard(params, lambda * std::pow(x, a2v), 1.0);
  };
  return check_complete_monotonicity(f, grid, k_max, tol);
}

double ml_reference(const PollardParams& p, double z, std::string* route_used) {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw DomainError("ml_reference: z must be nonnegative and finite");
  }
  const MLParams mp(p.alpha_value(), p.beta, p.gamma);
  if (z <= kMLSeriesXMax && ml_series_cancellation_log(mp, -z) <= 43.0) {
    if (route_used) *route_used = "series";
    return ml_series(mp, -z);
  }
  if (route_used) *route_used = "pollard";
  return ml_via_pollard(p, z, 1.0);
}

ValidationReport limit_convergence_report(const PollardParams& params,
                                          double lambda, double x,
                                          const std::vector<double>& mu_list,
                                          const std::vector<int>& n_list) {
  if (mu_list.empty() || n_list.empty()) {
    throw DomainError("limit_convergence_report: mu_list and n_list must be nonempty");
  }
  ValidationReport rep;
  rep.suite_name = "limit_convergence";
  rep.tolerance = 1e-4;

  std::string route;
  const double z = lambda * std::pow(x, params.alpha_value());
  const double ref = ml_reference(params, z, &route);
  rep.reference_truth = route;

  const int n_min = *std::min_element(n_list.begin(), n_list.end());
  const int n_max = *std::max_element(n_list.begin(), n_list.end());

  struct MuSummary {
    double err_at_n_min = std::numeric_limits<double>::quiet_NaN();
    double err_at_n_max = std::numeric_limits<double>::quiet_NaN();
    double value_at_n_max = std::numeric_limits<double>::quiet_NaN();
    bool complete = true;
  };
  std::vector<MuSummary> summary(mu_list.size());

  for (std::size_t mi = 0; mi < mu_list.size(); ++mi) {
    const double mu = mu_list[mi];
    for (int n : n_list) {
      CaseRecord c;
      c.label = "mu=" + fmt_double(mu) + ",n=" + fmt_double(n);
      try {
        const double v = ml_via_limit(params, lambda, x, n, mu);
        const double err = std::abs(v - ref);
        c.route_values = {{"limit", v}, {"reference", ref}};
        c.max_discrepancy = err;
        c.pass = true;  // informational row; assertions follow below
        if (n == n_min) summary[mi].err_at_n_min = err;
        if (n == n_max) {
          summary[mi].err_at_n_max = err;
          summary[mi].value_at_n_max = v;
        }
      } catch (const std::exception& e) {
        c.note = e.what();
        c.max_discrepancy = std::numeric_limits<double>::infinity();
        c.pass = false;
        summary[mi].complete = false;
      }
      rep.cases.push_back(std::move(c));
    }
  }

  for (std::size_t mi = 0; mi < mu_list.size(); ++mi) {
    CaseRecord c;
    c.label = "shrinkage mu=" + fmt_double(mu_list[mi]) + " from n=" +
              fmt_double(n_min) + " to n=" + fmt_double(n_max);
    const MuSummary& s = summary[mi];
    c.route_values = {{"error_at_n_min", s.err_at_n_min},
                      {"error_at_n_max", s.err_at_n_max}};
    c.max_discrepancy = s.err_at_n_max;
    c.pass = s.complete && s.err_at_n_max < s.err_at_n_min;
    if (!c.pass) c.note = "error did not shrink from the smallest to the largest n";
    rep.cases.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < mu_list.size(); ++i) {
    for (std::size_t j = i + 1; j < mu_list.size(); ++j) {
      CaseRecord c;
      c.label = "mu-agreement mu=" + fmt_double(mu_list[i]) + " vs mu=" +
                fmt_double(mu_list[j]) + " at n=" + fmt_double(n_max);
      const double vi = summary[i].value_at_n_max;
      const double vj = summary[j].value_at_n_max;
      c.route_values = {{"mu_" + fmt_double(mu_list[i]), vi},
                        {"mu_" + fmt_double(mu_list[j]), vj}};
      c.max_discrepancy = std::abs(vi - vj);
      c.pass = summary[i].complete && summary[j].complete &&
               c.max_discrepancy <= 1e-4;
      if (!c.pass) c.note = "mu columns disagree beyond 1e-4 at the largest n";
      rep.cases.push_back(std::move(c));
    }
  }
  finalize_report(rep);
  return rep;
}

}  // namespace mlcm
