#pragma once

// Falsification harness: complete-monotonicity certificates via alternating
// forward differences, cross-validation of independent evaluation routes,
// Laplace-identity checks, Bernstein-composition certificates, and the
// small-shape limit convergence report.  Reports are deterministic: the same
// inputs produce bitwise-identical summary values.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mlcm/pollard.hpp"

namespace mlcm {

struct CaseRecord {
  std::string label;
  std::vector<std::pair<std::string, double>> route_values;
  double max_discrepancy = 0.0;
  bool pass = true;
  std::string note;  // populated when a route failed or a remark applies
};

struct ValidationReport {
  std::string suite_name;
  double tolerance = 0.0;
  // Which route supplied reference values ("series" where reliable, else
  // "pollard"); empty when the suite has no single reference.
  std::string reference_truth;
  std::vector<CaseRecord> cases;
  long worst_case = -1;  // index of the largest-discrepancy case, -1 if none
  bool pass = true;      // every asserted case within its tolerance
};

struct CMViolation {
  int order;     // difference order k with (-1)^k D^k f < -tol
  double x;      // left abscissa of the offending difference
  double value;  // the signed difference (-1)^k D^k f
};

struct CMCertificate {
  std::vector<double> grid;
  int max_order = 8;
  double tolerance = 1e-7;
  // min over the grid of (-1)^k D^k f for k = 0..max_order: the sign summary
  // of the difference tableau (all entries >= -tol iff pass).
  std::vector<double> min_signed_by_order;
  std::vector<CMViolation> violations;
  bool pass = true;
};

// Finite-difference surrogate of complete monotonicity: on a uniform grid,
// every alternating forward difference (-1)^k D^k f must stay above -tol for
// k = 0..k_max.  Differences of noisy values amplify like h^{-k}, so tol
// absorbs quadrature noise.  Preconditions: grid uniform, strictly
// increasing, length > k_max.  An evaluation failure (or non-finite value)
// raises IntegrandError naming the abscissa.
CMCertificate check_complete_monotonicity(const std::function<double(double)>& f,
                                          const std::vector<double>& grid,
                                          int k_max = 8, double tol = 1e-7);

using NamedRoute = std::pair<std::string, std::function<double(double)>>;

// Pairwise agreement of >= 2 independent routes on a grid; a route failure
// fails its case (with the reason in the note) and the suite continues.
ValidationReport cross_validate(const std::vector<NamedRoute>& routes,
                                const std::vector<double>& grid, double tol,
                                const std::string& suite_name = "cross_validate");

// Numeric Laplace transform of f against the closed form, relative
// discrepancy per s.
ValidationReport check_laplace_identity(
    const std::function<double(double)>& f,
    const std::function<double(double)>& closed_form,
    const std::vector<double>& s_grid, double tol,
    const std::string& suite_name = "laplace_identity");

// Complete-monotonicity certificate for x -> E^g_{a,b}(-lambda x^{a2}), the
// Bernstein-composition claim, via the mixture route.
CMCertificate bernstein_composition_check(const PollardParams& params,
                                          double lambda, StableIndex a2,
                                          const std::vector<double>& grid,
                                          int k_max = 8, double tol = 1e-7);

// Table of the (n/mu)-scaled marginal against the reference value, one cell
// per (mu, n), plus the two built-in assertions: mu-columns agree within
// 1e-4 at the largest n, and each mu's error shrinks from the smallest to
// the largest n.  Cell rows are informational; pass reflects the assertions.
ValidationReport limit_convergence_report(const PollardParams& params,
                                          double lambda, double x,
                                          const std::vector<double>& mu_list,
                                          const std::vector<int>& n_list);

// Reference evaluation of E^g_{a,b}(-z) for z >= 0: the series where its
// cancellation control holds, the mixture route beyond; reports which.
double ml_reference(const PollardParams& p, double z,
                    std::string* route_used = nullptr);

// count equally spaced points from lo to hi inclusive (count >= 2).
std::vector<double> uniform_grid(double lo, double hi, int count);

}  // namespace mlcm
