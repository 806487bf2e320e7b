#pragma once

#include <map>
#include <string>
#include <vector>

#include "asplund/convolution.hpp"
#include "asplund/grid.hpp"

namespace asplund {

enum class Verdict { holds, holds_within_tol, violated };

std::string verdict_str(Verdict v);

// Outcome of one inequality check.  Every theorem check compares a certified
// lower bound of its left-hand side (grid-restricted supremum, Riemann sum)
// against an O(h)-accurate right-hand side, so negative margins within tol
// are attributed to discretization.
struct Report {
  std::string check_name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0; // lhs - rhs
  double tol = 0.0;
  Verdict verdict = Verdict::holds;
  std::map<std::string, double> hypothesis_diagnostics;
};

Report make_report(std::string name, double lhs, double rhs, double tol,
                   std::map<std::string, double> diagnostics = {});

enum class Hypothesis {
  common_projection,
  equal_projection_integral,
  equal_max_section,
  equal_sup_1d
};

std::string hypothesis_str(Hypothesis h);
Hypothesis parse_hypothesis(const std::string& text);

// Tolerance budget for integral comparisons between functions sampled at
// step h.  Indicator pairs on aligned grids are exact up to rounding and get
// 1e-9 * max integral; otherwise the budget is
//    C * h * (perimeter scale + Lipschitz scale)
// with C = 4 fixed: perimeter scale is sup(f) times the support boundary
// measure (boundary cells can be miscounted by one layer), Lipschitz scale is
// the largest value-weighted log-slope times the support volume (grid
// decompositions miss continuum optima by at most one cell).  Linear in h.
double tol_policy(double h, const GridFn& f, const GridFn& g);

// The C*h branch of tol_policy regardless of indicator detection; used where
// quantities at different lattice refinements are compared (lambda scans).
double tol_policy_general(double h, const GridFn& f, const GridFn& g);

// Value-scale tolerance for samplewise comparisons of the two given
// functions: C * h * (max value-weighted log-slope of each side).
double tol_pointwise(double h, const GridFn& lhs, const GridFn& rhs);

// Prekopa-Leindler check: integral of the 0-sup-convolution against the
// geometric mean of the integrals.  Throws on infinite integrals.
Report check_pl(const GridFn& f, const GridFn& g, const Lambda& lambda);

// Dimensional (Borell-Brascamp-Lieb) check: integral of the p-sup-convolution
// against M_{p/(np+1)} of the integrals; requires p >= -1/n.
Report check_bbl(const GridFn& f, const GridFn& g, const Lambda& lambda, PParam p);

// Linear refinement check: under the named hypothesis the right-hand side is
// the arithmetic mean (1-lambda) Int f + lambda Int g.  The hypothesis
// residual is recorded in the diagnostics and the check throws when it
// exceeds its own tolerance.  Diagnostics also carry the p-mean right-hand
// side (when p >= -1/n) so the strengthening over the plain check is visible.
Report check_linear_refinement(const GridFn& f, const GridFn& g, const Lambda& lambda, PParam p,
                               Hypothesis hypothesis, int axis);

// Pointwise symmetrization inequalities (projection/Steiner/Schwarz
// interactions with the convolution) plus the Steiner conservation laws.
// Margins of samplewise inequalities are minima of left - right over the
// common refined lattice.  Reports applicable to the given p only.
std::vector<Report> check_symmetrization_props(const GridFn& f, const GridFn& g,
                                               const Lambda& lambda, PParam p, int axis);

// Integral of the p-sup-convolution as a function of lambda on the grid
// j/(K+1), j = 1..K; endpoint values are Int f and Int g directly.  All scan
// points are evaluated on the common (K+1)-fold refined lattice so that the
// discretization bias is uniform across j (with per-j reduced fractions the
// lattice would change with j and the second differences would pick up
// spurious O(h) wiggle).
struct ScanReport {
  std::vector<double> lambda_grid;
  std::vector<double> values;
  std::vector<double> chord_margins;
  std::vector<double> midpoint_concavity_margins;
  double value_at_zero = 0.0;
  double value_at_one = 0.0;
};

ScanReport lambda_scan(const GridFn& f, const GridFn& g, PParam p, int scan_points);

// Minimum of lhs - rhs over the nodes of rhs's grid; lhs is 0 outside its
// box.  Grids must share steps and be lattice-compatible.
double samplewise_min_margin(const GridFn& lhs, const GridFn& rhs);

// Largest |a - b| over common nodes of two functions on the same grid.
double max_abs_difference(const GridFn& a, const GridFn& b);

// Serialization: stable field names / column order
// (check_name, lhs, rhs, margin, tol, verdict).
std::string report_csv_header();
std::string report_csv_row(const Report& r);
std::string report_json(const Report& r);   // one JSON object
std::string scan_json(const ScanReport& r); // one JSON object
std::string scan_csv_header();
std::string scan_csv_rows(const std::string& name, const ScanReport& r);

} // namespace asplund
