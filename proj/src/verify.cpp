#include "asplund/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "asplund/grid_io.hpp"
#include "asplund/transform.hpp"

#include "json.hpp"

namespace asplund {

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::holds_within_tol: return "holds_within_tol";
    case Verdict::violated: return "violated";
  }
  return "?";
}

Report make_report(std::string name, double lhs, double rhs, double tol,
                   std::map<std::string, double> diagnostics) {
  Report r;
  r.check_name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = (lhs == rhs) ? 0.0 : lhs - rhs; // inf - inf counts as exact equality
  r.tol = tol;
  r.verdict = r.margin >= 0.0          ? Verdict::holds
              : r.margin >= -r.tol     ? Verdict::holds_within_tol
                                       : Verdict::violated;
  r.hypothesis_diagnostics = std::move(diagnostics);
  return r;
}

std::string hypothesis_str(Hypothesis h) {
  switch (h) {
    case Hypothesis::common_projection: return "common_projection";
    case Hypothesis::equal_projection_integral: return "equal_projection_integral";
    case Hypothesis::equal_max_section: return "equal_max_section";
    case Hypothesis::equal_sup_1d: return "equal_sup_1d";
  }
  return "?";
}

Hypothesis parse_hypothesis(const std::string& text) {
  if (text == "common_projection") return Hypothesis::common_projection;
  if (text == "equal_projection_integral") return Hypothesis::equal_projection_integral;
  if (text == "equal_max_section") return Hypothesis::equal_max_section;
  if (text == "equal_sup_1d") return Hypothesis::equal_sup_1d;
  throw std::invalid_argument("unknown hypothesis \"" + text + "\"");
}

namespace {

constexpr double kTolC = 4.0;

bool is_indicator(const GridFn& f) {
  for (double v : f.values())
    if (v != 0.0 && v != 1.0) return false;
  return true;
}

double sup_finite(const GridFn& f) {
  double m = 0.0;
  for (double v : f.values())
    if (v != kInf && v > m) m = v;
  return m;
}

// Support boundary measure: faces between support and non-support cells plus
// support faces on the box boundary, times the face measure h^(n-1).
double boundary_measure(const GridFn& f) {
  const Grid& g = f.grid();
  const int n = g.dim();
  if (n == 0) return 1.0;
  double faces = 0.0;
  for (int axis = 0; axis < n; ++axis) {
    const Index lines = line_count(g, axis);
    double face_measure = 1.0;
    for (int i = 0; i < n; ++i)
      if (i != axis) face_measure *= g.step(i);
    Index count = 0;
    for (Index L = 0; L < lines; ++L) {
      const LineRef lr = line_ref(g, axis, L);
      bool prev = false;
      for (Index j = 0; j < lr.len; ++j) {
        const bool cur = f[lr.base + j * lr.stride] > 0.0;
        if (cur != prev) ++count;
        prev = cur;
      }
      if (prev) ++count; // support touches the box boundary
    }
    faces += static_cast<double>(count) * face_measure;
  }
  return faces;
}

// Largest value-weighted log-slope over grid edges with both endpoints
// positive finite: min(va, vb) * |log va - log vb| / h, an estimate of the
// gradient magnitude scale of f.
double edge_lip(const GridFn& f) {
  const Grid& g = f.grid();
  double best = 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    const Index lines = line_count(g, axis);
    const double h = g.step(axis);
    for (Index L = 0; L < lines; ++L) {
      const LineRef lr = line_ref(g, axis, L);
      for (Index j = 0; j + 1 < lr.len; ++j) {
        const double a = f[lr.base + j * lr.stride];
        const double b = f[lr.base + (j + 1) * lr.stride];
        if (a <= 0.0 || b <= 0.0 || a == kInf || b == kInf) continue;
        const double v = std::min(a, b) * std::abs(std::log(a) - std::log(b)) / h;
        if (v > best) best = v;
      }
    }
  }
  return best;
}

double support_volume(const GridFn& f) {
  Index c = 0;
  for (double v : f.values()) c += (v > 0.0);
  return static_cast<double>(c) * f.grid().cell_volume();
}

double max_step(const GridFn& f) {
  double h = 0.0;
  for (int i = 0; i < f.grid().dim(); ++i) h = std::max(h, f.grid().step(i));
  return h;
}

void require_finite_integral(double v, const char* what) {
  if (v == kInf) throw std::invalid_argument(std::string(what) + ": infinite integral");
}

} // namespace

double tol_policy_general(double h, const GridFn& f, const GridFn& g) {
  if (sup_value(f) == 0.0 && sup_value(g) == 0.0) return 0.0;
  const double peri = sup_finite(f) * boundary_measure(f) + sup_finite(g) * boundary_measure(g);
  const double lip = edge_lip(f) * support_volume(f) + edge_lip(g) * support_volume(g);
  return kTolC * h * (peri + lip);
}

double tol_policy(double h, const GridFn& f, const GridFn& g) {
  if (sup_value(f) == 0.0 && sup_value(g) == 0.0) return 0.0;
  if (is_indicator(f) && is_indicator(g)) {
    const double mi = std::max(integrate(f), integrate(g));
    return 1e-9 * mi;
  }
  return tol_policy_general(h, f, g);
}

double tol_pointwise(double h, const GridFn& lhs, const GridFn& rhs) {
  return kTolC * h * (edge_lip(lhs) + edge_lip(rhs));
}

Report check_pl(const GridFn& f, const GridFn& g, const Lambda& lambda) {
  const double fi = integrate(f), gi = integrate(g);
  require_finite_integral(fi, "check_pl");
  require_finite_integral(gi, "check_pl");
  const GridFn conv = sup_convolution(f, g, lambda, PParam::zero());
  const double lhs = integrate(conv);
  const double rhs = mp_mean(fi, gi, lambda, PParam::zero());
  return make_report("pl", lhs, rhs, tol_policy(max_step(f), f, g),
                     {{"integral_f", fi}, {"integral_g", gi}});
}

Report check_bbl(const GridFn& f, const GridFn& g, const Lambda& lambda, PParam p) {
  const int n = f.grid().dim();
  const PParam q = dual_exponent(p, n); // validates p >= -1/n
  const double fi = integrate(f), gi = integrate(g);
  require_finite_integral(fi, "check_bbl");
  require_finite_integral(gi, "check_bbl");
  const GridFn conv = sup_convolution(f, g, lambda, p);
  const double lhs = integrate(conv);
  const double rhs = mp_mean(fi, gi, lambda, q);
  return make_report("bbl", lhs, rhs, tol_policy(max_step(f), f, g),
                     {{"integral_f", fi},
                      {"integral_g", gi},
                      {"dual_exponent", q.is_minus_inf() ? -kInf : q.raw()}});
}

Report check_linear_refinement(const GridFn& f, const GridFn& g, const Lambda& lambda, PParam p,
                               Hypothesis hypothesis, int axis) {
  const int n = f.grid().dim();
  std::map<std::string, double> diag;
  diag["measurability_residual"] = 0.0; // no grid analogue; vacuously satisfied

  switch (hypothesis) {
    case Hypothesis::common_projection: {
      const GridFn pf = project(f, axis), pg = project(g, axis);
      const double resid = max_abs_difference(pf, pg);
      const double hyp_tol = 1e-12 * std::max({sup_value(f), sup_value(g), 1.0});
      diag["projection_equality_max_dev"] = resid;
      if (resid > hyp_tol)
        throw std::invalid_argument("check_linear_refinement: projections differ by " +
                                    std::to_string(resid));
      break;
    }
    case Hypothesis::equal_projection_integral: {
      const double a = integrate(project(f, axis)), b = integrate(project(g, axis));
      require_finite_integral(a, "check_linear_refinement");
      require_finite_integral(b, "check_linear_refinement");
      if (!(a > 0) || !(b > 0))
        throw std::invalid_argument("check_linear_refinement: zero projection integral");
      const double resid = std::abs(a - b) / std::max(a, b);
      diag["projection_integral_rel_dev"] = resid;
      if (resid > 1e-9)
        throw std::invalid_argument("check_linear_refinement: projection integrals differ");
      if (!p.is_plus_inf() && (p.is_minus_inf() || p.raw() < -1.0 / n))
        throw std::invalid_argument("check_linear_refinement: p below -1/n for this hypothesis");
      break;
    }
    case Hypothesis::equal_max_section: {
      double mf = 0.0, mg = 0.0;
      for (Index j = 0; j < f.grid().nodes(axis); ++j)
        mf = std::max(mf, slice_integral(f, axis, f.grid().coord(axis, j)));
      for (Index j = 0; j < g.grid().nodes(axis); ++j)
        mg = std::max(mg, slice_integral(g, axis, g.grid().coord(axis, j)));
      require_finite_integral(mf, "check_linear_refinement");
      require_finite_integral(mg, "check_linear_refinement");
      if (!(mf > 0) || !(mg > 0))
        throw std::invalid_argument("check_linear_refinement: zero maximal section");
      const double resid = std::abs(mf - mg) / std::max(mf, mg);
      diag["max_section_rel_dev"] = resid;
      if (resid > 1e-9)
        throw std::invalid_argument("check_linear_refinement: maximal sections differ");
      if (!p.is_plus_inf() && (p.is_minus_inf() || p.raw() < -1.0 / n))
        throw std::invalid_argument("check_linear_refinement: p below -1/n for this hypothesis");
      break;
    }
    case Hypothesis::equal_sup_1d: {
      if (n != 1)
        throw std::invalid_argument("check_linear_refinement: equal_sup_1d needs n = 1");
      const double sf = sup_value(f), sg = sup_value(g);
      if (!(sf > 0) || !(sg > 0) || sf == kInf || sg == kInf)
        throw std::invalid_argument("check_linear_refinement: suprema must be positive finite");
      const double resid = std::abs(sf - sg) / std::max(sf, sg);
      diag["sup_rel_dev"] = resid;
      if (resid > 1e-9)
        throw std::invalid_argument("check_linear_refinement: suprema differ");
      break;
    }
  }

  const double fi = integrate(f), gi = integrate(g);
  require_finite_integral(fi, "check_linear_refinement");
  require_finite_integral(gi, "check_linear_refinement");
  const GridFn conv = sup_convolution(f, g, lambda, p);
  const double lhs = integrate(conv);
  const double rhs = lambda.complement() * fi + lambda.value() * gi;
  diag["integral_f"] = fi;
  diag["integral_g"] = gi;
  // The p-mean right-hand side the linear one strengthens (when defined).
  if (p.is_plus_inf() || (!p.is_minus_inf() && p.raw() >= -1.0 / n))
    diag["rhs_pmean"] = mp_mean(fi, gi, lambda, dual_exponent(p, n));
  return make_report("refinement." + hypothesis_str(hypothesis), lhs, rhs,
                     tol_policy(max_step(f), f, g), std::move(diag));
}

double max_abs_difference(const GridFn& a, const GridFn& b) {
  if (a.grid() != b.grid())
    throw std::invalid_argument("max_abs_difference: grids differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    const double x = a.values()[i], y = b.values()[i];
    if (x == y) continue; // covers inf == inf
    const double d = std::abs(x - y);
    m = std::max(m, d);
  }
  return m;
}

namespace {

// Per-axis node offset of grid `inner` relative to grid `outer` (same steps).
std::array<Index, 2> node_offsets(const Grid& outer, const Grid& inner) {
  if (outer.dim() != inner.dim())
    throw std::invalid_argument("samplewise comparison: dimension mismatch");
  std::array<Index, 2> off{0, 0};
  for (int i = 0; i < outer.dim(); ++i) {
    const double h = outer.step(i);
    if (std::abs(h - inner.step(i)) > 1e-12 * h)
      throw std::invalid_argument("samplewise comparison: steps differ");
    const double rel = (outer.lo(i) - inner.lo(i)) / h;
    const double rounded = std::round(rel);
    if (std::abs(rel - rounded) > 1e-6)
      throw std::invalid_argument("samplewise comparison: grids are not lattice-aligned");
    off[static_cast<std::size_t>(i)] = static_cast<Index>(rounded);
  }
  return off;
}

} // namespace

double samplewise_min_margin(const GridFn& lhs, const GridFn& rhs) {
  const Grid& gr = rhs.grid();
  const Grid& gl = lhs.grid();
  const auto off = node_offsets(gr, gl);
  const int n = gr.dim();
  double margin = kInf;
  Index idx[2] = {0, 0};
  for (Index lin = 0; lin < gr.node_total(); ++lin) {
    gr.unlinear(lin, idx);
    double lv = 0.0;
    bool in = true;
    Index lidx[2] = {0, 0};
    for (int i = 0; i < n; ++i) {
      lidx[i] = idx[i] + off[static_cast<std::size_t>(i)];
      in = in && lidx[i] >= 0 && lidx[i] <= gl.cells(i);
    }
    if (in) lv = lhs[gl.linear(lidx)];
    const double rv = rhs[lin];
    if (lv == rv) continue; // equal, including inf == inf
    margin = std::min(margin, lv - rv);
  }
  return margin == kInf ? 0.0 : margin;
}

std::vector<Report> check_symmetrization_props(const GridFn& f, const GridFn& g,
                                               const Lambda& lambda, PParam p, int axis) {
  std::vector<Report> out;
  const double h = max_step(f);
  const GridFn fbar = truncate_infinite(f);
  const GridFn gbar = truncate_infinite(g);

  // Steiner conservation laws (exact by construction up to fp reordering).
  const GridFn sf = steiner_fn(fbar, axis);
  const GridFn sg = steiner_fn(gbar, axis);
  {
    const double a = integrate(sf), b = integrate(fbar);
    out.push_back(make_report("prop21.integral_f", a, b, 1e-12 * std::max(b, 1e-300)));
    const double c = integrate(sg), d = integrate(gbar);
    out.push_back(make_report("prop21.integral_g", c, d, 1e-12 * std::max(d, 1e-300)));
  }
  {
    const double rf = max_abs_difference(project(sf, axis), project(fbar, axis));
    out.push_back(make_report("prop21.projection_invariance_f", -rf, 0.0, 0.0));
    const double rg = max_abs_difference(project(sg, axis), project(gbar, axis));
    out.push_back(make_report("prop21.projection_invariance_g", -rg, 0.0, 0.0));
  }
  {
    const double rf = max_abs_difference(slice(sf, axis, 0.0), project(sf, axis));
    out.push_back(make_report("prop21.central_section_f", -rf, 0.0, 0.0));
  }

  const bool p_nonpos = p.is_minus_inf() || (p.is_finite() && p.raw() <= 0.0);

  // Projection super-distributivity (p = 0 or p = -inf).
  if (p.is_minus_inf() || p.is_zero_like()) {
    const GridFn conv = sup_convolution(f, g, lambda, p);
    const GridFn lhs = project(conv, axis);
    const GridFn rhs = sup_convolution(project(f, axis), project(g, axis), lambda, p);
    const double margin = samplewise_min_margin(lhs, rhs);
    out.push_back(make_report("prop31.projection_supconv", margin, 0.0,
                              tol_pointwise(h, lhs, rhs)));
  }

  // Steiner symmetral of the convolution dominates the convolution of the
  // Steiner symmetrals (p <= 0, truncated inputs).
  if (p_nonpos) {
    const GridFn conv = sup_convolution(f, g, lambda, p);
    const GridFn lhs = steiner_fn(conv, axis);
    const GridFn rhs = sup_convolution(sf, sg, lambda, p);
    const double margin = samplewise_min_margin(lhs, rhs);
    out.push_back(
        make_report("prop33.steiner_supconv", margin, 0.0, tol_pointwise(h, lhs, rhs)));
  }

  // Schwarz symmetral of the convolution dominates the q-convolution of the
  // Schwarz symmetrals, q = p/(np+1) (p = 0 or -1/n <= p < 0).
  const int n = f.grid().dim();
  if (p.is_zero_like() || (p.is_finite() && p.raw() < 0.0 && p.raw() >= -1.0 / n)) {
    const PParam q = dual_exponent(p, n);
    const GridFn conv = sup_convolution(f, g, lambda, p);
    const GridFn lhs = schwarz_fn(conv, axis);
    const GridFn rhs = sup_convolution(schwarz_fn(fbar, axis), schwarz_fn(gbar, axis), lambda, q);
    const double margin = samplewise_min_margin(lhs, rhs);
    out.push_back(
        make_report("prop34.schwarz_supconv", margin, 0.0, tol_pointwise(h, lhs, rhs)));
  }

  // Set inclusion for indicator inputs: the Minkowski combination of the
  // Steiner symmetrals sits inside the Steiner symmetral of the Minkowski
  // combination.
  if (is_indicator(f) && is_indicator(g)) {
    const GridSet A = support(f), B = support(g);
    const GridSet lhs = minkowski_combine(steiner_set(A, axis), steiner_set(B, axis), lambda);
    const GridSet rhs = steiner_set(minkowski_combine(A, B, lambda), axis);
    const auto off = node_offsets(lhs.grid(), rhs.grid());
    Index missing = 0;
    Index idx[2] = {0, 0};
    for (Index lin = 0; lin < lhs.grid().node_total(); ++lin) {
      if (!lhs.contains(lin)) continue;
      lhs.grid().unlinear(lin, idx);
      Index ridx[2] = {0, 0};
      bool in = true;
      for (int i = 0; i < lhs.grid().dim(); ++i) {
        ridx[i] = idx[i] + off[static_cast<std::size_t>(i)];
        in = in && ridx[i] >= 0 && ridx[i] <= rhs.grid().cells(i);
      }
      if (!in || !rhs.contains(rhs.grid().linear(ridx))) ++missing;
    }
    const double vol = static_cast<double>(missing) * lhs.grid().cell_volume();
    out.push_back(make_report("prop22.minkowski_steiner_subset", -vol, 0.0, 0.0,
                              {{"missing_nodes", static_cast<double>(missing)}}));
  }

  return out;
}

ScanReport lambda_scan(const GridFn& f, const GridFn& g, PParam p, int scan_points) {
  if (scan_points < 3) throw std::invalid_argument("lambda_scan: need at least 3 points");
  const Index m = scan_points + 1;
  ScanReport rep;
  rep.value_at_zero = integrate(f);
  rep.value_at_one = integrate(g);
  require_finite_integral(rep.value_at_zero, "lambda_scan");
  require_finite_integral(rep.value_at_one, "lambda_scan");
  for (Index j = 1; j <= scan_points; ++j) {
    const GridFn conv = detail::sup_convolution_raw(f, g, j, m, p);
    rep.lambda_grid.push_back(static_cast<double>(j) / static_cast<double>(m));
    rep.values.push_back(integrate(conv));
  }
  for (Index j = 1; j <= scan_points; ++j) {
    const double lam = rep.lambda_grid[static_cast<std::size_t>(j - 1)];
    const double v = rep.values[static_cast<std::size_t>(j - 1)];
    rep.chord_margins.push_back(v - ((1.0 - lam) * rep.value_at_zero + lam * rep.value_at_one));
    const double prev = (j == 1) ? rep.value_at_zero : rep.values[static_cast<std::size_t>(j - 2)];
    const double next =
        (j == scan_points) ? rep.value_at_one : rep.values[static_cast<std::size_t>(j)];
    rep.midpoint_concavity_margins.push_back(prev - 2.0 * v + next);
  }
  return rep;
}

std::string report_csv_header() { return "check_name,lhs,rhs,margin,tol,verdict"; }

std::string report_csv_row(const Report& r) {
  std::ostringstream os;
  os << r.check_name << ',' << fmt_double(r.lhs) << ',' << fmt_double(r.rhs) << ','
     << fmt_double(r.margin) << ',' << fmt_double(r.tol) << ',' << verdict_str(r.verdict);
  return os.str();
}

std::string report_json(const Report& r) {
  nlohmann::json j;
  j["check_name"] = r.check_name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["tol"] = r.tol;
  j["verdict"] = verdict_str(r.verdict);
  j["hypothesis_diagnostics"] = r.hypothesis_diagnostics;
  return j.dump();
}

std::string scan_json(const ScanReport& r) {
  nlohmann::json j;
  j["lambda_grid"] = r.lambda_grid;
  j["values"] = r.values;
  j["chord_margins"] = r.chord_margins;
  j["midpoint_concavity_margins"] = r.midpoint_concavity_margins;
  j["value_at_zero"] = r.value_at_zero;
  j["value_at_one"] = r.value_at_one;
  return j.dump();
}

std::string scan_csv_header() {
  return "check_name,lambda,value,chord_margin,second_difference";
}

std::string scan_csv_rows(const std::string& name, const ScanReport& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.lambda_grid.size(); ++i) {
    os << name << ',' << fmt_double(r.lambda_grid[i]) << ',' << fmt_double(r.values[i]) << ','
       << fmt_double(r.chord_margins[i]) << ',' << fmt_double(r.midpoint_concavity_margins[i])
       << "\n";
  }
  return os.str();
}

} // namespace asplund
