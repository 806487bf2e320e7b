#include "asplund/convolution.hpp"

#include <cmath>
#include <stdexcept>

namespace asplund {

Potential::Potential(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<Index>(values_.size()) != grid_.node_total())
    throw std::invalid_argument("Potential: sample count does not match grid");
  for (double v : values_)
    if (std::isnan(v) || v == -kInf)
      throw std::invalid_argument("Potential: values must lie in R union {+inf}");
}

Potential neg_log(const GridFn& f) {
  std::vector<double> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = f.values()[i];
    v[i] = (x == 0.0) ? kInf : -std::log(x);
  }
  return Potential(f.grid(), std::move(v));
}

GridFn exp_neg(const Potential& u) {
  std::vector<double> v(u.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = u.values()[i];
    v[i] = (x == kInf) ? 0.0 : std::exp(-x);
  }
  return GridFn(u.grid(), std::move(v));
}

namespace detail {

Grid combination_grid(const Grid& a, const Grid& b, Index k, Index m) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("combination: dimension mismatch");
  if (m <= 0 || k <= 0 || k >= m) throw std::invalid_argument("combination: need 0 < k < m");
  if (a.dim() == 0) return Grid::dim0();
  const double wf = static_cast<double>(m - k);
  const double wg = static_cast<double>(k);
  const double dm = static_cast<double>(m);
  std::vector<double> lo(a.dim()), hi(a.dim());
  std::vector<Index> cells(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    const double ha = a.step(i), hb = b.step(i);
    if (std::abs(ha - hb) > 1e-12 * ha)
      throw std::invalid_argument("combination: mismatched steps on axis " + std::to_string(i));
    lo[i] = (wf * a.lo(i) + wg * b.lo(i)) / dm;
    hi[i] = (wf * a.hi(i) + wg * b.hi(i)) / dm;
    cells[i] = (m - k) * a.cells(i) + k * b.cells(i);
  }
  return Grid(std::move(lo), std::move(hi), std::move(cells));
}

} // namespace detail

GridSet minkowski_combine(const GridSet& a, const GridSet& b, const Lambda& lambda) {
  const Index k = lambda.k(), m = lambda.m();
  Grid out = detail::combination_grid(a.grid(), b.grid(), k, m);
  GridSet res = GridSet::empty(out);
  const Grid& ga = a.grid();
  const Grid& gb = b.grid();
  const int n = ga.dim();
  // Gather true nodes once; pair loop scatters exact index combinations.
  std::vector<std::array<Index, 2>> xa, xb;
  Index idx[2] = {0, 0};
  for (Index lin = 0; lin < ga.node_total(); ++lin)
    if (a.contains(lin)) {
      ga.unlinear(lin, idx);
      xa.push_back({idx[0], idx[1]});
    }
  for (Index lin = 0; lin < gb.node_total(); ++lin)
    if (b.contains(lin)) {
      gb.unlinear(lin, idx);
      xb.push_back({idx[0], idx[1]});
    }
  for (const auto& x : xa)
    for (const auto& y : xb) {
      Index t[2];
      for (int i = 0; i < n; ++i) t[i] = (m - k) * x[i] + k * y[i];
      res.mask()[static_cast<std::size_t>(out.linear(t))] = 1;
    }
  return res;
}

namespace detail {

GridFn sup_convolution_raw(const GridFn& f, const GridFn& g, Index k, Index m, PParam p) {
  const MeanPlan plan = make_mean_plan(k, m, p);
  Grid out_grid = combination_grid(f.grid(), g.grid(), k, m);
  const Grid& gf = f.grid();
  const Grid& gg = g.grid();
  const int n = gf.dim();

  // Transformed inputs: NaN marks a zero sample (never pairs; NaN loses every
  // comparison below, so such pairs simply never update a node).
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> tf(f.values().size()), tg(g.values().size());
  for (std::size_t i = 0; i < tf.size(); ++i) {
    const double v = f.values()[i];
    tf[i] = (v == 0.0) ? nan : transform_f(v, plan);
  }
  for (std::size_t i = 0; i < tg.size(); ++i) {
    const double v = g.values()[i];
    tg[i] = (v == 0.0) ? nan : transform_g(v, plan);
  }

  const bool additive =
      plan.kind == MeanPlan::Kind::Geometric || plan.kind == MeanPlan::Kind::Finite;
  const bool maximize = additive ? plan.maximize_s : true;
  const double sentinel = maximize ? -kInf : kInf;
  std::vector<double> best(static_cast<std::size_t>(out_grid.node_total()), sentinel);

  const Index fa0 = (n >= 1) ? gf.nodes(0) : 1;
  const Index fa1 = (n == 2) ? gf.nodes(1) : 1;
  const Index gb0 = (n >= 1) ? gg.nodes(0) : 1;
  const Index gb1 = (n == 2) ? gg.nodes(1) : 1;
  const Index ow1 = (n == 2) ? out_grid.nodes(1) : 1;
  const Index wk = m - k;

  // Row-major addressing collapses uniformly for n in {0, 1, 2}: the inner
  // axis contributes stride k on the output, the outer axis stride m per
  // f-step and k per g-step times the output row width.
  const bool min_best = additive && !maximize;
  const bool inf_kind = !additive;
  const bool take_max_ab = plan.kind == MeanPlan::Kind::PlusInf;
  for (Index i0 = 0; i0 < fa0; ++i0)
    for (Index i1 = 0; i1 < fa1; ++i1) {
      const double a = tf[static_cast<std::size_t>(i0 * fa1 + i1)];
      if (std::isnan(a)) continue;
      for (Index j0 = 0; j0 < gb0; ++j0) {
        double* orow = best.data() + static_cast<std::size_t>((wk * i0 + k * j0) * ow1 + wk * i1);
        const double* brow = tg.data() + static_cast<std::size_t>(j0 * gb1);
        if (inf_kind) {
          for (Index j1 = 0; j1 < gb1; ++j1) {
            const double b = brow[j1];
            const double v = take_max_ab ? (a > b ? a : b) : (a < b ? a : b);
            double& o = orow[k * j1];
            if (v > o) o = v;
          }
        } else if (min_best) {
          for (Index j1 = 0; j1 < gb1; ++j1) {
            const double v = a + brow[j1];
            double& o = orow[k * j1];
            if (v < o) o = v;
          }
        } else {
          for (Index j1 = 0; j1 < gb1; ++j1) {
            const double v = a + brow[j1];
            double& o = orow[k * j1];
            if (v > o) o = v;
          }
        }
      }
    }

  GridFn res = GridFn::zeros(std::move(out_grid));
  for (std::size_t i = 0; i < best.size(); ++i) {
    const double s = best[i];
    if (s == sentinel) continue; // no contributing pair: value 0
    res.values()[i] = additive ? finalize(s, plan) : s;
  }
  return res;
}

} // namespace detail

GridFn sup_convolution(const GridFn& f, const GridFn& g, const Lambda& lambda, PParam p) {
  return detail::sup_convolution_raw(f, g, lambda.k(), lambda.m(), p);
}

GridFn sup_convolution_bruteforce(const GridFn& f, const GridFn& g, const Lambda& lambda,
                                  PParam p) {
  const Index k = lambda.k(), m = lambda.m();
  Grid out_grid = detail::combination_grid(f.grid(), g.grid(), k, m);
  GridFn res = GridFn::zeros(std::move(out_grid));
  const Grid& gf = f.grid();
  const Grid& gg = g.grid();
  const int n = gf.dim();
  Index xi[2] = {0, 0}, yi[2] = {0, 0}, t[2] = {0, 0};
  for (Index xl = 0; xl < gf.node_total(); ++xl) {
    gf.unlinear(xl, xi);
    for (Index yl = 0; yl < gg.node_total(); ++yl) {
      gg.unlinear(yl, yi);
      for (int i = 0; i < n; ++i) t[i] = (m - k) * xi[i] + k * yi[i];
      const double v = mp_mean(f[xl], g[yl], lambda, p);
      const Index ol = res.grid().linear(t);
      if (v > res[ol]) res[ol] = v;
    }
  }
  return res;
}

Potential inf_convolution(const Potential& u, const Potential& v, const Lambda& lambda) {
  const Index k = lambda.k(), m = lambda.m();
  Grid out_grid = detail::combination_grid(u.grid(), v.grid(), k, m);
  const double wf = lambda.complement();
  const double wg = lambda.value();
  std::vector<double> best(static_cast<std::size_t>(out_grid.node_total()), kInf);
  const Grid& gu = u.grid();
  const Grid& gv = v.grid();
  const int n = gu.dim();
  Index xi[2] = {0, 0}, yi[2] = {0, 0}, t[2] = {0, 0};
  for (Index xl = 0; xl < gu.node_total(); ++xl) {
    gu.unlinear(xl, xi);
    const double a = wf * u[xl];
    for (Index yl = 0; yl < gv.node_total(); ++yl) {
      gv.unlinear(yl, yi);
      for (int i = 0; i < n; ++i) t[i] = (m - k) * xi[i] + k * yi[i];
      const double val = a + wg * v[yl];
      const Index ol = out_grid.linear(t);
      if (val < best[static_cast<std::size_t>(ol)]) best[static_cast<std::size_t>(ol)] = val;
    }
  }
  return Potential(std::move(out_grid), std::move(best));
}

} // namespace asplund
