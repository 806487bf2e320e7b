#include "asplund/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asplund {

GridFn project(const GridFn& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("project: axis out of range");
  Grid out = g.drop_axis(axis);
  std::vector<double> v(static_cast<std::size_t>(out.node_total()), 0.0);
  const Index lines = line_count(g, axis);
  for (Index L = 0; L < lines; ++L) {
    const LineRef lr = line_ref(g, axis, L);
    double m = 0.0;
    for (Index j = 0; j < lr.len; ++j) m = std::max(m, f[lr.base + j * lr.stride]);
    v[static_cast<std::size_t>(L)] = m;
  }
  return GridFn(std::move(out), std::move(v));
}

GridSet project_set(const GridSet& a, int axis) {
  const Grid& g = a.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("project_set: axis out of range");
  Grid out = g.drop_axis(axis);
  std::vector<std::uint8_t> m(static_cast<std::size_t>(out.node_total()), 0);
  const Index lines = line_count(g, axis);
  for (Index L = 0; L < lines; ++L) {
    const LineRef lr = line_ref(g, axis, L);
    for (Index j = 0; j < lr.len; ++j)
      if (a.contains(lr.base + j * lr.stride)) {
        m[static_cast<std::size_t>(L)] = 1;
        break;
      }
  }
  return GridSet(std::move(out), std::move(m));
}

namespace detail {

Grid symmetrized_grid(const Grid& g, int axis, Index& center_out) {
  const double h = g.step(axis);
  const double rel = g.lo(axis) / h;
  const double rounded = std::round(rel);
  if (std::abs(rel - rounded) > 1e-9)
    throw std::invalid_argument(
        "symmetrization: axis box is not lattice-aligned (lo must be a multiple of the step)");
  const Index a = static_cast<Index>(rounded);
  const Index b = a + g.cells(axis);
  const Index w = std::max(std::abs(a), std::abs(b));
  center_out = w;
  std::vector<double> lo, hi;
  std::vector<Index> cells;
  for (int i = 0; i < g.dim(); ++i) {
    if (i == axis) {
      lo.push_back(-static_cast<double>(w) * h);
      hi.push_back(static_cast<double>(w) * h);
      cells.push_back(2 * w);
    } else {
      lo.push_back(g.lo(i));
      hi.push_back(g.hi(i));
      cells.push_back(g.cells(i));
    }
  }
  return Grid(std::move(lo), std::move(hi), std::move(cells));
}

} // namespace detail

GridSet steiner_set(const GridSet& a, int axis) {
  const Grid& g = a.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("steiner_set: axis out of range");
  Index center = 0;
  Grid out = detail::symmetrized_grid(g, axis, center);
  GridSet res = GridSet::empty(out);
  const Index lines = line_count(g, axis);
  for (Index L = 0; L < lines; ++L) {
    const LineRef in = line_ref(g, axis, L);
    Index c = 0;
    for (Index j = 0; j < in.len; ++j) c += a.contains(in.base + j * in.stride);
    if (c == 0) continue;
    const LineRef outl = line_ref(out, axis, L);
    for (Index d = detail::run_left(c); d <= detail::run_right(c); ++d)
      res.mask()[static_cast<std::size_t>(outl.base + (center + d) * outl.stride)] = 1;
  }
  return res;
}

GridFn steiner_fn(const GridFn& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("steiner_fn: axis out of range");
  Index center = 0;
  Grid out = detail::symmetrized_grid(g, axis, center);
  GridFn res = GridFn::zeros(out);
  const Index lines = line_count(g, axis);
  std::vector<double> vals;
  for (Index L = 0; L < lines; ++L) {
    const LineRef in = line_ref(g, axis, L);
    vals.clear();
    for (Index j = 0; j < in.len; ++j) vals.push_back(f[in.base + j * in.stride]);
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    const LineRef outl = line_ref(out, axis, L);
    // Largest at the center node, then alternating negative/positive outward.
    Index neg = 1, pos = 1;
    Index at = center;
    for (std::size_t r = 0; r < vals.size(); ++r) {
      res[outl.base + at * outl.stride] = vals[r];
      if (r % 2 == 0)
        at = center - neg++;
      else
        at = center + pos++;
    }
  }
  return res;
}

GridFn schwarz_fn(const GridFn& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("schwarz_fn: axis out of range");
  const int n = g.dim();
  // Slice integrals d_alpha along the axis.
  std::vector<double> d(static_cast<std::size_t>(g.nodes(axis)));
  const Index lines = line_count(g, axis);
  for (Index j = 0; j < g.nodes(axis); ++j) {
    double sum = 0.0, comp = 0.0;
    for (Index L = 0; L < lines; ++L) {
      const LineRef lr = line_ref(g, axis, L);
      const double v = f[lr.base + j * lr.stride];
      if (v == kInf) throw std::invalid_argument("schwarz_fn: infinite slice integral");
      const double y = v - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    d[static_cast<std::size_t>(j)] = sum * (g.cell_volume() / g.step(axis));
  }
  if (n == 1) {
    // The 0-dimensional unit ball is the single H-node: the output carries
    // d_alpha = f(alpha) at every node.
    return GridFn(g, std::vector<double>(d));
  }
  // n = 2: H is the other axis; build the output grid with the H-axis box
  // [-K*h, K*h] covering the centered interval of length 1.
  const int hax = 1 - axis;
  const double h = g.step(hax);
  const Index K = static_cast<Index>(std::ceil(0.5 / h - 1e-9));
  std::vector<double> lo(2), hi(2);
  std::vector<Index> cells(2);
  lo[axis] = g.lo(axis);
  hi[axis] = g.hi(axis);
  cells[axis] = g.cells(axis);
  lo[hax] = -static_cast<double>(K) * h;
  hi[hax] = static_cast<double>(K) * h;
  cells[hax] = 2 * K;
  Grid out(std::move(lo), std::move(hi), std::move(cells));
  GridFn res = GridFn::zeros(out);
  for (Index j = 0; j < out.nodes(axis); ++j) {
    const double dj = d[static_cast<std::size_t>(j)];
    if (dj == 0.0) continue;
    for (Index b = 0; b < out.nodes(hax); ++b) {
      const double hcoord = out.coord(hax, b);
      if (std::abs(hcoord) <= 0.5 + 1e-12) {
        Index idx[2];
        idx[axis] = j;
        idx[hax] = b;
        res[out.linear(idx)] = dj;
      }
    }
  }
  return res;
}

GridFn truncate_infinite(const GridFn& f) {
  std::vector<double> v = f.values();
  for (double& x : v)
    if (x == kInf) x = 0.0;
  return GridFn(f.grid(), std::move(v));
}

} // namespace asplund
