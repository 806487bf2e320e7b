#include "asplund/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asplund {

Grid::Grid(std::vector<double> lo, std::vector<double> hi, std::vector<Index> cells) {
  if (lo.size() != hi.size() || lo.size() != cells.size())
    throw std::invalid_argument("Grid: lo/hi/N size mismatch");
  if (lo.size() > 2) throw std::invalid_argument("Grid: dimension must be <= 2");
  axes_.resize(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw std::invalid_argument("Grid: need lo < hi per axis");
    if (cells[i] < 1) throw std::invalid_argument("Grid: need at least one cell per axis");
    axes_[i].lo = lo[i];
    axes_[i].hi = hi[i];
    axes_[i].cells = cells[i];
    axes_[i].step = (hi[i] - lo[i]) / static_cast<double>(cells[i]);
  }
}

Index Grid::node_total() const {
  Index t = 1;
  for (const auto& a : axes_) t *= a.cells + 1;
  return t;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (const auto& a : axes_) v *= a.step;
  return v;
}

Index Grid::index_at(int axis, double x) const {
  const Axis& a = axes_.at(axis);
  const double rel = (x - a.lo) / a.step;
  const double rounded = std::round(rel);
  if (std::abs(rel - rounded) > 1e-9)
    throw std::invalid_argument("Grid: coordinate " + std::to_string(x) + " is off-grid on axis " +
                                std::to_string(axis));
  const Index j = static_cast<Index>(rounded);
  if (j < 0 || j > a.cells)
    throw std::invalid_argument("Grid: coordinate " + std::to_string(x) + " outside box on axis " +
                                std::to_string(axis));
  return j;
}

Index Grid::linear(const Index* idx) const {
  Index lin = 0;
  for (int i = 0; i < dim(); ++i) lin = lin * (axes_[i].cells + 1) + idx[i];
  return lin;
}

void Grid::unlinear(Index lin, Index* idx) const {
  for (int i = dim() - 1; i >= 0; --i) {
    const Index n = axes_[i].cells + 1;
    idx[i] = lin % n;
    lin /= n;
  }
}

Grid Grid::drop_axis(int axis) const {
  if (axis < 0 || axis >= dim()) throw std::invalid_argument("Grid: axis out of range");
  std::vector<double> lo, hi;
  std::vector<Index> cells;
  for (int i = 0; i < dim(); ++i) {
    if (i == axis) continue;
    lo.push_back(axes_[i].lo);
    hi.push_back(axes_[i].hi);
    cells.push_back(axes_[i].cells);
  }
  if (lo.empty()) return Grid::dim0();
  return Grid(std::move(lo), std::move(hi), std::move(cells));
}

bool Grid::operator==(const Grid& o) const {
  if (dim() != o.dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (axes_[i].lo != o.axes_[i].lo || axes_[i].hi != o.axes_[i].hi ||
        axes_[i].cells != o.axes_[i].cells)
      return false;
  }
  return true;
}

GridFn::GridFn(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<Index>(values_.size()) != grid_.node_total())
    throw std::invalid_argument("GridFn: sample count does not match grid");
  validate();
}

GridFn GridFn::zeros(Grid grid) {
  const std::size_t n = static_cast<std::size_t>(grid.node_total());
  GridFn f;
  f.grid_ = std::move(grid);
  f.values_.assign(n, 0.0);
  return f;
}

void GridFn::validate() const {
  for (double v : values_) require_ext_nonneg(v, "GridFn sample");
}

GridSet::GridSet(Grid grid, std::vector<std::uint8_t> mask)
    : grid_(std::move(grid)), mask_(std::move(mask)) {
  if (static_cast<Index>(mask_.size()) != grid_.node_total())
    throw std::invalid_argument("GridSet: mask size does not match grid");
}

GridSet GridSet::empty(Grid grid) {
  const std::size_t n = static_cast<std::size_t>(grid.node_total());
  GridSet s;
  s.grid_ = std::move(grid);
  s.mask_.assign(n, 0);
  return s;
}

Index GridSet::popcount() const {
  Index c = 0;
  for (auto b : mask_) c += (b != 0);
  return c;
}

GridFn indicator(const GridSet& s) {
  std::vector<double> v(s.mask().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.mask()[i] ? 1.0 : 0.0;
  return GridFn(s.grid(), std::move(v));
}

GridSet support(const GridFn& f) {
  std::vector<std::uint8_t> m(f.values().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = f.values()[i] > 0.0 ? 1 : 0;
  return GridSet(f.grid(), std::move(m));
}

Index line_count(const Grid& g, int axis) {
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("line_count: axis out of range");
  return g.node_total() / g.nodes(axis);
}

LineRef line_ref(const Grid& g, int axis, Index which) {
  // Row-major layout: stride of axis i is the product of node counts of the
  // later axes.  For n<=2 this reduces to the two familiar cases.
  LineRef r;
  r.len = g.nodes(axis);
  Index stride = 1;
  for (int i = g.dim() - 1; i > axis; --i) stride *= g.nodes(i);
  r.stride = stride;
  if (g.dim() == 1) {
    r.base = 0;
  } else if (axis == 0) {
    r.base = which; // which indexes the trailing axis
  } else {
    r.base = which * g.nodes(1); // which indexes axis 0
  }
  return r;
}

double integrate(const GridFn& f) {
  double sum = 0.0, comp = 0.0;
  for (double v : f.values()) {
    if (v == kInf) return kInf;
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum * f.grid().cell_volume();
}

GridFn slice(const GridFn& f, int axis, double alpha) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("slice: axis out of range");
  const Index j = g.index_at(axis, alpha);
  Grid out = g.drop_axis(axis);
  std::vector<double> v(static_cast<std::size_t>(out.node_total()));
  const Index lines = line_count(g, axis);
  for (Index L = 0; L < lines; ++L) {
    const LineRef lr = line_ref(g, axis, L);
    v[static_cast<std::size_t>(L)] = f[lr.base + j * lr.stride];
  }
  return GridFn(std::move(out), std::move(v));
}

double slice_integral(const GridFn& f, int axis, double alpha) {
  return integrate(slice(f, axis, alpha));
}

double superlevel_measure_1d(const GridFn& f, int axis, Index which, double t) {
  if (t < 0.0 || std::isnan(t)) throw std::invalid_argument("superlevel_measure_1d: need t >= 0");
  const Grid& g = f.grid();
  const LineRef lr = line_ref(g, axis, which);
  Index count = 0;
  for (Index j = 0; j < lr.len; ++j) {
    const double v = f[lr.base + j * lr.stride];
    count += (t == 0.0) ? (v > 0.0) : (v >= t);
  }
  return static_cast<double>(count) * g.step(axis);
}

double layer_cake_integrate(const GridFn& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim())
    throw std::invalid_argument("layer_cake_integrate: axis out of range");
  const Index lines = line_count(g, axis);
  const double hyper_cell = g.cell_volume() / g.step(axis);
  std::vector<double> levels;
  double sum = 0.0, comp = 0.0;
  for (Index L = 0; L < lines; ++L) {
    const LineRef lr = line_ref(g, axis, L);
    levels.clear();
    for (Index j = 0; j < lr.len; ++j) {
      const double v = f[lr.base + j * lr.stride];
      if (v == kInf) throw std::invalid_argument("layer_cake_integrate: infinite sample");
      if (v > 0.0) levels.push_back(v);
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    double prev = 0.0;
    for (double t : levels) {
      const double contrib = (t - prev) * superlevel_measure_1d(f, axis, L, t) * hyper_cell;
      const double y = contrib - comp;
      const double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
      prev = t;
    }
  }
  return sum;
}

double sup_value(const GridFn& f) {
  double m = 0.0;
  for (double v : f.values())
    if (v > m) m = v;
  return m;
}

namespace {

template <class V>
V refine_samples(const Grid& g, const V& in, const Grid& out) {
  V res(static_cast<std::size_t>(out.node_total()));
  const int n = g.dim();
  Index idx[2] = {0, 0};
  for (Index lin = 0; lin < out.node_total(); ++lin) {
    out.unlinear(lin, idx);
    Index src[2];
    for (int i = 0; i < n; ++i) {
      const Index m = out.cells(i) / g.cells(i);
      src[i] = std::min(idx[i] / m, g.cells(i));
    }
    res[static_cast<std::size_t>(lin)] = in[static_cast<std::size_t>(g.linear(src))];
  }
  return res;
}

Grid refined_grid(const Grid& g, Index factor) {
  if (factor < 1) throw std::invalid_argument("refine: factor must be >= 1");
  std::vector<double> lo, hi;
  std::vector<Index> cells;
  for (int i = 0; i < g.dim(); ++i) {
    lo.push_back(g.lo(i));
    hi.push_back(g.hi(i));
    cells.push_back(g.cells(i) * factor);
  }
  if (g.dim() == 0) return Grid::dim0();
  return Grid(std::move(lo), std::move(hi), std::move(cells));
}

} // namespace

GridFn refine(const GridFn& f, Index factor) {
  if (factor == 1) return f;
  Grid out = refined_grid(f.grid(), factor);
  auto v = refine_samples(f.grid(), f.values(), out);
  return GridFn(std::move(out), std::move(v));
}

GridSet refine(const GridSet& s, Index factor) {
  if (factor == 1) return s;
  Grid out = refined_grid(s.grid(), factor);
  auto m = refine_samples(s.grid(), s.mask(), out);
  return GridSet(std::move(out), std::move(m));
}

} // namespace asplund
