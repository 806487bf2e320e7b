#include "asplund/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "asplund/rng.hpp"
#include "asplund/transform.hpp"

namespace asplund {

Grid FamilySpec::make_grid() const {
  if (n < 1 || n > 2) throw std::invalid_argument("FamilySpec: n must be 1 or 2");
  if (!(h > 0)) throw std::invalid_argument("FamilySpec: step must be positive");
  std::vector<double> glo, ghi;
  std::vector<Index> cells;
  for (int i = 0; i < n; ++i) {
    const double rel = (hi[i] - lo[i]) / h;
    const double rounded = std::round(rel);
    if (std::abs(rel - rounded) > 1e-6 || rounded < 1)
      throw std::invalid_argument("FamilySpec: box is not an integer number of steps");
    glo.push_back(lo[i]);
    ghi.push_back(hi[i]);
    cells.push_back(static_cast<Index>(rounded));
  }
  return Grid(std::move(glo), std::move(ghi), std::move(cells));
}

FamilySpec::Kind FamilySpec::parse_kind(const std::string& text) {
  if (text == "gaussian-like") return Kind::GaussianLike;
  if (text == "max-affine-exponential") return Kind::MaxAffineExponential;
  if (text == "p-power-cap") return Kind::PPowerCap;
  if (text == "box") return Kind::Box;
  if (text == "polytope-2d") return Kind::Polytope2d;
  if (text == "random-mask") return Kind::RandomMask;
  throw std::invalid_argument("FamilySpec: unknown kind \"" + text + "\"");
}

std::string FamilySpec::kind_str(Kind k) {
  switch (k) {
    case Kind::GaussianLike: return "gaussian-like";
    case Kind::MaxAffineExponential: return "max-affine-exponential";
    case Kind::PPowerCap: return "p-power-cap";
    case Kind::Box: return "box";
    case Kind::Polytope2d: return "polytope-2d";
    case Kind::RandomMask: return "random-mask";
  }
  return "?";
}

namespace {

double half_width(const FamilySpec& spec, int i) { return 0.5 * (spec.hi[i] - spec.lo[i]); }

// Evaluates the random SPD quadratic u(x) = (x-c)^T A (x-c) with A = R^T D R.
struct Quadratic {
  double c[2] = {0, 0};
  double a00 = 1, a01 = 0, a11 = 1;
  int n = 1;
  double operator()(const double* x) const {
    const double d0 = x[0] - c[0];
    if (n == 1) return a00 * d0 * d0;
    const double d1 = x[1] - c[1];
    return a00 * d0 * d0 + 2.0 * a01 * d0 * d1 + a11 * d1 * d1;
  }
};

Quadratic draw_quadratic(const FamilySpec& spec, Rng& rng) {
  Quadratic q;
  q.n = spec.n;
  const double mid0 = 0.5 * (spec.lo[0] + spec.hi[0]);
  q.c[0] = mid0 + rng.uniform(-1.0, 1.0);
  double d0 = rng.uniform(0.4, 1.6);
  if (spec.n == 1) {
    q.a00 = d0;
    return q;
  }
  const double mid1 = 0.5 * (spec.lo[1] + spec.hi[1]);
  q.c[1] = mid1 + rng.uniform(-1.0, 1.0);
  const double d1 = rng.uniform(0.4, 1.6);
  const double th = rng.uniform(0.0, 3.14159265358979324);
  const double ct = std::cos(th), st = std::sin(th);
  q.a00 = d0 * ct * ct + d1 * st * st;
  q.a11 = d0 * st * st + d1 * ct * ct;
  q.a01 = (d0 - d1) * ct * st;
  return q;
}

template <class F>
GridFn sample_fn(const Grid& g, F&& fn) {
  std::vector<double> v(static_cast<std::size_t>(g.node_total()));
  const int n = g.dim();
  Index idx[2] = {0, 0};
  double x[2] = {0, 0};
  for (Index lin = 0; lin < g.node_total(); ++lin) {
    g.unlinear(lin, idx);
    for (int i = 0; i < n; ++i) x[i] = g.coord(i, idx[i]);
    v[static_cast<std::size_t>(lin)] = fn(x);
  }
  return GridFn(g, std::move(v));
}

} // namespace

GridFn gen_log_concave(const FamilySpec& spec) {
  Rng rng = Rng::derive(spec.seed, 0x10c0);
  Grid grid = spec.make_grid();
  if (spec.kind == FamilySpec::Kind::GaussianLike) {
    const Quadratic q = draw_quadratic(spec, rng);
    return sample_fn(grid, [&](const double* x) { return std::exp(-q(x)); });
  }
  if (spec.kind != FamilySpec::Kind::MaxAffineExponential)
    throw std::invalid_argument("gen_log_concave: kind must be gaussian-like or "
                                "max-affine-exponential");
  const int pieces = static_cast<int>(rng.uniform_int(3, 8));
  double slope[8][2], off[8];
  for (int i = 0; i < pieces; ++i) {
    for (int d = 0; d < spec.n; ++d) slope[i][d] = rng.uniform(-2.0, 2.0);
    off[i] = rng.uniform(0.0, 3.0);
  }
  double mid[2] = {0.5 * (spec.lo[0] + spec.hi[0]), 0.5 * (spec.lo[1] + spec.hi[1])};
  auto u = [&](const double* x) {
    double m = -kInf;
    for (int i = 0; i < pieces; ++i) {
      double v = off[i];
      for (int d = 0; d < spec.n; ++d) v += slope[i][d] * (x[d] - mid[d]);
      m = std::max(m, v);
    }
    return m;
  };
  // Shift u so its grid minimum is 0: sup f = 1 and f <= 1 everywhere.
  GridFn raw = sample_fn(grid, [&](const double* x) { return u(x); });
  double umin = kInf;
  for (double v : raw.values()) umin = std::min(umin, v);
  std::vector<double> out(raw.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(-(raw.values()[i] - umin));
  return GridFn(grid, std::move(out));
}

GridFn gen_p_concave(const FamilySpec& spec) {
  if (!spec.p.is_finite() || spec.p.raw() == 0.0)
    throw std::invalid_argument("gen_p_concave: p must be finite and nonzero");
  if (spec.kind != FamilySpec::Kind::PPowerCap)
    throw std::invalid_argument("gen_p_concave: kind must be p-power-cap");
  Rng rng = Rng::derive(spec.seed, 0x9c0e);
  Grid grid = spec.make_grid();
  const double p = spec.p.raw();
  double c[2], s[2];
  double reach = kInf;
  for (int i = 0; i < spec.n; ++i) {
    const double mid = 0.5 * (spec.lo[i] + spec.hi[i]);
    c[i] = mid + rng.uniform(-0.2, 0.2) * half_width(spec, i);
    s[i] = rng.uniform(0.7, 1.4);
    reach = std::min(reach, (spec.hi[i] - std::abs(c[i] - mid) - mid) * s[i]);
  }
  if (p > 0) {
    // Cap max(0, r^2 - |S(x-c)|^2)^(1/p), supported strictly inside the box.
    const double r = rng.uniform(0.45, 0.8) * reach;
    const double r2 = r * r;
    const double invp = 1.0 / p;
    return sample_fn(grid, [&](const double* x) {
      double q = r2;
      for (int i = 0; i < spec.n; ++i) {
        const double d = s[i] * (x[i] - c[i]);
        q -= d * d;
      }
      return q > 0 ? std::pow(q, invp) : 0.0;
    });
  }
  // p < 0: w^(1/p) with w = 1 + |S(x-c)|^2 convex and positive.
  const double invp = 1.0 / p;
  return sample_fn(grid, [&](const double* x) {
    double w = 1.0;
    for (int i = 0; i < spec.n; ++i) {
      const double d = s[i] * (x[i] - c[i]);
      w += d * d;
    }
    return std::pow(w, invp);
  });
}

namespace {

// Random sub-box with an even number of cells per axis (odd node counts keep
// centered rearrangements symmetric).
void draw_box_range(Rng& rng, Index cells, Index& a, Index& b) {
  const Index maxw = std::max<Index>(2, (3 * cells) / 4);
  const Index minw = std::min<Index>(maxw, std::max<Index>(2, cells / 6));
  Index w = rng.uniform_int(minw, maxw);
  if (w % 2 != 0) w = (w + 1 <= cells) ? w + 1 : w - 1;
  a = rng.uniform_int(0, cells - w);
  b = a + w;
}

} // namespace

GridSet gen_convex_body(const FamilySpec& spec) {
  Rng rng = Rng::derive(spec.seed, 0xb0d1);
  Grid grid = spec.make_grid();
  if (spec.kind == FamilySpec::Kind::Box) {
    Index a[2] = {0, 0}, b[2] = {0, 0};
    for (int i = 0; i < spec.n; ++i) draw_box_range(rng, grid.cells(i), a[i], b[i]);
    GridSet out = GridSet::empty(grid);
    Index idx[2] = {0, 0};
    for (Index lin = 0; lin < grid.node_total(); ++lin) {
      grid.unlinear(lin, idx);
      bool in = true;
      for (int i = 0; i < spec.n; ++i) in = in && idx[i] >= a[i] && idx[i] <= b[i];
      out.mask()[static_cast<std::size_t>(lin)] = in ? 1 : 0;
    }
    return out;
  }
  if (spec.kind != FamilySpec::Kind::Polytope2d || spec.n != 2)
    throw std::invalid_argument("gen_convex_body: kind must be box or polytope-2d (n=2)");
  // Random convex polygon: 5..10 vertices at sorted angles on a random
  // ellipse (points on an ellipse in angular order are in convex position),
  // rasterized by center-in-polygon test.  Convexity makes every grid line a
  // single run of cells.
  const int verts = static_cast<int>(rng.uniform_int(5, 10));
  double vx[10], vy[10], ang[10];
  for (int i = 0; i < verts; ++i) ang[i] = rng.uniform(0.0, 6.28318530717958648);
  std::sort(ang, ang + verts);
  for (int i = 1; i < verts; ++i)
    if (ang[i] - ang[i - 1] < 1e-3) ang[i] = ang[i - 1] + 1e-3;
  const double cx = 0.5 * (spec.lo[0] + spec.hi[0]) + rng.uniform(-0.1, 0.1) * half_width(spec, 0);
  const double cy = 0.5 * (spec.lo[1] + spec.hi[1]) + rng.uniform(-0.1, 0.1) * half_width(spec, 1);
  const double rx = rng.uniform(0.35, 0.85) * half_width(spec, 0);
  const double ry = rng.uniform(0.35, 0.85) * half_width(spec, 1);
  for (int i = 0; i < verts; ++i) {
    vx[i] = cx + rx * std::cos(ang[i]);
    vy[i] = cy + ry * std::sin(ang[i]);
  }
  auto inside = [&](double x, double y) {
    for (int i = 0; i < verts; ++i) {
      const int j = (i + 1) % verts;
      const double cross =
          (vx[j] - vx[i]) * (y - vy[i]) - (vy[j] - vy[i]) * (x - vx[i]);
      if (cross < 0) return false;
    }
    return true;
  };
  GridSet out = GridSet::empty(grid);
  Index idx[2];
  for (Index lin = 0; lin < grid.node_total(); ++lin) {
    grid.unlinear(lin, idx);
    if (inside(grid.coord(0, idx[0]), grid.coord(1, idx[1])))
      out.mask()[static_cast<std::size_t>(lin)] = 1;
  }
  return out;
}

GridSet gen_random_mask(const FamilySpec& spec) {
  if (spec.kind != FamilySpec::Kind::RandomMask)
    throw std::invalid_argument("gen_random_mask: kind must be random-mask");
  Rng rng = Rng::derive(spec.seed, 0x3a5c);
  Grid grid = spec.make_grid();
  GridSet out = GridSet::empty(grid);
  const int blobs = static_cast<int>(rng.uniform_int(2, 4));
  for (int bidx = 0; bidx < blobs; ++bidx) {
    Index a[2] = {0, 0}, b[2] = {0, 0};
    for (int i = 0; i < spec.n; ++i) {
      const Index w = rng.uniform_int(1, std::max<Index>(1, grid.cells(i) / 3));
      a[i] = rng.uniform_int(0, grid.cells(i) - w);
      b[i] = a[i] + w;
    }
    Index idx[2] = {0, 0};
    for (Index lin = 0; lin < grid.node_total(); ++lin) {
      grid.unlinear(lin, idx);
      bool in = true;
      for (int i = 0; i < spec.n; ++i) in = in && idx[i] >= a[i] && idx[i] <= b[i];
      if (in) out.mask()[static_cast<std::size_t>(lin)] = 1;
    }
  }
  return out;
}

GridFn gen_scaled_indicator(const FamilySpec& spec, double c) {
  require_ext_nonneg(c, "gen_scaled_indicator c");
  GridSet body = gen_convex_body(spec);
  return scale(indicator(body), c);
}

GridFn scale(const GridFn& f, double c) {
  if (!(c > 0) || c == kInf) throw std::invalid_argument("scale: factor must be finite positive");
  std::vector<double> v = f.values();
  for (double& x : v) x *= c;
  return GridFn(f.grid(), std::move(v));
}

GridFn translate(const GridFn& f, int axis, Index cells) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("translate: axis out of range");
  std::vector<double> lo, hi;
  std::vector<Index> nc;
  for (int i = 0; i < g.dim(); ++i) {
    const double d = (i == axis) ? static_cast<double>(cells) * g.step(i) : 0.0;
    lo.push_back(g.lo(i) + d);
    hi.push_back(g.hi(i) + d);
    nc.push_back(g.cells(i));
  }
  return GridFn(Grid(std::move(lo), std::move(hi), std::move(nc)), f.values());
}

GridSet translate(const GridSet& s, int axis, Index cells) {
  const Grid& g = s.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("translate: axis out of range");
  std::vector<double> lo, hi;
  std::vector<Index> nc;
  for (int i = 0; i < g.dim(); ++i) {
    const double d = (i == axis) ? static_cast<double>(cells) * g.step(i) : 0.0;
    lo.push_back(g.lo(i) + d);
    hi.push_back(g.hi(i) + d);
    nc.push_back(g.cells(i));
  }
  return GridSet(Grid(std::move(lo), std::move(hi), std::move(nc)), s.mask());
}

std::pair<GridFn, GridFn> make_equal_projection_pair(const GridFn& f, int axis,
                                                     std::uint64_t seed,
                                                     bool preserve_logconcave) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim())
    throw std::invalid_argument("make_equal_projection_pair: axis out of range");
  const Index lines = line_count(g, axis);
  const Index len = g.nodes(axis);

  // Per-line argmax positions bound the admissible shift.
  std::vector<Index> argmax(static_cast<std::size_t>(lines), 0);
  for (Index L = 0; L < lines; ++L) {
    const LineRef lr = line_ref(g, axis, L);
    double m = -1.0;
    for (Index j = 0; j < len; ++j) {
      const double v = f[lr.base + j * lr.stride];
      if (v > m) {
        m = v;
        argmax[static_cast<std::size_t>(L)] = j;
      }
    }
  }

  Rng rng = Rng::derive(seed, 0xea1);
  double mag = rng.uniform(0.1, 0.25) * static_cast<double>(len);
  const double tilt = rng.uniform(-1.0, 1.0);
  std::vector<Index> shift(static_cast<std::size_t>(lines), 0);
  for (int attempt = 0;; ++attempt) {
    bool ok = true;
    for (Index L = 0; L < lines; ++L) {
      const double t = (lines > 1) ? (2.0 * static_cast<double>(L) / static_cast<double>(lines - 1) - 1.0)
                                   : 1.0;
      const Index s = static_cast<Index>(std::round(mag * (tilt * t + (1.0 - std::abs(tilt)))));
      shift[static_cast<std::size_t>(L)] = s;
      const Index jm = argmax[static_cast<std::size_t>(L)] + s;
      if (jm < 0 || jm >= len) ok = false;
    }
    if (ok) break;
    if (attempt > 60) {
      std::fill(shift.begin(), shift.end(), Index{0});
      break;
    }
    mag *= 0.5;
  }

  GridFn out = GridFn::zeros(g);
  for (Index L = 0; L < lines; ++L) {
    const LineRef lr = line_ref(g, axis, L);
    const Index s = shift[static_cast<std::size_t>(L)];
    for (Index j = 0; j < len; ++j) {
      const Index src = j - s;
      if (src >= 0 && src < len) out[lr.base + j * lr.stride] = f[lr.base + src * lr.stride];
    }
    if (!preserve_logconcave) {
      // Fisher-Yates over the line.
      for (Index j = len - 1; j > 0; --j) {
        const Index r = rng.uniform_int(0, j);
        std::swap(out[lr.base + j * lr.stride], out[lr.base + r * lr.stride]);
      }
    }
  }
  return {f, std::move(out)};
}

std::pair<GridFn, GridFn> make_equal_projection_integral_pair(const GridFn& f, const GridFn& g,
                                                              int axis) {
  const double pf = integrate(project(f, axis));
  const double pg = integrate(project(g, axis));
  if (!(pf > 0) || !(pg > 0) || pf == kInf || pg == kInf)
    throw std::invalid_argument(
        "make_equal_projection_integral_pair: projection integrals must be positive finite");
  return {f, scale(g, pf / pg)};
}

namespace {

double max_section_integral(const GridFn& f, int axis) {
  const Grid& g = f.grid();
  double best = 0.0;
  for (Index j = 0; j < g.nodes(axis); ++j) {
    const double d = slice_integral(f, axis, g.coord(axis, j));
    if (d == kInf) return kInf;
    best = std::max(best, d);
  }
  return best;
}

} // namespace

std::pair<GridFn, GridFn> make_equal_max_section_pair(const GridFn& f, const GridFn& g,
                                                      int axis) {
  const double mf = max_section_integral(f, axis);
  const double mg = max_section_integral(g, axis);
  if (!(mf > 0) || !(mg > 0) || mf == kInf || mg == kInf)
    throw std::invalid_argument(
        "make_equal_max_section_pair: maximal section integrals must be positive finite");
  return {f, scale(g, mf / mg)};
}

} // namespace asplund
