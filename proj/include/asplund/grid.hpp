#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "asplund/means.hpp"

namespace asplund {

using Index = std::int64_t;

// Uniform axis-aligned grid on a box in dimension n in {0, 1, 2}.  Axis i
// holds N_i cells, hence N_i + 1 nodes at coordinates lo_i + j*h_i with
// h_i = (hi_i - lo_i)/N_i; h is always derived from (lo, hi, N) so that a
// grid written to a file and read back compares identical.  Dimension 0
// (a single node, empty axis list) arises from slicing and projecting 1-D
// functions and is fully supported.
class Grid {
public:
  struct Axis {
    double lo = 0.0, hi = 0.0;
    Index cells = 0;
    double step = 0.0;
  };

  Grid() = default; // 0-dimensional
  Grid(std::vector<double> lo, std::vector<double> hi, std::vector<Index> cells);

  static Grid dim0() { return Grid(); }

  int dim() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int i) const { return axes_.at(i); }
  double lo(int i) const { return axes_.at(i).lo; }
  double hi(int i) const { return axes_.at(i).hi; }
  double step(int i) const { return axes_.at(i).step; }
  Index cells(int i) const { return axes_.at(i).cells; }
  Index nodes(int i) const { return axes_.at(i).cells + 1; }

  // Total node count (1 for dimension 0).
  Index node_total() const;
  // Product of steps: the cell volume weight used by Riemann sums (1 for n=0).
  double cell_volume() const;

  double coord(int axis, Index j) const { return axes_.at(axis).lo + static_cast<double>(j) * axes_.at(axis).step; }
  // Node index of coordinate x on the given axis; throws if x is off-grid
  // (farther than 1e-9 cells from every node) or outside the box.
  Index index_at(int axis, double x) const;

  // Row-major linearization; idx has dim() entries.
  Index linear(const Index* idx) const;
  void unlinear(Index lin, Index* idx) const;

  // The grid with the given axis removed (hyperplane grid for projections).
  Grid drop_axis(int axis) const;

  bool operator==(const Grid& o) const;
  bool operator!=(const Grid& o) const { return !(*this == o); }

private:
  std::vector<Axis> axes_;
};

// Non-negative extended-valued function sampled at grid nodes, row-major.
// Samples lie in [0, +inf]; the function is 0 outside its box by convention.
class GridFn {
public:
  GridFn() = default;
  GridFn(Grid grid, std::vector<double> values);

  // All-zero function on the grid.
  static GridFn zeros(Grid grid);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double operator[](Index lin) const { return values_[static_cast<std::size_t>(lin)]; }
  double& operator[](Index lin) { return values_[static_cast<std::size_t>(lin)]; }

  // Re-checks the sample invariant (>= 0 or +inf, never NaN); throws on breach.
  void validate() const;

  bool operator==(const GridFn& o) const { return grid_ == o.grid_ && values_ == o.values_; }

private:
  Grid grid_;
  std::vector<double> values_;
};

// Boolean mask over grid nodes; represents measurable sets and convex bodies
// through their indicator functions.
class GridSet {
public:
  GridSet() = default;
  GridSet(Grid grid, std::vector<std::uint8_t> mask);

  static GridSet empty(Grid grid);

  const Grid& grid() const { return grid_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  std::vector<std::uint8_t>& mask() { return mask_; }
  bool contains(Index lin) const { return mask_[static_cast<std::size_t>(lin)] != 0; }

  Index popcount() const;

  bool operator==(const GridSet& o) const { return grid_ == o.grid_ && mask_ == o.mask_; }

private:
  Grid grid_;
  std::vector<std::uint8_t> mask_;
};

GridFn indicator(const GridSet& s);
// Nodes where f > 0 (infinite samples included).
GridSet support(const GridFn& f);

// A 1-D view of the samples along one grid line parallel to the given axis.
struct LineRef {
  Index base = 0;
  Index stride = 0;
  Index len = 0;
};

// Number of lines parallel to `axis` (= number of nodes of the hyperplane grid).
Index line_count(const Grid& g, int axis);
LineRef line_ref(const Grid& g, int axis, Index which);

// --- integral and slicing operations -------------------------------------

// Left Riemann sum: sum of samples times the cell volume.  Returns +inf as
// soon as any sample is +inf (an infinite sample occupies a cell of positive
// measure under the piecewise-constant convention).  Summation is compensated
// (Kahan), so the result is deterministic and accurate to a few ulps.
double integrate(const GridFn& f);

// Restriction of f to the hyperplane x_axis = alpha; alpha must be a node
// coordinate.  For n=1 the result is the 0-dimensional function holding f(alpha).
GridFn slice(const GridFn& f, int axis, double alpha);

double slice_integral(const GridFn& f, int axis, double alpha);

// Discrete 1-D measure of {f >= t} along line `which` perpendicular to the
// hyperplane of `axis`: step * count.  For t = 0 counts the support (f > 0).
double superlevel_measure_1d(const GridFn& f, int axis, Index which, double t);

// Layer-cake evaluation of the integral: per line, sum over the sorted
// distinct positive sample values t_1 < ... < t_K of
// (t_j - t_{j-1}) * superlevel measure at t_j, then integrate over the
// hyperplane.  Agrees with integrate(f) up to floating-point reordering.
// Throws if f has an infinite sample.
double layer_cake_integrate(const GridFn& f, int axis);

// Maximum sample (+inf dominates).
double sup_value(const GridFn& f);

// Piecewise-constant refinement: step h/m, samples replicated from the
// nearest lower coarse node.  factor = 1 returns f unchanged.
GridFn refine(const GridFn& f, Index factor);
GridSet refine(const GridSet& s, Index factor);

} // namespace asplund
