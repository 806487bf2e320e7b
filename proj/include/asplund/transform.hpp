#pragma once

#include "asplund/grid.hpp"

namespace asplund {

// Projection onto the coordinate hyperplane H = {x_axis = 0}: per node of H,
// the supremum of the samples along the perpendicular line.  For n=1 the
// result is the 0-dimensional function holding sup f.
GridFn project(const GridFn& f, int axis);

// Shadow of a set: mask-OR along the axis.
GridSet project_set(const GridSet& a, int axis);

// Steiner symmetral of a set with respect to H = {x_axis = 0}: per line the
// c true cells become the c cells most centered on x_axis = 0 (centered run;
// for even c the extra cell falls on the negative side).  The output grid is
// the box mirrored to [-W, W] on the axis, W = max(|lo|, |hi|), so the
// centered runs always fit; the axis box must be lattice-aligned (lo/h
// integral) so that 0 is a node.
GridSet steiner_set(const GridSet& a, int axis);

// Steiner symmetrization of a function: per line perpendicular to H the
// samples are rearranged symmetric-decreasing (largest at the node at
// x_axis = 0, second on the next negative node, third positive, ...), which
// makes every superlevel set per line a centered run of unchanged cardinality.
GridFn steiner_fn(const GridFn& f, int axis);

// Schwarz-type symmetrization: each slice x_axis = alpha is replaced by its
// total integral d_alpha spread on the centered unit-volume ball of H (the
// interval [-1/2, 1/2] for n=2; for n=1 the single H-node carries d_alpha).
// Throws if any slice integral is infinite.
GridFn schwarz_fn(const GridFn& f, int axis);

// Copy of f with every +inf sample replaced by 0.
GridFn truncate_infinite(const GridFn& f);

namespace detail {
// Placement offsets of a centered run of c cells relative to the center node:
// [-floor(c/2), ceil(c/2) - 1].
inline Index run_left(Index c) { return -(c / 2); }
inline Index run_right(Index c) { return c - 1 - c / 2; }
// Grid with the given axis mirrored to [-W, W]; other axes unchanged.
Grid symmetrized_grid(const Grid& g, int axis, Index& center_out);
} // namespace detail

} // namespace asplund
