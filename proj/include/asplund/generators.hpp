#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "asplund/grid.hpp"

namespace asplund {

// Deterministic, seeded construction of test families.  Every field of the
// spec participates in generation and identical specs produce bit-identical
// output; all continuum parameters are drawn before the grid is touched, so
// the same seed sampled at a finer step refines the same underlying function.
struct FamilySpec {
  enum class Kind {
    GaussianLike,         // e^{-quadratic}, random SPD form
    MaxAffineExponential, // e^{-max of affine}, piecewise log-linear
    PPowerCap,            // p-concave: (max(0,q))^{1/p} or w^{1/p}
    Box,                  // axis-aligned box mask (even cell counts)
    Polytope2d,           // random convex polygon mask
    RandomMask            // union of random boxes
  };

  Kind kind = Kind::GaussianLike;
  std::uint64_t seed = 0;
  int n = 1;
  std::array<double, 2> lo{-5.0, -5.0};
  std::array<double, 2> hi{5.0, 5.0};
  double h = 0.078125;
  PParam p = PParam::zero();

  Grid make_grid() const;

  static Kind parse_kind(const std::string& text);
  static std::string kind_str(Kind k);
};

// Log-concave sample families (gaussian-like, max-affine-exponential):
// e^{-u} with u convex, so every grid line of log f is concave.  sup f = 1
// for max-affine-exponential; gaussian-like peaks at e^0 = 1 off-grid.
GridFn gen_log_concave(const FamilySpec& spec);

// p-concave families for finite p != 0 (kind p-power-cap): for p > 0,
// f = max(0, q)^{1/p} with q a concave cap supported inside the box; for
// p < 0, f = w^{1/p} with w a positive convex quadratic.
GridFn gen_p_concave(const FamilySpec& spec);

// Convex body masks (box, polytope-2d).  Boxes are generated with an even
// number of cells per side, so per-line node counts are odd and centered
// rearrangements are symmetric.
GridSet gen_convex_body(const FamilySpec& spec);

// Union of 2..4 random boxes (kind random-mask).
GridSet gen_random_mask(const FamilySpec& spec);

// Constant c on a generated convex body, 0 elsewhere: the generic
// (+inf)-concave family.
GridFn gen_scaled_indicator(const FamilySpec& spec, double c);

// Samples scaled by a positive constant (c * +inf = +inf).
GridFn scale(const GridFn& f, double c);

// Same samples on the box translated by `cells` steps along the axis.
GridFn translate(const GridFn& f, int axis, Index cells);
GridSet translate(const GridSet& s, int axis, Index cells);

// Builds g from f by an integer shear along the axis (per-hyperplane-node
// shift, zero fill, per-line argmax kept inside the box) and, unless
// preserve_logconcave is set, an additional random permutation of every
// perpendicular line.  Both steps preserve the per-line supremum, so
// project(g, axis) == project(f, axis) exactly, samplewise.  The shear
// magnitude is halved until every line's argmax survives.
std::pair<GridFn, GridFn> make_equal_projection_pair(const GridFn& f, int axis,
                                                     std::uint64_t seed,
                                                     bool preserve_logconcave);

// Returns (f, c*g) with c the ratio of the projection integrals, making the
// two projection integrals agree to relative 1e-12.  Throws when either
// projection integral is zero or infinite.  For n = 1 the projection integral
// is sup f, so this equalizes the suprema.
std::pair<GridFn, GridFn> make_equal_projection_integral_pair(const GridFn& f, const GridFn& g,
                                                              int axis);

// Scales g so the maximal slice integral along the axis matches that of f.
std::pair<GridFn, GridFn> make_equal_max_section_pair(const GridFn& f, const GridFn& g,
                                                      int axis);

} // namespace asplund
