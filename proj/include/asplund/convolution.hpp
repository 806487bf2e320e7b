#pragma once

#include "asplund/grid.hpp"

namespace asplund {

// Potential-valued grid function: values in R union {+inf} (negatives are
// allowed, NaN and -inf are not).  Potentials carry exponents u = -log f, so
// they are a distinct value domain from GridFn.
class Potential {
public:
  Potential() = default;
  Potential(Grid grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](Index lin) const { return values_[static_cast<std::size_t>(lin)]; }

private:
  Grid grid_;
  std::vector<double> values_;
};

// u = -log f nodewise (0 -> +inf); inverse of exp_neg.
Potential neg_log(const GridFn& f);
// f = exp(-u) nodewise (+inf -> 0).
GridFn exp_neg(const Potential& u);

// Minkowski combination (1-lambda)A + lambda*B on the m-fold refined lattice:
// with lambda = k/m, output node z is true iff there are nodes x in A, y in B
// with ((m-k)x + k*y)/m = z exactly (integer index arithmetic).  Inputs must
// share their step per axis.
GridSet minkowski_combine(const GridSet& a, const GridSet& b, const Lambda& lambda);

// p-sup-convolution (1-lambda)f *_p lambda*g restricted to grid-representable
// decompositions: on the m-fold refined lattice, the value at z is the
// maximum of M_p(f(x), g(y), lambda) over all exactly aligned node pairs.
// This is a pointwise lower bound of the continuum operator.  Zero samples
// never pair (M_p(a, b) = 0 when ab = 0, including 0 with +inf).
GridFn sup_convolution(const GridFn& f, const GridFn& g, const Lambda& lambda, PParam p);

// Same contract, mandated literal double loop over all index pairs evaluating
// mp_mean per pair; the testing oracle for sup_convolution.
GridFn sup_convolution_bruteforce(const GridFn& f, const GridFn& g, const Lambda& lambda,
                                  PParam p);

// Infimal convolution of potentials: minimum over exactly aligned pairs of
// (1-lambda)u(x) + lambda*v(y); +inf absorbs.
Potential inf_convolution(const Potential& u, const Potential& v, const Lambda& lambda);

namespace detail {
// Output grid of a k/m combination (shared by the set, function and potential
// operators); validates matching dimension and steps.
Grid combination_grid(const Grid& a, const Grid& b, Index k, Index m);
// sup-convolution for a not-necessarily-reduced weight k/m; sup_convolution
// forwards here with the reduced fraction, lambda scans use a common
// denominator across scan points so all values live on one lattice.
GridFn sup_convolution_raw(const GridFn& f, const GridFn& g, Index k, Index m, PParam p);
} // namespace detail

} // namespace asplund
