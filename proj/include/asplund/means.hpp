#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace asplund {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Function values throughout the toolkit live in the extended half line
// [0, +inf].  They are carried as plain doubles; +inf is a legal value,
// NaN and negatives are not.  require_ext_nonneg() is the boundary check.
void require_ext_nonneg(double v, const char* what);

// Exact rational weight lambda = k/m with 0 < k < m, gcd(k, m) = 1.
// Storing lambda as a reduced fraction is what lets every pairwise grid
// combination (1-lambda)x + lambda*y land exactly on a node of the m-fold
// refined lattice; conversion to binary floating point happens only when a
// weight is finally multiplied into a value.
class Lambda {
public:
  Lambda(std::int64_t k, std::int64_t m);

  std::int64_t k() const { return k_; }
  std::int64_t m() const { return m_; }

  // lambda and 1-lambda as doubles, each computed with a single rounding.
  double value() const { return static_cast<double>(k_) / static_cast<double>(m_); }
  double complement() const { return static_cast<double>(m_ - k_) / static_cast<double>(m_); }

  Lambda complement_lambda() const { return Lambda(m_ - k_, m_); }

  std::string str() const;
  static Lambda parse(const std::string& text);

  bool operator==(const Lambda& o) const { return k_ == o.k_ && m_ == o.m_; }

private:
  std::int64_t k_, m_;
};

// Exponent p in R union {+-inf} selecting the mean M_p and the convolution.
// Finite values, +inf and -inf share one double representation; NaN is
// rejected at construction.
class PParam {
public:
  static PParam finite(double p);
  static PParam zero() { return PParam(0.0); }
  static PParam plus_inf() { return PParam(kInf); }
  static PParam minus_inf() { return PParam(-kInf); }

  bool is_plus_inf() const { return rep_ == kInf; }
  bool is_minus_inf() const { return rep_ == -kInf; }
  bool is_finite() const { return !is_plus_inf() && !is_minus_inf(); }
  // Finite exponents with |p| below this threshold are evaluated through the
  // log-domain geometric-mean formula; p = 0 exactly selects it as well.
  bool is_zero_like() const { return is_finite() && rep_ > -1e-12 && rep_ < 1e-12; }

  double raw() const { return rep_; }

  std::string str() const;
  static PParam parse(const std::string& text);

  bool operator==(const PParam& o) const { return rep_ == o.rep_; }

private:
  explicit PParam(double rep) : rep_(rep) {}
  double rep_;
};

namespace detail {

// Shared evaluation plan for M_p(a, b, lambda).  The scalar mp_mean and the
// sup-convolution kernel both evaluate means through this plan so that the
// brute-force double loop and the transformed scatter kernel are bit-identical:
// the kernel extremizes the additive form s = wf*T(a) + wg*T(b) and applies
// the monotone finalizer once per output node, while mp_mean applies it per
// pair; the winning pair produces the same s either way.
struct MeanPlan {
  enum class Kind { Geometric, Finite, PlusInf, MinusInf };
  Kind kind;
  double p = 0.0;     // finite exponent (Kind::Finite only)
  double inv_p = 0.0; // 1/p, precomputed once
  double wf = 0.0;    // (m-k)/m
  double wg = 0.0;    // k/m
  // True when larger s means larger mean (Geometric, Finite p>0); false for
  // Finite p<0 where the finalizer s^(1/p) is decreasing.
  bool maximize_s = true;
};

MeanPlan make_mean_plan(std::int64_t k, std::int64_t m, PParam p);

// Weighted transform of one argument: wf*log(a), wf*pow(a, p), or the raw
// value for the +-inf kinds.  Arguments must be positive (zero handled by the
// caller via the a*b = 0 convention).
double transform_f(double a, const MeanPlan& plan);
double transform_g(double b, const MeanPlan& plan);

// Monotone finalizer mapping the extremized s back to the mean value.
double finalize(double s, const MeanPlan& plan);

double mp_mean_plan(double a, double b, const MeanPlan& plan);

} // namespace detail

// Two-point p-th mean M_p(a, b, lambda) with weights (1-lambda, lambda), on
// a, b in [0, +inf].  Conventions:
//   - a*b = 0  =>  0, for every p (in particular 0 paired with +inf gives 0);
//   - p = 0    =>  a^(1-lambda) * b^lambda, evaluated in the log domain;
//                  an infinite argument with the other positive gives +inf;
//   - p = +inf =>  max(a, b);  p = -inf  =>  min(a, b);
//   - finite p != 0  =>  ((1-lambda)a^p + lambda*b^p)^(1/p); for p < 0 an
//                  infinite argument contributes a^p = 0 to the p-sum.
// Total on its domain; never returns NaN.
double mp_mean(double a, double b, const Lambda& lambda, PParam p);

// Dual exponent p -> p/(np+1) appearing on the right-hand side of the
// dimensional mean inequalities.  Requires p >= -1/n; maps the boundary
// p = -1/n to -inf, p = +inf to 1/n, and p = 0 to 0.
PParam dual_exponent(PParam p, int n);

} // namespace asplund
