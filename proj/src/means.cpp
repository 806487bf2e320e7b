#include "asplund/means.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace asplund {

void require_ext_nonneg(double v, const char* what) {
  if (std::isnan(v) || v < 0.0)
    throw std::invalid_argument(std::string(what) + ": value must lie in [0, +inf], got " +
                                std::to_string(v));
}

Lambda::Lambda(std::int64_t k, std::int64_t m) {
  if (m <= 0 || k <= 0 || k >= m)
    throw std::invalid_argument("Lambda: need 0 < k < m, got " + std::to_string(k) + "/" +
                                std::to_string(m));
  const std::int64_t g = std::gcd(k, m);
  k_ = k / g;
  m_ = m / g;
}

std::string Lambda::str() const { return std::to_string(k_) + "/" + std::to_string(m_); }

Lambda Lambda::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos)
    throw std::invalid_argument("Lambda: expected \"k/m\", got \"" + text + "\"");
  std::size_t ka = 0, kb = 0;
  std::int64_t k = 0, m = 0;
  try {
    k = std::stoll(text.substr(0, slash), &ka);
    m = std::stoll(text.substr(slash + 1), &kb);
  } catch (const std::exception&) {
    throw std::invalid_argument("Lambda: expected \"k/m\", got \"" + text + "\"");
  }
  if (ka != slash || kb != text.size() - slash - 1)
    throw std::invalid_argument("Lambda: expected \"k/m\", got \"" + text + "\"");
  return Lambda(k, m);
}

PParam PParam::finite(double p) {
  if (std::isnan(p)) throw std::invalid_argument("PParam: NaN exponent");
  return PParam(p);
}

std::string PParam::str() const {
  if (is_plus_inf()) return "inf";
  if (is_minus_inf()) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", rep_);
  return buf;
}

PParam PParam::parse(const std::string& text) {
  if (text == "inf" || text == "+inf") return plus_inf();
  if (text == "-inf") return minus_inf();
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::size_t ka = 0, kb = 0;
    double num = 0, den = 0;
    try {
      num = std::stod(text.substr(0, slash), &ka);
      den = std::stod(text.substr(slash + 1), &kb);
    } catch (const std::exception&) {
      throw std::invalid_argument("PParam: cannot parse \"" + text + "\"");
    }
    if (ka != slash || kb != text.size() - slash - 1 || den == 0)
      throw std::invalid_argument("PParam: cannot parse \"" + text + "\"");
    return finite(num / den);
  }
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("PParam: cannot parse \"" + text + "\"");
  }
  if (pos != text.size()) throw std::invalid_argument("PParam: cannot parse \"" + text + "\"");
  if (std::isinf(v)) return v > 0 ? plus_inf() : minus_inf();
  return finite(v);
}

namespace detail {

MeanPlan make_mean_plan(std::int64_t k, std::int64_t m, PParam p) {
  if (m <= 0 || k <= 0 || k >= m)
    throw std::invalid_argument("make_mean_plan: need 0 < k < m");
  MeanPlan plan;
  plan.wf = static_cast<double>(m - k) / static_cast<double>(m);
  plan.wg = static_cast<double>(k) / static_cast<double>(m);
  if (p.is_plus_inf()) {
    plan.kind = MeanPlan::Kind::PlusInf;
  } else if (p.is_minus_inf()) {
    plan.kind = MeanPlan::Kind::MinusInf;
  } else if (p.is_zero_like()) {
    plan.kind = MeanPlan::Kind::Geometric;
  } else {
    plan.kind = MeanPlan::Kind::Finite;
    plan.p = p.raw();
    plan.inv_p = 1.0 / p.raw();
    plan.maximize_s = p.raw() > 0.0;
  }
  return plan;
}

double transform_f(double a, const MeanPlan& plan) {
  switch (plan.kind) {
    case MeanPlan::Kind::Geometric: return plan.wf * std::log(a);
    case MeanPlan::Kind::Finite: return plan.wf * std::pow(a, plan.p);
    default: return a;
  }
}

double transform_g(double b, const MeanPlan& plan) {
  switch (plan.kind) {
    case MeanPlan::Kind::Geometric: return plan.wg * std::log(b);
    case MeanPlan::Kind::Finite: return plan.wg * std::pow(b, plan.p);
    default: return b;
  }
}

double finalize(double s, const MeanPlan& plan) {
  switch (plan.kind) {
    case MeanPlan::Kind::Geometric: return std::exp(s);
    case MeanPlan::Kind::Finite: return std::pow(s, plan.inv_p);
    default: return s;
  }
}

double mp_mean_plan(double a, double b, const MeanPlan& plan) {
  if (a == 0.0 || b == 0.0) return 0.0;
  switch (plan.kind) {
    case MeanPlan::Kind::PlusInf: return a > b ? a : b;
    case MeanPlan::Kind::MinusInf: return a < b ? a : b;
    default: break;
  }
  const double s = transform_f(a, plan) + transform_g(b, plan);
  return finalize(s, plan);
}

} // namespace detail

double mp_mean(double a, double b, const Lambda& lambda, PParam p) {
  require_ext_nonneg(a, "mp_mean a");
  require_ext_nonneg(b, "mp_mean b");
  return detail::mp_mean_plan(a, b, detail::make_mean_plan(lambda.k(), lambda.m(), p));
}

PParam dual_exponent(PParam p, int n) {
  if (n <= 0) throw std::invalid_argument("dual_exponent: dimension must be positive");
  const double boundary = -1.0 / static_cast<double>(n);
  if (p.is_plus_inf()) return PParam::finite(1.0 / static_cast<double>(n));
  if (p.is_minus_inf() || p.raw() < boundary)
    throw std::invalid_argument("dual_exponent: p = " + p.str() + " below -1/" +
                                std::to_string(n));
  if (p.raw() == boundary) return PParam::minus_inf();
  if (p.raw() == 0.0) return PParam::zero();
  return PParam::finite(p.raw() / (static_cast<double>(n) * p.raw() + 1.0));
}

} // namespace asplund
