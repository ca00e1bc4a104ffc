#pragma once

// Scalar types and the math-function plumbing shared by every module.
//
// All numerical code is templated on the scalar type `Real`. Two types are
// supported: `double` for ordinary use, and `quad` (IEEE binary128) for
// verification, where bounds agree with Γ(a,x) to 1e-16 and closer.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/multiprecision/float128.hpp>

namespace igbounds {

using quad = boost::multiprecision::float128;

// Unqualified calls inside igbounds resolve to these for built-in types and
// to the boost::multiprecision overloads (via ADL) for quad.
using std::abs;
using std::ceil;
using std::exp;
using std::expm1;
using std::floor;
using std::lgamma;
using std::log;
using std::log1p;
using std::pow;
using std::sqrt;
using std::tgamma;

template <class Real>
inline bool is_finite(const Real& v) {
  return boost::math::isfinite(v);
}

template <class Real>
inline Real epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
inline Real pi() {
  return boost::math::constants::pi<Real>();
}

/// Euler–Mascheroni constant to 16 significant digits.
inline constexpr double kEulerGamma = 0.5772156649015329;

/// Euler–Mascheroni constant at the full precision of `Real`.
template <class Real>
inline Real euler_gamma() {
  return boost::math::constants::euler<Real>();
}

template <class Real>
inline double to_double(const Real& v) {
  return static_cast<double>(v);
}

/// Formats with `digits` significant digits in the style of printf's %g.
std::string format_real(double v, int digits = 17);
std::string format_real(const quad& v, int digits = 17);

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

template <class Real>
inline void require_finite(const Real& v, const char* what) {
  if (!is_finite(v)) throw std::domain_error(what);
}

template <class Real>
inline void require_positive(const Real& x, const char* what) {
  if (!(x > 0) || !is_finite(x)) throw std::domain_error(what);
}

}  // namespace detail

/// A strictly positive, finite real number (the argument x of Γ(a,x)).
template <class Real>
class PositiveReal {
 public:
  explicit PositiveReal(Real v) : value_(v) {
    detail::require_positive(v, "PositiveReal: value must be finite and > 0");
  }
  const Real& value() const { return value_; }
  operator const Real&() const { return value_; }

 private:
  Real value_;
};

/// Any finite real number (the parameter a of Γ(a,x)).
template <class Real>
class AlphaParam {
 public:
  explicit AlphaParam(Real v) : value_(v) {
    detail::require_finite(v, "AlphaParam: value must be finite");
  }
  const Real& value() const { return value_; }
  operator const Real&() const { return value_; }

 private:
  Real value_;
};

}  // namespace igbounds
