#pragma once

// Scalar and matrix types shared by every cvnet module.
//
// All state arithmetic runs in a 50-digit binary float. At the working point
// r - 1 = 2.5e-7 the covariance entries of the optical modes reach ~1e13 while
// the EPR variances built from them are ~1e-14, so double precision cannot
// resolve the quantities the library is asked to compute.

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <limits>
#include <string>

namespace cvnet {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                           boost::multiprecision::et_off>;

}  // namespace cvnet

namespace Eigen {

template <>
struct NumTraits<cvnet::Real> : GenericNumTraits<cvnet::Real> {
  using Self = cvnet::Real;
  using Real = Self;
  using NonInteger = Self;
  using Literal = Self;
  using Nested = Self;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };

  static Self epsilon() { return std::numeric_limits<Self>::epsilon(); }
  static Self dummy_precision() { return 1000 * epsilon(); }
  static Self highest() { return (std::numeric_limits<Self>::max)(); }
  static Self lowest() { return std::numeric_limits<Self>::lowest(); }
  static Self infinity() { return std::numeric_limits<Self>::infinity(); }
  static Self quiet_NaN() { return std::numeric_limits<Self>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<Self>::digits10; }
};

}  // namespace Eigen

namespace cvnet {

using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Matrix2 = Eigen::Matrix<Real, 2, 2>;
using Vector2 = Eigen::Matrix<Real, 2, 1>;
using Matrix4 = Eigen::Matrix<Real, 4, 4>;
using Vector4 = Eigen::Matrix<Real, 4, 1>;

// Numerical tolerances for state validation.
inline constexpr double kSymmetryTol = 1e-12;  // relative
inline constexpr double kPsdTol = 1e-10;       // absolute, on eigenvalues

inline const Real& pi() {
  static const Real value = boost::math::constants::pi<Real>();
  return value;
}

inline Real two_pi() { return 2 * pi(); }

inline Real sqrt2() { return boost::multiprecision::sqrt(Real(2)); }

inline double to_double(const Real& x) { return x.convert_to<double>(); }

inline bool is_finite(const Real& x) { return boost::multiprecision::isfinite(x); }

/// Parses a decimal string at full working precision ("6.283185307179586476925").
Real parse_real(const std::string& text);

/// Shortest-ish decimal rendering with `digits` significant digits.
std::string format_real(const Real& x, int digits);

/// Complex amplitude with real and imaginary parts kept at working precision.
struct Amplitude {
  Real re{0};
  Real im{0};

  friend bool operator==(const Amplitude&, const Amplitude&) = default;
};

inline Amplitude conj(const Amplitude& a) { return {a.re, -a.im}; }

inline bool is_finite(const Amplitude& a) { return is_finite(a.re) && is_finite(a.im); }

}  // namespace cvnet
