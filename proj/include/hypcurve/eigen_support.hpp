#pragma once

// Eigen interoperability for the MPFR scalar. Include this before any Eigen header.

#include <limits>

#include "hypcurve/scalar.hpp"

#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<hypcurve::Real> : GenericNumTraits<hypcurve::Real> {
  using Real = hypcurve::Real;
  using NonInteger = hypcurve::Real;
  using Literal = hypcurve::Real;
  using Nested = hypcurve::Real;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 10,
    MulCost = 40
  };
  static inline Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static inline Real dummy_precision() { return epsilon() * 1024; }
  static inline Real highest() { return (std::numeric_limits<Real>::max)(); }
  static inline Real lowest() { return (std::numeric_limits<Real>::lowest)(); }
  static inline Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static inline Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static inline int digits10() { return static_cast<int>(Real::default_precision()); }
};

}  // namespace Eigen

#include <Eigen/Dense>

namespace hypcurve {

template <class T>
using EMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using EVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

}  // namespace hypcurve
