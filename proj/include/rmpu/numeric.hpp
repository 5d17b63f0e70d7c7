#pragma once

// Scalar types shared by the exact (rational) and floating-point code paths.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rmpu {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXc = Eigen::MatrixXcd;

/// Raised when a request exceeds an enumeration or materialization cap.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised for requests the library deliberately does not support.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <typename Scalar>
Scalar from_integer(const BigInt& value) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return Rational(value);
  } else {
    return static_cast<Scalar>(value.convert_to<double>());
  }
}

template <typename Scalar>
Scalar from_ratio(std::int64_t num, std::int64_t den) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return Rational(num, den);
  } else {
    return static_cast<Scalar>(num) / static_cast<Scalar>(den);
  }
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Integer power in the target scalar type; exact for Rational.
template <typename Scalar>
Scalar ipow(std::int64_t base, int exponent) {
  if (exponent < 0) {
    return Scalar(1) / ipow<Scalar>(base, -exponent);
  }
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return Rational(boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent)));
  } else {
    Scalar result(1);
    Scalar b(static_cast<double>(base));
    for (int e = exponent; e > 0; e >>= 1) {
      if (e & 1) result *= b;
      b *= b;
    }
    return result;
  }
}

/// Parses "p/q", an integer, or a decimal literal ("0.25") into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);

}  // namespace rmpu
