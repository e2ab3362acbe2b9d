#pragma once

// Exact integer and rational scalars, plus the Eigen glue that lets dense
// Eigen matrices carry them.

#include <gmpxx.h>

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace cwbound {

using Integer = mpz_class;
using Rational = mpq_class;

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// Lossless text form: "p" for integers, "p/q" otherwise (lowest terms).
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Parses "p" or "p/q" (optional leading '-'); throws std::invalid_argument.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

Integer floor(const Rational& value);

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace cwbound

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };

  // Exact arithmetic: no rounding tolerance anywhere.
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
