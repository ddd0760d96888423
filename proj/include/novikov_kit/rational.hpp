#pragma once

// Exact rationals and dense rational matrices.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>

#include "novikov_kit/errors.hpp"

namespace nk {

/// Canonical arbitrary-precision rational (positive denominator, reduced).
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

/// Parses "p/q", "p" or "-p/q". Decimal points and exponents are rejected
/// so that every accepted value is exactly representable.
Rat parse_rat(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rat& value);

inline BigInt numerator_of(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rat& r) { return boost::multiprecision::denominator(r); }
inline bool is_integral(const Rat& r) { return denominator_of(r) == 1; }

/// Rank over Q by Gaussian elimination.
Eigen::Index rank(RatMatrix m);

/// Inverse of a square rational matrix; throws InputError when singular.
RatMatrix inverse(const RatMatrix& m);

/// Integer power with negative exponents allowed (base must be nonzero then).
Rat pow(const Rat& base, long exponent);

}  // namespace nk
