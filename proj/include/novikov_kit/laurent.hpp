#pragma once

// Laurent polynomials s^offset * p(s) in the deformation variable s, and
// dense matrices over them.

#include <iosfwd>

#include <Eigen/Core>

#include "novikov_kit/polynomial.hpp"
#include "novikov_kit/rational.hpp"

namespace nk {

using Poly = Polynomial<Rat>;

/// s^offset * poly(s) with poly(0) != 0, or the zero element (offset 0).
class Laurent {
 public:
  Laurent() = default;
  Laurent(int c) : Laurent(Rat(c)) {}  // NOLINT: Eigen needs Scalar(0), Scalar(1)
  Laurent(const Rat& c) : Laurent(0, Poly::constant(c)) {}  // NOLINT
  Laurent(int offset, Poly poly) : offset_(offset), poly_(std::move(poly)) { normalize(); }

  static Laurent monomial(const Rat& c, int exponent) { return Laurent(exponent, Poly::constant(c)); }

  bool is_zero() const { return poly_.is_zero(); }
  int offset() const { return offset_; }
  const Poly& poly() const { return poly_; }
  /// Lowest and highest exponent carrying a nonzero coefficient.
  int low_exponent() const { return offset_; }
  int high_exponent() const { return offset_ + poly_.degree(); }

  /// Value at s0; s0 must be nonzero when the offset is negative.
  Rat operator()(const Rat& s0) const { return is_zero() ? Rat(0) : nk::pow(s0, offset_) * poly_(s0); }

  /// The polynomial s^(offset + k); requires offset + k >= 0.
  Poly times_power(int k) const;

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o) { return *this += -o; }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(const Laurent& a) { return Laurent(a.offset_, -a.poly_); }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return Laurent(a.offset_ + b.offset_, a.poly_ * b.poly_);
  }
  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.offset_ == b.offset_ && a.poly_ == b.poly_;
  }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

 private:
  void normalize();

  int offset_ = 0;
  Poly poly_;
};

using LaurentMatrix = Eigen::Matrix<Laurent, Eigen::Dynamic, Eigen::Dynamic>;
using PolyMatrix = Eigen::Matrix<Poly, Eigen::Dynamic, Eigen::Dynamic>;

/// Coefficient-wise evaluation at s0.
RatMatrix evaluate(const LaurentMatrix& m, const Rat& s0);

/// True when every entry is the zero Laurent polynomial.
bool is_zero(const LaurentMatrix& m);

/// Plain coefficient product (no reliance on Eigen's BLAS kernels for a ring type).
LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b);

/// Human-readable forms such as "2*s^-1 - 1 + s^3".
std::ostream& operator<<(std::ostream& os, const Poly& p);
std::ostream& operator<<(std::ostream& os, const Laurent& l);

}  // namespace nk

namespace Eigen {

template <>
struct NumTraits<nk::Laurent> : GenericNumTraits<nk::Laurent> {
  using Real = nk::Laurent;
  using NonInteger = nk::Laurent;
  using Nested = nk::Laurent;
  using Literal = nk::Laurent;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 100
  };
  static constexpr int digits10() { return 0; }
};

template <>
struct NumTraits<nk::Poly> : GenericNumTraits<nk::Poly> {
  using Real = nk::Poly;
  using NonInteger = nk::Poly;
  using Nested = nk::Poly;
  using Literal = nk::Poly;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 100
  };
  static constexpr int digits10() { return 0; }
};

}  // namespace Eigen
