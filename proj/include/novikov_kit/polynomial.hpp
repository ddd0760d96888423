#pragma once

// Dense univariate polynomials over a field, coefficients lowest degree first.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace nk {

template <typename Field>
class Polynomial {
 public:
  using Scalar = Field;

  Polynomial() = default;
  explicit Polynomial(std::vector<Field> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Field> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(const Field& c) { return Polynomial(std::vector<Field>{c}); }
  static Polynomial monomial(const Field& c, std::size_t k) {
    std::vector<Field> v(k + 1, Field(0));
    v[k] = c;
    return Polynomial(std::move(v));
  }
  /// The variable itself.
  static Polynomial x() { return monomial(Field(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Field>& coeffs() const { return coeffs_; }
  Field coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Field(0); }
  const Field& leading() const { return coeffs_.back(); }

  /// Number of zero coefficients below the first nonzero one.
  std::size_t low_order() const {
    std::size_t k = 0;
    while (k < coeffs_.size() && coeffs_[k] == Field(0)) ++k;
    return k;
  }

  Field operator()(const Field& at) const {
    Field acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Field> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Field(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    Polynomial out = *this;
    const Field lc = leading();
    for (auto& c : out.coeffs_) c /= lc;
    return out;
  }

  /// Divides out x^k; k must not exceed low_order().
  Polynomial shift_down(std::size_t k) const {
    if (k >= coeffs_.size()) return {};
    return Polynomial(std::vector<Field>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()));
  }
  Polynomial shift_up(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<Field> v(k, Field(0));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(std::move(v));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Field(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Field(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Field& c) {
    if (c == Field(0)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Field(-1); }
  friend Polynomial operator*(Polynomial a, const Field& c) { return a *= c; }
  friend Polynomial operator*(const Field& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Field> v(a.coeffs_.size() + b.coeffs_.size() - 1, Field(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == Field(0)) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(v));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == Field(0)) coeffs_.pop_back();
  }

  std::vector<Field> coeffs_;
};

/// Euclidean division; divisor must be nonzero.
template <typename Field>
std::pair<Polynomial<Field>, Polynomial<Field>> divmod(const Polynomial<Field>& num,
                                                       const Polynomial<Field>& den) {
  std::vector<Field> rem = num.coeffs();
  const int dd = den.degree();
  if (num.degree() < dd) return {Polynomial<Field>{}, num};
  std::vector<Field> quot(static_cast<std::size_t>(num.degree() - dd + 1), Field(0));
  const Field& lc = den.leading();
  for (int k = num.degree() - dd; k >= 0; --k) {
    const Field c = rem[static_cast<std::size_t>(k + dd)] / lc;
    quot[static_cast<std::size_t>(k)] = c;
    if (c == Field(0)) continue;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= c * den.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial<Field>(std::move(quot)), Polynomial<Field>(std::move(rem))};
}

/// Monic gcd; gcd(0, 0) = 0.
template <typename Field>
Polynomial<Field> gcd(Polynomial<Field> a, Polynomial<Field> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

/// Product of the distinct irreducible factors.
template <typename Field>
Polynomial<Field> squarefree_part(const Polynomial<Field>& p) {
  if (p.degree() <= 0) return p.monic();
  const auto g = gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

}  // namespace nk
