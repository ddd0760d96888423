#include "novikov_kit/laurent.hpp"

#include <ostream>

namespace nk {

void Laurent::normalize() {
  if (poly_.is_zero()) {
    offset_ = 0;
    return;
  }
  const auto k = poly_.low_order();
  if (k > 0) {
    poly_ = poly_.shift_down(k);
    offset_ += static_cast<int>(k);
  }
}

Poly Laurent::times_power(int k) const {
  if (is_zero()) return {};
  const int e = offset_ + k;
  if (e < 0) throw ParameterError("negative exponent left after shifting a Laurent entry");
  return poly_.shift_up(static_cast<std::size_t>(e));
}

Laurent& Laurent::operator+=(const Laurent& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int base = std::min(offset_, o.offset_);
  Poly sum = poly_.shift_up(static_cast<std::size_t>(offset_ - base)) +
             o.poly_.shift_up(static_cast<std::size_t>(o.offset_ - base));
  *this = Laurent(base, std::move(sum));
  return *this;
}

RatMatrix evaluate(const LaurentMatrix& m, const Rat& s0) {
  RatMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j)(s0);
  return out;
}

bool is_zero(const LaurentMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols() != b.rows()) throw ParameterError("matrix product dimension mismatch");
  LaurentMatrix out = LaurentMatrix::Constant(a.rows(), b.cols(), Laurent{});
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

namespace {

void write_terms(std::ostream& os, const Poly& p, int offset) {
  bool first = true;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    Rat c = p.coeffs()[i];
    if (c == 0) continue;
    const int e = offset + static_cast<int>(i);
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    }
    first = false;
    if (e == 0) {
      os << to_string(c);
      continue;
    }
    if (c == -1)
      os << "-";
    else if (c != 1)
      os << to_string(c) << "*";
    os << "s";
    if (e != 1) os << "^" << e;
  }
  if (first) os << "0";
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const Poly& p) {
  write_terms(os, p, 0);
  return os;
}

std::ostream& operator<<(std::ostream& os, const Laurent& l) {
  write_terms(os, l.poly(), l.offset());
  return os;
}

}  // namespace nk
