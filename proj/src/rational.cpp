#include "novikov_kit/rational.hpp"

#include <cctype>
#include <utility>

namespace nk {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw InputError("not an exact rational \"" + std::string(text) + "\" (expected p/q)");
  const BigInt d(std::string{den});
  if (d == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
  Rat r = Rat(BigInt(std::string{num})) / Rat(d);
  return negative ? Rat(-r) : r;
}

std::string to_string(const Rat& value) { return value.str(); }

Eigen::Index rank(RatMatrix m) {
  Eigen::Index r = 0;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.row(piv).swap(m.row(r));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (m(i, c) == 0) continue;
      const Rat f = m(i, c) / m(r, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("cannot invert a non-square matrix");
  const Eigen::Index n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = c; i < n; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw InputError("matrix is not invertible");
    a.row(piv).swap(a.row(c));
    inv.row(piv).swap(inv.row(c));
    const Rat p = a(c, c);
    a.row(c) /= p;
    inv.row(c) /= p;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rat f = a(i, c);
      a.row(i) -= f * a.row(c);
      inv.row(i) -= f * inv.row(c);
    }
  }
  return inv;
}

Rat pow(const Rat& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw ParameterError("zero raised to a negative power");
    return Rat(1) / pow(base, -exponent);
  }
  Rat acc(1), b = base;
  auto e = static_cast<unsigned long>(exponent);
  while (e) {
    if (e & 1UL) acc *= b;
    b *= b;
    e >>= 1U;
  }
  return acc;
}

}  // namespace nk
