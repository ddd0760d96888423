#include "novikov_kit/exactalg.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

namespace nk {

namespace {

using Index = Eigen::Index;

struct Pivot {
  Index row = -1;
  Index col = -1;
};

// First nonzero entry in row-major order with minimal degree.
Pivot find_pivot(const PolyMatrix& m, Index from_row, Index from_col) {
  Pivot best;
  int best_degree = std::numeric_limits<int>::max();
  for (Index i = from_row; i < m.rows(); ++i)
    for (Index j = from_col; j < m.cols(); ++j) {
      const int d = m(i, j).degree();
      if (d >= 0 && d < best_degree) {
        best = {i, j};
        best_degree = d;
        if (d == 0) return best;
      }
    }
  return best;
}

Poly exact_quotient(const Poly& num, const Poly& den) {
  auto [q, r] = divmod(num, den);
  if (!r.is_zero()) throw std::logic_error("fraction-free elimination produced a non-exact division");
  return q;
}

void swap_cols(PolyMatrix& m, Index a, Index b) {
  if (a != b) m.col(a).swap(m.col(b));
}
void swap_rows(PolyMatrix& m, Index a, Index b) {
  if (a != b) m.row(a).swap(m.row(b));
}

// Rows [from..] of m: row_i -= q * row_t on columns [t..].
void row_axpy(PolyMatrix& m, Index target, Index source, const Poly& q, Index from_col) {
  for (Index j = from_col; j < m.cols(); ++j)
    if (!m(source, j).is_zero()) m(target, j) -= q * m(source, j);
}
void col_axpy(PolyMatrix& m, Index target, Index source, const Poly& q, Index from_row) {
  for (Index i = from_row; i < m.rows(); ++i)
    if (!m(i, source).is_zero()) m(i, target) -= q * m(i, source);
}

// Coefficients of p(a + y).
Poly taylor_shift(const Poly& p, const Rat& a) {
  std::vector<Rat> c = p.coeffs();
  const auto n = c.size();
  if (a == 0 || n == 0) return p;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += a * c[j];
  return Poly(std::move(c));
}

// Descartes bound for the number of roots of p in the open interval (a, b).
std::size_t descartes_bound(const Poly& p, const Rat& a, const Rat& b) {
  // h(y) = p(a + (b - a) y) has the roots of p in (a, b) on (0, 1).
  std::vector<Rat> h = taylor_shift(p, a).coeffs();
  const Rat w = b - a;
  Rat scale(1);
  for (auto& c : h) {
    c *= scale;
    scale *= w;
  }
  // (1 + y)^n h(1 / (1 + y)) maps (0, 1) to (0, inf).
  std::reverse(h.begin(), h.end());
  return sign_variations(taylor_shift(Poly(std::move(h)), Rat(1)));
}

// Cauchy root bound rounded up to a power of two.
Rat root_bound(const Poly& p) {
  Rat m(0);
  const Rat& lc = p.leading();
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rat(abs(p.coeffs()[static_cast<std::size_t>(i)] / lc)));
  Rat b(1);
  while (b <= m + 1) b *= 2;
  return b;
}

// Positive divisors of |n| when small enough to enumerate by trial division.
std::optional<std::vector<BigInt>> small_divisors(BigInt n) {
  n = abs(n);
  if (n == 0 || n > 1000000) return std::nullopt;
  std::vector<BigInt> out;
  for (BigInt d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

// A rational root of g inside (lo, hi), if the rational-root candidates can be enumerated.
std::optional<Rat> rational_root_in(const Poly& g, const Rat& lo, const Rat& hi) {
  if (g.degree() == 1) {
    Rat r = -g.coeff(0) / g.coeff(1);
    if (r > lo && r < hi) return r;
    return std::nullopt;
  }
  // Clear denominators to integer coefficients.
  BigInt l(1);
  for (const auto& c : g.coeffs()) l = boost::multiprecision::lcm(l, denominator_of(c));
  const BigInt a0 = numerator_of(g.coeff(0) * Rat(l));
  const BigInt an = numerator_of(g.leading() * Rat(l));
  const auto ps = small_divisors(a0);
  const auto qs = small_divisors(an);
  if (!ps || !qs) return std::nullopt;
  for (const auto& q : *qs)
    for (const auto& p : *ps) {
      const Rat cand = Rat(p) / Rat(q);
      if (cand > lo && cand < hi && g(cand) == 0) return cand;
    }
  return std::nullopt;
}

int sign_of(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

}  // namespace

PolyMatrix clear_offsets(const LaurentMatrix& m, std::vector<int>* shifts) {
  PolyMatrix out(m.rows(), m.cols());
  if (shifts) shifts->assign(static_cast<std::size_t>(m.rows()), 0);
  for (Index i = 0; i < m.rows(); ++i) {
    int low = std::numeric_limits<int>::max();
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) low = std::min(low, m(i, j).offset());
    const int shift = (low == std::numeric_limits<int>::max() || low >= 0) ? 0 : -low;
    if (shifts) (*shifts)[static_cast<std::size_t>(i)] = shift;
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).times_power(shift);
  }
  return out;
}

std::size_t rank_generic(const LaurentMatrix& lm) {
  PolyMatrix m = clear_offsets(lm);
  Poly prev = Poly::constant(Rat(1));
  Index r = 0;
  while (r < m.rows() && r < m.cols()) {
    const Pivot p = find_pivot(m, r, r);
    if (p.row < 0) break;
    swap_rows(m, p.row, r);
    swap_cols(m, p.col, r);
    for (Index i = r + 1; i < m.rows(); ++i) {
      for (Index j = r + 1; j < m.cols(); ++j) {
        Poly v = m(r, r) * m(i, j) - m(i, r) * m(r, j);
        m(i, j) = v.is_zero() ? Poly{} : exact_quotient(v, prev);
      }
      m(i, r) = Poly{};
    }
    prev = m(r, r);
    ++r;
  }
  return static_cast<std::size_t>(r);
}

std::size_t evaluate_rank(const LaurentMatrix& m, const Rat& s0) {
  if (s0 <= 0) throw ParameterError("evaluation point s0 must be positive (s0 = exp(-T/N))");
  return static_cast<std::size_t>(rank(evaluate(m, s0)));
}

InvariantFactors invariant_factors(const LaurentMatrix& lm) {
  InvariantFactors out;
  PolyMatrix m = clear_offsets(lm, &out.row_shifts);
  for (Index t = 0; t < m.rows() && t < m.cols(); ++t) {
    const Pivot p = find_pivot(m, t, t);
    if (p.row < 0) break;
    swap_rows(m, p.row, t);
    swap_cols(m, p.col, t);
    for (;;) {
      for (Index i = t + 1; i < m.rows(); ++i)
        if (!m(i, t).is_zero()) row_axpy(m, i, t, divmod(m(i, t), m(t, t)).first, t);
      Index below = -1;
      for (Index i = t + 1; i < m.rows(); ++i)
        if (!m(i, t).is_zero() && (below < 0 || m(i, t).degree() < m(below, t).degree())) below = i;
      if (below >= 0) {
        // a nonzero remainder has smaller degree than the pivot: promote it
        swap_rows(m, below, t);
        continue;
      }
      for (Index j = t + 1; j < m.cols(); ++j)
        if (!m(t, j).is_zero()) col_axpy(m, j, t, divmod(m(t, j), m(t, t)).first, t);
      Index best = -1;
      for (Index j = t + 1; j < m.cols(); ++j)
        if (!m(t, j).is_zero() && (best < 0 || m(t, j).degree() < m(t, best).degree())) best = j;
      if (best >= 0) {
        swap_cols(m, best, t);
        continue;
      }
      // pivot must divide the remaining block
      Index bad = -1;
      for (Index i = t + 1; i < m.rows() && bad < 0; ++i)
        for (Index j = t + 1; j < m.cols(); ++j)
          if (!m(i, j).is_zero() && !divmod(m(i, j), m(t, t)).second.is_zero()) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_axpy(m, t, bad, Poly::constant(Rat(-1)), t);
    }
    Poly f = m(t, t).monic();
    const auto k = f.low_order();
    out.factors.push_back(f.shift_down(k));
    out.stripped_powers.push_back(static_cast<int>(k));
  }
  return out;
}

std::size_t sign_variations(const Poly& q) {
  std::size_t v = 0;
  int last = 0;
  for (const auto& c : q.coeffs()) {
    const int s = sign_of(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

std::vector<RootInterval> positive_real_roots(const Poly& p) {
  if (p.is_zero()) throw ParameterError("the zero polynomial has no isolated roots");
  const Poly g = squarefree_part(p.shift_down(p.low_order()));
  std::vector<RootInterval> out;
  if (g.degree() <= 0) return out;

  std::vector<std::pair<Rat, Rat>> work{{Rat(0), root_bound(g)}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    const auto v = descartes_bound(g, a, b);
    if (v == 0) continue;
    const Rat mid = (a + b) / 2;
    if (v == 1) {
      if (g(mid) == 0) {
        out.push_back({mid, mid});
      } else if (auto r = rational_root_in(g, a, b)) {
        out.push_back({*r, *r});
      } else {
        Rat lo = a, hi = b;
        // an endpoint may be a root found at an earlier split; move off it
        while (g(lo) == 0 || g(hi) == 0) {
          const Rat m = (lo + hi) / 2;
          if (g(m) == 0) break;
          (descartes_bound(g, lo, m) == 1 ? hi : lo) = m;
        }
        if (g((lo + hi) / 2) == 0 && (g(lo) == 0 || g(hi) == 0)) {
          lo = hi = (lo + hi) / 2;
          out.push_back({lo, hi});
          continue;
        }
        // shrink to a quarter of the width by sign-based bisection
        const int slo = sign_of(g(lo));
        for (int step = 0; step < 2; ++step) {
          const Rat m = (lo + hi) / 2;
          const int sm = sign_of(g(m));
          if (sm == 0) {
            lo = hi = m;
            break;
          }
          (sm == slo ? lo : hi) = m;
        }
        out.push_back({lo, hi});
      }
      continue;
    }
    if (g(mid) == 0) out.push_back({mid, mid});
    work.emplace_back(a, mid);
    work.emplace_back(mid, b);
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

bool vanishes_at(const Poly& q, const RootInterval& iv) {
  if (q.is_zero()) return true;
  if (iv.exact()) return q(iv.lo) == 0;
  return sign_of(q(iv.lo)) * sign_of(q(iv.hi)) < 0;
}

}  // namespace nk
