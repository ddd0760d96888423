#pragma once

// Exact ranks, Smith invariant factors and positive-root isolation for
// matrices over Q[s, 1/s].

#include <cstddef>
#include <vector>

#include "novikov_kit/laurent.hpp"

namespace nk {

/// Rank over the rational function field Q(s).
std::size_t rank_generic(const LaurentMatrix& m);

/// Rank of the rational matrix m(s0); s0 must be positive.
std::size_t evaluate_rank(const LaurentMatrix& m, const Rat& s0);

struct InvariantFactors {
  /// Monic, each with its power of s removed; factors[i] divides factors[i+1].
  std::vector<Poly> factors;
  /// Power of s removed from factors[i] (the s = 0, T = +inf part).
  std::vector<int> stripped_powers;
  /// Row shifts used to clear negative offsets before elimination.
  std::vector<int> row_shifts;
};

/// Smith form over Q[s] of the offset-cleared matrix, reported up to units of Q[s, 1/s].
InvariantFactors invariant_factors(const LaurentMatrix& m);

/// Polynomial matrix obtained by multiplying each row that has negative
/// exponents by the smallest power of s making it polynomial. The shifts are returned through `shifts`.
PolyMatrix clear_offsets(const LaurentMatrix& m, std::vector<int>* shifts = nullptr);

/// A closed interval [lo, hi] (lo == hi for a detected rational root) that
/// contains exactly one root and has no root at an endpoint otherwise.
struct RootInterval {
  Rat lo;
  Rat hi;
  bool exact() const { return lo == hi; }
};

/// Isolating intervals for the distinct positive real roots, ordered by lo.
std::vector<RootInterval> positive_real_roots(const Poly& p);

/// True when the squarefree polynomial q vanishes at the root isolated by iv,
/// given that iv isolates a root of some multiple of q.
bool vanishes_at(const Poly& q, const RootInterval& iv);

/// Number of sign variations of q's coefficient sequence (zeros skipped).
std::size_t sign_variations(const Poly& q);

}  // namespace nk
