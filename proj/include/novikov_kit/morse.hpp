#pragma once

// Morse counting polynomial, Novikov polynomial and the (1 + lambda)
// certificate of the Morse-type inequalities.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "novikov_kit/novikov.hpp"

namespace nk {

/// Polynomials in lambda (lowest degree first).
using LambdaPoly = Polynomial<Rat>;

/// A neighbourhood model of a critical subset: its cohomology, twisted by
/// F restricted to it and the orientation bundle, gives P_{C,F}.
struct LocalModel {
  CellPair pair;
  LocalSystem F = LocalSystem::trivial();
};

struct CriticalSubsetData {
  std::string label;
  int index = 0;
  std::vector<long> poincare;
  std::optional<LocalModel> local_model;
};

/// Sum over C of lambda^ind(C) P_C(lambda). Negative coefficients are an InputError.
LambdaPoly morse_polynomial(const std::vector<CriticalSubsetData>& critical);

/// Sum of beta_i lambda^i.
LambdaPoly novikov_polynomial(const std::vector<std::size_t>& background);
inline LambdaPoly novikov_polynomial(const NovikovResult& r) { return novikov_polynomial(r.background); }

struct Certificate {
  LambdaPoly Q;
};

struct CertificateFailure {
  Rat remainder_at_minus1;                    ///< D(-1) for D = M - N
  std::vector<std::pair<int, Rat>> negative_q;  ///< (k, q_k) with q_k < 0 or non-integral
  LambdaPoly deficit;                         ///< D
};

struct MorseReport {
  LambdaPoly M;
  LambdaPoly N;
  std::variant<Certificate, CertificateFailure> verdict;

  bool holds() const { return std::holds_alternative<Certificate>(verdict); }
};

/// q_k = sum_{i <= k} (-1)^(k - i) D_i; a certificate iff D(-1) = 0 and all q_k are
/// non-negative integers, in which case M - N = (1 + lambda) Q exactly.
MorseReport certify(const LambdaPoly& M, const LambdaPoly& N);

/// Betti vector of the local model (untwisted deformation) shifted up by ind(C).
/// Throws ParameterError when no local model is present.
std::vector<std::size_t> local_model_contribution(const CriticalSubsetData& c);

/// Coefficients as integers; throws when some coefficient is not integral.
std::vector<long> integer_coefficients(const LambdaPoly& p);

}  // namespace nk
