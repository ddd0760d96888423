#include "novikov_kit/morse.hpp"

namespace nk {

LambdaPoly morse_polynomial(const std::vector<CriticalSubsetData>& critical) {
  LambdaPoly M;
  for (const auto& c : critical) {
    if (c.index < 0) throw InputError("critical subset \"" + c.label + "\" has a negative index");
    std::vector<Rat> coeffs;
    for (long p : c.poincare) {
      if (p < 0) throw InputError("critical subset \"" + c.label + "\" has a negative Poincare coefficient");
      coeffs.emplace_back(p);
    }
    M += LambdaPoly(std::move(coeffs)).shift_up(static_cast<std::size_t>(c.index));
  }
  return M;
}

LambdaPoly novikov_polynomial(const std::vector<std::size_t>& background) {
  std::vector<Rat> coeffs;
  for (auto b : background) coeffs.emplace_back(static_cast<long>(b));
  return LambdaPoly(std::move(coeffs));
}

MorseReport certify(const LambdaPoly& M, const LambdaPoly& N) {
  const LambdaPoly D = M - N;
  CertificateFailure failure{D(Rat(-1)), {}, D};
  std::vector<Rat> q;
  Rat running(0);
  // q_k = D_k - q_{k-1}; the last one equals (-1)^deg D(-1) and is the remainder
  for (int k = 0; k < D.degree(); ++k) {
    running = D.coeff(static_cast<std::size_t>(k)) - running;
    q.push_back(running);
    if (running < 0 || !is_integral(running)) failure.negative_q.emplace_back(k, running);
  }
  if (failure.remainder_at_minus1 == 0 && failure.negative_q.empty()) {
    LambdaPoly Q(std::move(q));
    if (LambdaPoly({Rat(1), Rat(1)}) * Q != D) throw std::logic_error("certificate does not reproduce M - N");
    return {M, N, Certificate{std::move(Q)}};
  }
  if (failure.remainder_at_minus1 != 0 && D.degree() >= 0) {
    // report the full quotient sequence, including the top coefficient
    const Rat top = D.coeff(static_cast<std::size_t>(D.degree())) - running;
    if (top < 0 || !is_integral(top)) failure.negative_q.emplace_back(D.degree(), top);
  }
  return {M, N, std::move(failure)};
}

std::vector<std::size_t> local_model_contribution(const CriticalSubsetData& c) {
  if (!c.local_model) throw ParameterError("critical subset \"" + c.label + "\" has no local model");
  NovikovInput in;
  in.pair = c.local_model->pair;
  in.F = c.local_model->F;
  for (CellId e : in.pair.complex.cells(1)) in.omega.weight[e] = Rat(0);
  const auto betti = background_betti(in);
  std::vector<std::size_t> out(static_cast<std::size_t>(c.index), 0);
  out.insert(out.end(), betti.begin(), betti.end());
  return out;
}

std::vector<long> integer_coefficients(const LambdaPoly& p) {
  std::vector<long> out;
  for (const auto& c : p.coeffs()) {
    if (!is_integral(c)) throw std::logic_error("polynomial coefficient is not an integer");
    out.push_back(numerator_of(c).convert_to<long>());
  }
  return out;
}

}  // namespace nk
