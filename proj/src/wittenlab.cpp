#include "novikov_kit/wittenlab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

namespace nk {

namespace {

// Solves (m - shift) x = b for a symmetric tridiagonal m (Thomas algorithm).
Eigen::VectorXd solve_shifted(const Tridiagonal& m, double shift, const Eigen::VectorXd& b) {
  const Eigen::Index n = m.size();
  Eigen::VectorXd c(n), d(n);
  double denom = m.diag(0) - shift;
  c(0) = n > 1 ? m.off(0) / denom : 0.0;
  d(0) = b(0) / denom;
  for (Eigen::Index i = 1; i < n; ++i) {
    denom = m.diag(i) - shift - m.off(i - 1) * c(i - 1);
    if (denom == 0.0) denom = 1e-300;
    c(i) = i + 1 < n ? m.off(i) / denom : 0.0;
    d(i) = (b(i) - m.off(i - 1) * d(i - 1)) / denom;
  }
  Eigen::VectorXd x(n);
  x(n - 1) = d(n - 1);
  for (Eigen::Index i = n - 2; i >= 0; --i) x(i) = d(i) - c(i) * x(i + 1);
  return x;
}

}  // namespace

std::string_view to_string(LinePotential p) {
  switch (p) {
    case LinePotential::quadratic_both_up:
      return "quadratic_both_up";
    case LinePotential::quadratic_both_down:
      return "quadratic_both_down";
    case LinePotential::quadratic_mixed:
      return "quadratic_mixed";
    case LinePotential::custom:
      return "custom";
  }
  return "custom";
}

LinePotential parse_line_potential(std::string_view name) {
  for (auto p : {LinePotential::quadratic_both_up, LinePotential::quadratic_both_down, LinePotential::quadratic_mixed,
                 LinePotential::custom})
    if (name == to_string(p)) return p;
  throw ParameterError("unknown line model \"" + std::string(name) + "\"");
}

double LineModel::dh(int i) const {
  const double t = point(i);
  switch (kind) {
    case LinePotential::quadratic_both_up:
      return t;
    case LinePotential::quadratic_both_down:
      return -t;
    case LinePotential::quadratic_mixed:
      return std::abs(t) < t0 ? (t * t + t0 * t0) / (2 * t0) : std::abs(t);
    case LinePotential::custom:
      return custom_dh(i);
  }
  return 0;
}

double LineModel::ddh(int i) const {
  const double t = point(i);
  switch (kind) {
    case LinePotential::quadratic_both_up:
      return 1;
    case LinePotential::quadratic_both_down:
      return -1;
    case LinePotential::quadratic_mixed:
      return std::abs(t) < t0 ? t / t0 : (t > 0 ? 1 : -1);
    case LinePotential::custom:
      return custom_ddh(i);
  }
  return 0;
}

Eigen::VectorXd Tridiagonal::apply(const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = diag.cwiseProduct(v);
  for (Eigen::Index i = 0; i + 1 < size(); ++i) {
    out(i) += off(i) * v(i + 1);
    out(i + 1) += off(i) * v(i);
  }
  return out;
}

std::array<Tridiagonal, 2> assemble_witten_1d(const LineModel& model) {
  if (model.n < 16) throw ParameterError("line model needs at least 16 grid points");
  if (model.L <= 0 || model.T <= 0) throw ParameterError("line model needs L > 0 and T > 0");
  if (model.kind == LinePotential::custom &&
      (model.custom_dh.size() != model.n || model.custom_ddh.size() != model.n))
    throw ParameterError("custom line model needs h' and h'' at every grid point");
  const Eigen::Index m = model.n - 2;
  const double h = model.spacing(), kinetic = 1.0 / (model.T * h * h);
  std::array<Tridiagonal, 2> out;
  for (int p = 0; p < 2; ++p) {
    out[p].diag.resize(m);
    out[p].off = Eigen::VectorXd::Constant(m - 1, -kinetic);
    for (Eigen::Index i = 0; i < m; ++i) {
      const int g = static_cast<int>(i) + 1;
      const double dh = model.dh(g);
      out[p].diag(i) = 2 * kinetic + model.T * dh * dh + (p == 0 ? -1 : 1) * model.ddh(g);
    }
  }
  return out;
}

Eigen::VectorXd spectrum(const Tridiagonal& m, int k) {
  if (k < 1 || k > m.size()) throw ParameterError("requested more eigenvalues than the matrix dimension");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(m.diag, m.off, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolver did not converge");
  return solver.eigenvalues().head(k);
}

Eigen::VectorXd eigenvector(const Tridiagonal& m, double eigenvalue) {
  const double shift = eigenvalue - 1e-7 * std::max(1.0, std::abs(eigenvalue));
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m.size()).normalized();
  for (int it = 0; it < 8; ++it) {
    Eigen::VectorXd w = solve_shifted(m, shift, v);
    w.normalize();
    const double change = std::min((w - v).norm(), (w + v).norm());
    v = w;
    if (change < 1e-13) break;
  }
  if (v.sum() < 0) v = -v;
  return v;
}

KernelCount kernel_dimension(const Eigen::VectorXd& ev, double gap) {
  KernelCount out;
  if (ev.size() < 2) return out;
  const double top = ev(ev.size() - 1);
  if (!(top > 1e-8)) return out;
  Eigen::Index j = 0;
  while (ev(j) < gap * top) ++j;
  out.first_positive = ev(j);
  out.threshold = gap * ev(j);
  for (Eigen::Index i = 0; i < j; ++i)
    if (ev(i) >= out.threshold) return out;
  out.dim = static_cast<int>(j);
  return out;
}

std::optional<Eigen::VectorXd> oracle_levels(LinePotential kind, int degree, int k) {
  int first;
  if (kind == LinePotential::quadratic_both_up)
    first = degree == 0 ? 0 : 2;
  else if (kind == LinePotential::quadratic_both_down)
    first = degree == 0 ? 2 : 0;
  else
    return std::nullopt;
  Eigen::VectorXd out(k);
  for (int j = 0; j < k; ++j) out(j) = first + 2.0 * j;
  return out;
}

std::optional<double> oracle_error(const DegreeSpectrum& d) {
  if (!d.oracle) return std::nullopt;
  return (d.eigenvalues - *d.oracle).cwiseAbs().maxCoeff();
}

SpectrumReport witten_spectrum(const LineModel& model, int k, double gap) {
  const auto ops = assemble_witten_1d(model);
  SpectrumReport out;
  for (int p = 0; p < 2; ++p) {
    auto& d = out.degree[static_cast<std::size_t>(p)];
    d.eigenvalues = spectrum(ops[static_cast<std::size_t>(p)], k);
    d.kernel = kernel_dimension(d.eigenvalues, gap);
    d.oracle = oracle_levels(model.kind, p, k);
  }
  // the nonzero parts of the two spectra pair up
  const auto& a = out.degree[0];
  const auto& b = out.degree[1];
  const Eigen::Index ka = a.kernel.dim.value_or(0), kb = b.kernel.dim.value_or(0);
  const Eigen::Index pairs = std::min(a.eigenvalues.size() - ka, b.eigenvalues.size() - kb);
  for (Eigen::Index i = 0; i < pairs; ++i) {
    const double x = a.eigenvalues(ka + i), y = b.eigenvalues(kb + i);
    out.pairing_error = std::max(out.pairing_error, std::abs(x - y) / std::max(std::abs(x), std::abs(y)));
  }
  return out;
}

KernelComparison kernel_vs_novikov(const LineModel& model, const std::vector<std::size_t>& background, int k,
                                   double gap) {
  const auto report = witten_spectrum(model, k, gap);
  KernelComparison out;
  out.novikov = background;
  out.kernel = {report.degree[0].kernel.dim, report.degree[1].kernel.dim};
  out.conclusive = out.kernel[0].has_value() && out.kernel[1].has_value();
  out.agree = out.conclusive && background.size() == 2 && static_cast<std::size_t>(*out.kernel[0]) == background[0] &&
              static_cast<std::size_t>(*out.kernel[1]) == background[1];
  return out;
}

std::vector<ConcentrationRow> concentration(LineModel model, const std::vector<double>& radii,
                                            const std::vector<double>& Ts, double gap) {
  std::vector<ConcentrationRow> out;
  for (double T : Ts) {
    model.T = T;
    const auto ops = assemble_witten_1d(model);
    int degree = -1;
    double lambda = 0;
    for (int p = 0; p < 2 && degree < 0; ++p) {
      const auto ev = spectrum(ops[static_cast<std::size_t>(p)], 4);
      const auto kernel = kernel_dimension(ev, gap);
      if (!kernel.dim) throw ParameterError("kernel is not resolved at T = " + std::to_string(T));
      if (*kernel.dim > 0) {
        degree = p;
        lambda = ev(0);
      }
    }
    if (degree < 0) throw ParameterError("the model has an empty kernel");
    const Eigen::VectorXd v = eigenvector(ops[static_cast<std::size_t>(degree)], lambda);
    ConcentrationRow row{T, degree, {}};
    // integrate the piecewise-linear density through the Dirichlet end points
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(model.n);
    rho.segment(1, v.size()) = v.cwiseAbs2();
    const double h = model.spacing();
    const double total = h * (rho.sum() - 0.5 * (rho(0) + rho(model.n - 1)));
    for (double r : radii) {
      double tail = 0;
      for (int i = 0; i + 1 < model.n; ++i) {
        const double a = model.point(i), b = model.point(i + 1);
        // pieces of [a, b] with |t| > r
        for (const auto& [lo, hi] : {std::pair{std::max(a, r), b}, std::pair{a, std::min(b, -r)}}) {
          if (hi <= lo) continue;
          const double ra = rho(i) + (rho(i + 1) - rho(i)) * (lo - a) / h;
          const double rb = rho(i) + (rho(i + 1) - rho(i)) * (hi - a) / h;
          tail += 0.5 * (ra + rb) * (hi - lo);
        }
      }
      row.tail.push_back(tail / total);
    }
    out.push_back(std::move(row));
  }
  return out;
}

double gaussian_tail(double T, double r) { return std::erfc(std::sqrt(T) * r); }

ScalarModel2D assemble_witten_2d_scalar(const Eigen::VectorXd& f, double T, int n_t, double L) {
  const int n_x = static_cast<int>(f.size());
  if (n_x < 16 || n_t < 32) throw ParameterError("2D grid too coarse (need n_x >= 16 and n_t >= 32)");
  if (!(L > 1) || !(T > 0)) throw ParameterError("2D model needs L > 1 and T > 0");
  const double dx = 2 * std::numbers::pi / n_x, dt = (L - 1) / n_t;
  auto t_at = [&](double k) { return 1 + k * dt; };
  auto idx = [&](int j, int k) { return static_cast<Eigen::Index>(k) * n_x + ((j % n_x) + n_x) % n_x; };

  // f' and f'' by periodic central differences
  Eigen::VectorXd fp(n_x), fpp(n_x);
  for (int j = 0; j < n_x; ++j) {
    const double a = f((j + n_x - 1) % n_x), b = f((j + 1) % n_x);
    fp(j) = (b - a) / (2 * dx);
    fpp(j) = (b - 2 * f(j) + a) / (dx * dx);
  }

  const Eigen::Index size = static_cast<Eigen::Index>(n_x) * n_t;
  ScalarModel2D out;
  out.mass.resize(size);
  out.n_x = n_x;
  out.n_t = n_t;
  out.L = L;
  out.T = T;
  out.potential_min = std::numeric_limits<double>::infinity();
  std::vector<Eigen::Triplet<double>> entries;
  auto couple = [&](Eigen::Index a, Eigen::Index b, double w) {
    entries.emplace_back(a, a, w);
    entries.emplace_back(b, b, w);
    entries.emplace_back(a, b, -w);
    entries.emplace_back(b, a, -w);
  };
  for (int k = 0; k < n_t; ++k) {
    const double t = t_at(k), half = k == 0 ? 0.5 : 1.0;
    for (int j = 0; j < n_x; ++j) {
      const Eigen::Index i = idx(j, k);
      out.mass(i) = t * half * dx * dt;
      // (1/T)|u_x|^2 / t^2 with the area element t dx dt
      couple(i, idx(j + 1, k), half * dt / (T * t * dx));
      // (1/T)|u_t|^2 at the midpoint t_{k+1/2}; u vanishes at t = L
      const double w = t_at(k + 0.5) * dx / (T * dt);
      if (k + 1 < n_t)
        couple(i, idx(j, k + 1), w);
      else
        entries.emplace_back(i, i, w);
      const double a = -(fpp(j) / 2 + 2 * f(j));
      const double omega2 = t * t * (fp(j) * fp(j) / 4 + f(j) * f(j));
      const double V = a + T * omega2;
      out.potential_min = std::min(out.potential_min, V);
      entries.emplace_back(i, i, V * out.mass(i));
    }
  }
  Eigen::SparseMatrix<double> K(size, size);
  K.setFromTriplets(entries.begin(), entries.end());
  const Eigen::VectorXd s = out.mass.cwiseSqrt().cwiseInverse();
  out.matrix = s.asDiagonal() * K * s.asDiagonal();
  out.matrix.makeCompressed();
  return out;
}

double bottom_eigenvalue(const ScalarModel2D& m) {
  const double shift = m.potential_min - 1.0;
  Eigen::SparseMatrix<double> A = m.matrix;
  for (Eigen::Index i = 0; i < A.rows(); ++i) A.coeffRef(i, i) -= shift;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
  if (ldlt.info() != Eigen::Success) throw std::runtime_error("factorisation of the shifted 2D operator failed");
  Eigen::VectorXd v = m.mass.cwiseSqrt().normalized();
  double lambda = v.dot(m.matrix * v);
  for (int it = 0; it < 5000; ++it) {
    v = ldlt.solve(v).normalized();
    const double next = v.dot(m.matrix * v);
    const bool done = std::abs(next - lambda) < 1e-12 * std::max(1.0, std::abs(next));
    lambda = next;
    if (done) break;
  }
  return lambda;
}

}  // namespace nk
