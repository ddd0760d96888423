#include <doctest.h>

#include <cmath>
#include <numbers>

#include "novikov_kit/wittenlab.hpp"

using nk::LineModel;
using nk::LinePotential;

namespace {

LineModel model(LinePotential kind, double T = 4, double L = 10, int n = 2001) {
  LineModel m;
  m.kind = kind;
  m.T = T;
  m.L = L;
  m.n = n;
  return m;
}

// Discrete annihilation operator (1/sqrt T)(d/dt + T h') by central differences
// on interior points, with zero Dirichlet values outside.
Eigen::VectorXd annihilate(const LineModel& m, const Eigen::VectorXd& v) {
  const double h = m.spacing();
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double left = i > 0 ? v(i - 1) : 0.0, right = i + 1 < v.size() ? v(i + 1) : 0.0;
    out(i) = ((right - left) / (2 * h) + m.T * m.dh(static_cast<int>(i) + 1) * v(i)) / std::sqrt(m.T);
  }
  return out;
}

}  // namespace

TEST_CASE("1D potentials") {
  for (double T : {0.5, 4.0}) {
    const auto up = model(LinePotential::quadratic_both_up, T, 10, 101);
    const auto down = model(LinePotential::quadratic_both_down, T, 10, 101);
    const auto a = nk::assemble_witten_1d(up), b = nk::assemble_witten_1d(down);
    const double kinetic = 2 / (T * up.spacing() * up.spacing());
    for (Eigen::Index i = 0; i < a[0].size(); ++i) {
      const double t = up.point(static_cast<int>(i) + 1);
      CHECK(a[0].diag(i) - kinetic == doctest::Approx(T * t * t - 1));
      CHECK(a[1].diag(i) - kinetic == doctest::Approx(T * t * t + 1));
      CHECK(b[0].diag(i) == doctest::Approx(a[1].diag(i)));
      CHECK(b[1].diag(i) == doctest::Approx(a[0].diag(i)));
    }
    CHECK(a[0].off.isApprox(a[1].off));
  }
  CHECK_THROWS_AS(nk::assemble_witten_1d(model(LinePotential::quadratic_both_up, 4, 10, 15)), nk::ParameterError);
}

TEST_CASE("degree-0 and degree-1 operators are intertwined up to O(h^2)") {
  std::vector<double> errors;
  for (int n : {401, 801, 1601}) {
    const auto m = model(LinePotential::quadratic_both_up, 1, 10, n);
    const auto ops = nk::assemble_witten_1d(m);
    Eigen::VectorXd v(n - 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double t = m.point(static_cast<int>(i) + 1);
      v(i) = (t * t * t - t) * std::exp(-t * t / 2);
    }
    const Eigen::VectorXd lhs = annihilate(m, ops[0].apply(v)), rhs = ops[1].apply(annihilate(m, v));
    errors.push_back((lhs - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff());
  }
  CHECK(errors[0] < 1e-2);
  CHECK(errors[0] / errors[1] == doctest::Approx(4).epsilon(0.1));
  CHECK(errors[1] / errors[2] == doctest::Approx(4).epsilon(0.1));
}

TEST_CASE("oscillator spectra") {
  const auto report = nk::witten_spectrum(model(LinePotential::quadratic_both_up), 4);
  REQUIRE(nk::oracle_error(report.degree[0]));
  CHECK(*nk::oracle_error(report.degree[0]) < 1e-3);
  CHECK(*nk::oracle_error(report.degree[1]) < 1e-3);
  CHECK(report.pairing_error < 1e-4);
  CHECK(report.degree[0].kernel.dim == 1);
  CHECK(report.degree[1].kernel.dim == 0);
  for (int p = 0; p < 2; ++p)
    for (Eigen::Index i = 1; i < 4; ++i) CHECK(report.degree[p].eigenvalues(i) > report.degree[p].eigenvalues(i - 1));

  const auto down = nk::witten_spectrum(model(LinePotential::quadratic_both_down), 4);
  CHECK(*nk::oracle_error(down.degree[0]) < 1e-3);
  CHECK(*nk::oracle_error(down.degree[1]) < 1e-3);
  CHECK_FALSE(nk::oracle_levels(LinePotential::quadratic_mixed, 0, 4));

  const auto ops = nk::assemble_witten_1d(model(LinePotential::quadratic_both_up, 4, 10, 101));
  CHECK_THROWS_AS(nk::spectrum(ops[0], 100), nk::ParameterError);
}

TEST_CASE("oscillator levels do not depend on T") {
  const auto a = nk::witten_spectrum(model(LinePotential::quadratic_both_up, 1), 4);
  const auto b = nk::witten_spectrum(model(LinePotential::quadratic_both_up, 4), 4);
  for (int p = 0; p < 2; ++p) CHECK((a.degree[p].eigenvalues - b.degree[p].eigenvalues).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("spectra are nonnegative up to discretisation error") {
  // the 3-point stencil shifts the oscillator levels by about -(sqrt(T) h)^2 / 16
  for (auto kind : {LinePotential::quadratic_both_up, LinePotential::quadratic_both_down, LinePotential::quadratic_mixed})
    for (double T : {4.0, 16.0}) {
      const auto m = model(kind, T);
      const auto r = nk::witten_spectrum(m, 5);
      const double floor = -T * m.spacing() * m.spacing() / 8;
      for (int p = 0; p < 2; ++p) CHECK(r.degree[p].eigenvalues.minCoeff() >= floor);
    }
}

TEST_CASE("Dirichlet truncation is invisible at L = 10") {
  const auto a = nk::witten_spectrum(model(LinePotential::quadratic_both_up, 4, 10, 2001), 5);
  const auto b = nk::witten_spectrum(model(LinePotential::quadratic_both_up, 4, 14, 2801), 5);
  for (int p = 0; p < 2; ++p) CHECK((a.degree[p].eigenvalues - b.degree[p].eigenvalues).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("kernel dimensions match the Novikov numbers of the interval pairs") {
  const std::vector<std::pair<LinePotential, std::vector<std::size_t>>> cases{
      {LinePotential::quadratic_both_up, {1, 0}},
      {LinePotential::quadratic_both_down, {0, 1}},
      {LinePotential::quadratic_mixed, {0, 0}}};
  for (const auto& [kind, betti] : cases)
    for (double T : {4.0, 16.0}) {
      const auto cmp = nk::kernel_vs_novikov(model(kind, T), betti);
      CHECK(cmp.conclusive);
      CHECK(cmp.agree);
    }
  CHECK_FALSE(nk::kernel_vs_novikov(model(LinePotential::quadratic_both_up), {0, 0}).agree);
}

TEST_CASE("kernel counting") {
  Eigen::VectorXd ev(4);
  ev << 1e-7, 2, 4, 6;
  CHECK(nk::kernel_dimension(ev).dim == 1);
  CHECK(nk::kernel_dimension(ev).first_positive == 2);
  ev << 0.5, 2, 4, 6;
  CHECK(nk::kernel_dimension(ev).dim == 0);
  ev << 0, 0, 0, 0;
  CHECK_FALSE(nk::kernel_dimension(ev).dim);
  ev << 1e-7, 1e-3, 2, 4;
  CHECK(nk::kernel_dimension(ev).dim == 2);
  CHECK(nk::kernel_dimension(ev).threshold == doctest::Approx(2e-3));
  CHECK_FALSE(nk::kernel_dimension(Eigen::VectorXd::Constant(1, 2.0)).dim);
}

TEST_CASE("kernel states concentrate near the critical point") {
  const auto rows = nk::concentration(model(LinePotential::quadratic_both_up), {2.0, 0.0}, {1, 4, 16});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].degree == 0);
  CHECK(rows[1].tail[0] < rows[0].tail[0]);
  CHECK(rows[2].tail[0] < rows[1].tail[0]);
  CHECK(rows[2].tail[0] > 0);
  const double oracle = nk::gaussian_tail(4, 2);
  CHECK(std::abs(rows[1].tail[0] - oracle) / oracle < 0.1);
  for (const auto& r : rows) CHECK(r.tail[1] == doctest::Approx(1).epsilon(1e-9));
  const auto down = nk::concentration(model(LinePotential::quadratic_both_down), {1.0}, {4});
  CHECK(down[0].degree == 1);
  CHECK(down[0].tail[0] == doctest::Approx(nk::gaussian_tail(4, 1)).epsilon(0.05));
  CHECK_THROWS_AS(nk::concentration(model(LinePotential::quadratic_mixed), {2.0}, {4}), nk::ParameterError);
}

TEST_CASE("custom line models") {
  // h = t^2/2 given by samples
  auto m = model(LinePotential::custom, 4, 10, 401);
  m.custom_dh.resize(m.n);
  m.custom_ddh = Eigen::VectorXd::Ones(m.n);
  for (int i = 0; i < m.n; ++i) m.custom_dh(i) = m.point(i);
  const auto a = nk::assemble_witten_1d(m), b = nk::assemble_witten_1d(model(LinePotential::quadratic_both_up, 4, 10, 401));
  CHECK(a[0].diag.isApprox(b[0].diag));
  m.custom_ddh.resize(3);
  CHECK_THROWS_AS(nk::assemble_witten_1d(m), nk::ParameterError);
  CHECK(nk::parse_line_potential("quadratic_mixed") == LinePotential::quadratic_mixed);
  CHECK_THROWS_AS(nk::parse_line_potential("cubic"), nk::ParameterError);
}

TEST_CASE("2D scalar model on the conical end") {
  const int n_x = 64;
  Eigen::VectorXd one = Eigen::VectorXd::Ones(n_x), sine(n_x);
  for (int j = 0; j < n_x; ++j) sine(j) = std::sin(2 * std::numbers::pi * j / n_x);

  const auto flat = nk::assemble_witten_2d_scalar(one, 4, 64, 4);
  CHECK(flat.potential_min == doctest::Approx(2));
  const double l1 = nk::bottom_eigenvalue(flat);
  CHECK(l1 >= flat.potential_min);
  CHECK(l1 > 0);

  const auto end = nk::assemble_witten_2d_scalar(sine, 4, 64, 4);
  CHECK(end.potential_min > 0.5);
  const double ls = nk::bottom_eigenvalue(end);
  CHECK(ls >= end.potential_min);
  const double fine = nk::bottom_eigenvalue(nk::assemble_witten_2d_scalar(sine, 4, 128, 4));
  CHECK(std::abs(fine - ls) / ls < 0.05);

  CHECK((flat.matrix - Eigen::SparseMatrix<double>(flat.matrix.transpose())).norm() < 1e-9 * flat.matrix.norm());
  CHECK_THROWS_AS(nk::assemble_witten_2d_scalar(Eigen::VectorXd::Ones(8), 4, 64, 4), nk::ParameterError);
  CHECK_THROWS_AS(nk::assemble_witten_2d_scalar(one, 4, 16, 4), nk::ParameterError);
}
