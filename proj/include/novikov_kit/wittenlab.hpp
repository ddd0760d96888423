#pragma once

// Finite-difference Witten Laplacians: the full complex on a truncated line
// and a scalar model on a cylindrical end with the conical metric.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "novikov_kit/errors.hpp"

namespace nk {

enum class LinePotential { quadratic_both_up, quadratic_both_down, quadratic_mixed, custom };

std::string_view to_string(LinePotential p);
/// Throws ParameterError for an unknown name.
LinePotential parse_line_potential(std::string_view name);

/// h on [-L, L]: t^2/2, -t^2/2, or t|t|/2 with h' = (t^2 + t0^2)/(2 t0) on |t| < t0.
/// A custom model carries h' and h'' sampled at the n grid points.
struct LineModel {
  LinePotential kind = LinePotential::quadratic_both_up;
  double L = 10.0;
  int n = 2001;
  double T = 4.0;
  double t0 = 1.0;
  Eigen::VectorXd custom_dh;
  Eigen::VectorXd custom_ddh;

  double spacing() const { return 2.0 * L / (n - 1); }
  double point(int i) const { return -L + i * spacing(); }
  double dh(int i) const;
  double ddh(int i) const;
};

/// Symmetric tridiagonal matrix; off(i) couples i and i + 1.
struct Tridiagonal {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;

  Eigen::Index size() const { return diag.size(); }
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
};

/// Degree-0 and degree-1 operators -(1/T) d^2 + T h'^2 -/+ h'' on the n - 2
/// interior points (Dirichlet at +-L). Throws ParameterError for n < 16.
std::array<Tridiagonal, 2> assemble_witten_1d(const LineModel& model);

/// The k smallest eigenvalues, ascending. Throws ParameterError if k > size.
Eigen::VectorXd spectrum(const Tridiagonal& m, int k);

/// Unit-norm eigenvector for an isolated eigenvalue, by inverse iteration.
Eigen::VectorXd eigenvector(const Tridiagonal& m, double eigenvalue);

struct KernelCount {
  std::optional<int> dim;      ///< empty when no clear gap was found
  double first_positive = 0;   ///< the eigenvalue the threshold is relative to
  double threshold = 0;        ///< gap * first_positive
};

/// Eigenvalues below gap * (first clearly positive eigenvalue); the first
/// clearly positive one is the first at least gap times the largest computed.
KernelCount kernel_dimension(const Eigen::VectorXd& eigenvalues, double gap = 1e-3);

struct DegreeSpectrum {
  Eigen::VectorXd eigenvalues;
  KernelCount kernel;
  std::optional<Eigen::VectorXd> oracle;  ///< closed-form levels for quadratic models
};

struct SpectrumReport {
  std::array<DegreeSpectrum, 2> degree;
  /// Largest relative difference between paired nonzero eigenvalues.
  double pairing_error = 0;
};

SpectrumReport witten_spectrum(const LineModel& model, int k, double gap = 1e-3);

/// Oscillator levels of the quadratic models: t^2/2 gives 2j in degree 0 and
/// 2j + 2 in degree 1; -t^2/2 swaps the degrees.
std::optional<Eigen::VectorXd> oracle_levels(LinePotential kind, int degree, int k);

/// Largest absolute difference to the oracle, if there is one.
std::optional<double> oracle_error(const DegreeSpectrum& d);

struct KernelComparison {
  std::array<std::optional<int>, 2> kernel;
  std::vector<std::size_t> novikov;
  bool conclusive = false;
  bool agree = false;
};

/// Kernel dimensions against the background Betti numbers of the matching pair.
KernelComparison kernel_vs_novikov(const LineModel& model, const std::vector<std::size_t>& background, int k = 6,
                                   double gap = 1e-3);

struct ConcentrationRow {
  double T;
  int degree;               ///< degree of the kernel state used
  std::vector<double> tail; ///< mass outside each radius
};

/// Tail masses of the normalised kernel state for each T. Throws
/// ParameterError when the kernel is empty or not resolved.
std::vector<ConcentrationRow> concentration(LineModel model, const std::vector<double>& radii,
                                            const std::vector<double>& Ts, double gap = 1e-3);

/// Mass of the density sqrt(T/pi) exp(-T t^2) outside |t| = r.
double gaussian_tail(double T, double r);

/// Scalar Witten Laplacian on S^1 x [1, L] for h = f(x) t^2/2 and the metric
/// t^2 dx^2 + dt^2: periodic in x, Dirichlet at t = L, natural condition at t = 1.
struct ScalarModel2D {
  Eigen::SparseMatrix<double> matrix;  ///< mass-symmetrised, acts on sqrt(mass) * u
  Eigen::VectorXd mass;
  double potential_min = 0;            ///< lower bound for the spectrum
  int n_x = 0;
  int n_t = 0;
  double L = 0;
  double T = 0;
};

/// f sampled at x_j = 2 pi j / n_x. Throws ParameterError for n_x < 16,
/// n_t < 32, L <= 1 or T <= 0.
ScalarModel2D assemble_witten_2d_scalar(const Eigen::VectorXd& f, double T, int n_t, double L);

/// Smallest eigenvalue by shifted inverse iteration.
double bottom_eigenvalue(const ScalarModel2D& m);

}  // namespace nk
