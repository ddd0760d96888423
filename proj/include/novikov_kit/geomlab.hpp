#pragma once

// Sampled boundary data on S^1 x (0, 1], the boundary conditions at t = 1,
// the homogeneous extension to t > 1, and generators for the worked examples.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "novikov_kit/morse.hpp"
#include "novikov_kit/wittenlab.hpp"

namespace nk {

struct Tolerances {
  double zero = 1e-9;
  double reg = 1e-6;
};

/// h, h_x, h_t at x_j = 2 pi j / n (rows) and t_k = (k + 1) / n_t (columns),
/// so the last column is the boundary t = 1.
struct BoundaryData {
  std::string label;
  Eigen::MatrixXd h;
  Eigen::MatrixXd h_x;
  Eigen::MatrixXd h_t;
  Tolerances tol;

  int n() const { return static_cast<int>(h.rows()); }
  int n_t() const { return static_cast<int>(h.cols()); }
  double x(int j) const;
  double t(int k) const { return static_cast<double>(k + 1) / n_t(); }
};

using Field2 = std::function<double(double x, double t)>;

BoundaryData sample_boundary(std::string label, int n, int n_t, const Field2& h, const Field2& h_x, const Field2& h_t,
                             Tolerances tol = {});

/// Throws InputError for inconsistent shapes or grids with n < 3 or n_t < 2.
void check_shape(const BoundaryData& b);

/// f(x_j) = h_t(x_j, 1) and its periodic central difference.
Eigen::VectorXd boundary_f(const BoundaryData& b);
Eigen::VectorXd boundary_df(const BoundaryData& b);

struct BoundaryReport {
  std::vector<int> b1;  ///< j with |h_x| + |h_t| < tolZero at t = 1
  std::vector<int> b2;  ///< j with |f| < tolZero and |f'| < tolReg
  std::vector<int> b3;  ///< j with |f| < tolZero and h_x f' < -tolReg

  bool ok() const { return b1.empty() && b2.empty() && b3.empty(); }
};

BoundaryReport check_B1_B2_B3(const BoundaryData& b);

struct ExtensionResult {
  double eps = 0;
  double m = 0;
  double cut_lo = 0;          ///< 1 - 2 eps
  double cut_hi = 0;          ///< 1 - eps
  int smoothstep_degree = 5;
  double t_max = 0;
  Eigen::VectorXd t;          ///< k / n_t up to t_max
  Eigen::MatrixXd h_tilde;
  Eigen::MatrixXd grad_norm;  ///< sqrt(h~_x^2 + h~_t^2)
  double min_grad = 0;
};

struct ExtensionFailure {
  std::string reason;
  /// Per tried eps, which check broke: "boundary conditions", "near-zero
  /// condition" (|f| < 2 eps) or "sign condition" (|f| > eps), or "gradient".
  std::vector<std::pair<double, std::string>> attempts;
};

/// Smoothstep 6u^5 - 15u^4 + 10u^3 clamped to [0, 1], and its derivative.
double smoothstep(double u);
double smoothstep_derivative(double u);

std::variant<ExtensionResult, ExtensionFailure> extend_homogeneous(const BoundaryData& b, double t_max);

struct HomogeneityFit {
  std::optional<double> degree;       ///< common estimate from both components
  std::optional<double> degree_dx;    ///< from the dx component alone
  std::optional<double> degree_dt;    ///< from the dt component alone
  double deviation = 0;               ///< max relative misfit of t^m scaling
  bool homogeneous = false;
};

/// alpha = a dx + b dt sampled at t-slices `t` (columns). A form homogeneous of
/// degree m has a ~ t^m and b ~ t^(m-1). Throws ParameterError for fewer than two slices.
HomogeneityFit homogeneity_degree(const Eigen::VectorXd& t, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                  Tolerances tol = {});

struct ExampleBundle {
  std::string name;
  NovikovInput input;
  std::vector<CriticalSubsetData> critical;
  std::vector<BoundaryData> boundary;
  std::optional<LineModel> line_model;
};

/// Names: cylinder_failing, cylinder_enlarged, collar_sine, circle, torus,
/// interval_ends.
/// Parameters: "weight" (circle), "w1"/"w2" (torus), "variant" (interval_ends:
/// quadratic_both_up, quadratic_both_down, quadratic_mixed), "n"/"n_t" (boundary
/// grids). Throws ParameterError for unknown names or variants.
ExampleBundle gen_example(const std::string& name, const std::map<std::string, std::string>& params = {});

}  // namespace nk
