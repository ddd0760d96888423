#include "novikov_kit/geomlab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nk {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Angles 0, pi/6, pi/2, 5pi/6, pi, 7pi/6, 3pi/2, 11pi/6 have rational sines.
const std::array<Rat, 8> kRingSine{Rat(0), Rat(1, 2), Rat(1), Rat(1, 2), Rat(0), Rat(-1, 2), Rat(-1), Rat(-1, 2)};

struct RingCylinder {
  CellComplex complex;
  std::map<CellId, Rat> weights;
};

CellId ring_vertex(int r, int k) { return r * 8 + (k % 8); }
CellId ring_edge(int r, int k) { return 100 + r * 8 + (k % 8); }
CellId rung_edge(int r, int k) { return 200 + r * 8 + (k % 8); }
CellId square(int r, int k) { return 300 + r * 8 + k; }

// Rings at the given heights, joined by rungs and squares; weights of d(t^2 sin x).
RingCylinder ring_cylinder(const std::vector<int>& heights) {
  const int rings = static_cast<int>(heights.size());
  std::vector<std::vector<CellId>> cells(3);
  std::map<CellId, std::vector<Incidence>> boundary;
  std::map<CellId, std::vector<Letter>> words;
  std::map<CellId, Rat> h;
  for (int r = 0; r < rings; ++r)
    for (int k = 0; k < 8; ++k) {
      cells[0].push_back(ring_vertex(r, k));
      h[ring_vertex(r, k)] = Rat(heights[static_cast<std::size_t>(r)] * heights[static_cast<std::size_t>(r)]) *
                             kRingSine[static_cast<std::size_t>(k)];
      cells[1].push_back(ring_edge(r, k));
      boundary[ring_edge(r, k)] = {{ring_vertex(r, k), -1}, {ring_vertex(r, k + 1), 1}};
      if (r + 1 < rings) {
        cells[1].push_back(rung_edge(r, k));
        boundary[rung_edge(r, k)] = {{ring_vertex(r, k), -1}, {ring_vertex(r + 1, k), 1}};
      }
    }
  for (int r = 0; r + 1 < rings; ++r)
    for (int k = 0; k < 8; ++k) {
      const CellId f = square(r, k);
      cells[2].push_back(f);
      words[f] = {{ring_edge(r, k), 1}, {rung_edge(r, k + 1), 1}, {ring_edge(r + 1, k), -1}, {rung_edge(r, k), -1}};
      boundary[f] = {{ring_edge(r, k), 1}, {rung_edge(r, k + 1), 1}, {ring_edge(r + 1, k), -1}, {rung_edge(r, k), -1}};
    }
  RingCylinder out{CellComplex(cells, boundary, words), {}};
  for (CellId e : out.complex.cells(1)) out.weights[e] = h.at(out.complex.head(e)) - h.at(out.complex.tail(e));
  return out;
}

// Closed arc of ring r through the consecutive angle indices first..last.
void add_arc(std::set<CellId>& sub, int r, int first, int last) {
  for (int k = first; k <= last; ++k) sub.insert(ring_vertex(r, k));
  for (int k = first; k < last; ++k) sub.insert(ring_edge(r, k));
}

// Collar data h(x, t') = (a + s t')^2 sin x for the collar coordinate t'.
BoundaryData collar(std::string label, double a, double s, int n, int n_t) {
  return sample_boundary(
      std::move(label), n, n_t, [=](double x, double t) { return (a + s * t) * (a + s * t) * std::sin(x); },
      [=](double x, double t) { return (a + s * t) * (a + s * t) * std::cos(x); },
      [=](double x, double t) { return 2 * s * (a + s * t) * std::sin(x); });
}

std::string param(const std::map<std::string, std::string>& p, const std::string& key, const std::string& fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

int int_param(const std::map<std::string, std::string>& p, const std::string& key, int fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParameterError("parameter " + key + " must be an integer");
}

Rat rat_param(const std::map<std::string, std::string>& p, const std::string& key, const std::string& fallback) {
  try {
    return parse_rat(param(p, key, fallback));
  } catch (const InputError& e) {
    throw ParameterError("parameter " + key + ": " + e.what());
  }
}

}  // namespace

double BoundaryData::x(int j) const { return kTwoPi * j / n(); }

BoundaryData sample_boundary(std::string label, int n, int n_t, const Field2& h, const Field2& h_x, const Field2& h_t,
                             Tolerances tol) {
  if (n < 3 || n_t < 2) throw InputError("boundary grid needs n >= 3 and n_t >= 2");
  BoundaryData b{std::move(label), Eigen::MatrixXd(n, n_t), Eigen::MatrixXd(n, n_t), Eigen::MatrixXd(n, n_t), tol};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n_t; ++k) {
      const double x = b.x(j), t = b.t(k);
      b.h(j, k) = h(x, t);
      b.h_x(j, k) = h_x(x, t);
      b.h_t(j, k) = h_t(x, t);
    }
  return b;
}

void check_shape(const BoundaryData& b) {
  if (b.n() < 3 || b.n_t() < 2) throw InputError("boundary grid needs n >= 3 and n_t >= 2");
  if (b.h_x.rows() != b.h.rows() || b.h_x.cols() != b.h.cols() || b.h_t.rows() != b.h.rows() ||
      b.h_t.cols() != b.h.cols())
    throw InputError("boundary arrays h, h_x, h_t have different shapes");
  if (!(b.tol.zero > 0) || !(b.tol.reg > 0)) throw InputError("tolerances must be positive");
  if (!b.h.allFinite() || !b.h_x.allFinite() || !b.h_t.allFinite()) throw InputError("boundary samples must be finite");
}

Eigen::VectorXd boundary_f(const BoundaryData& b) { return b.h_t.col(b.n_t() - 1); }

Eigen::VectorXd boundary_df(const BoundaryData& b) {
  const Eigen::VectorXd f = boundary_f(b);
  const int n = b.n();
  const double dx = kTwoPi / n;
  Eigen::VectorXd out(n);
  for (int j = 0; j < n; ++j) out(j) = (f((j + 1) % n) - f((j + n - 1) % n)) / (2 * dx);
  return out;
}

BoundaryReport check_B1_B2_B3(const BoundaryData& b) {
  check_shape(b);
  const int last = b.n_t() - 1;
  const Eigen::VectorXd f = boundary_f(b), df = boundary_df(b);
  BoundaryReport r;
  for (int j = 0; j < b.n(); ++j) {
    if (std::abs(b.h_x(j, last)) + std::abs(b.h_t(j, last)) < b.tol.zero) r.b1.push_back(j);
    if (std::abs(f(j)) < b.tol.zero && std::abs(df(j)) < b.tol.reg) r.b2.push_back(j);
    if (std::abs(f(j)) < b.tol.zero && b.h_x(j, last) * df(j) < -b.tol.reg) r.b3.push_back(j);
  }
  return r;
}

double smoothstep(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * u * (10 + u * (-15 + 6 * u));
}

double smoothstep_derivative(double u) {
  if (u <= 0 || u >= 1) return 0;
  return 30 * u * u * (1 - u) * (1 - u);
}

std::variant<ExtensionResult, ExtensionFailure> extend_homogeneous(const BoundaryData& b, double t_max) {
  if (!(t_max > 1)) throw ParameterError("t_max must exceed 1");
  ExtensionFailure failure;
  const auto report = check_B1_B2_B3(b);
  if (!report.ok()) {
    failure.reason = "boundary conditions fail (B1: " + std::to_string(report.b1.size()) +
                     ", B2: " + std::to_string(report.b2.size()) + ", B3: " + std::to_string(report.b3.size()) +
                     " grid points)";
    return failure;
  }
  const int n = b.n(), n_t = b.n_t();
  const Eigen::VectorXd f = boundary_f(b), df = boundary_df(b);
  const double sup = b.h.cwiseAbs().maxCoeff();
  const int steps = static_cast<int>(std::floor(t_max * n_t + 1e-9));

  for (int q = 4; q <= 64; ++q) {
    const double eps = 1.0 / q;
    std::string broken;
    for (int k = 0; k < n_t && broken.empty(); ++k) {
      if (b.t(k) <= 1 - 3 * eps) continue;
      for (int j = 0; j < n; ++j) {
        if (std::abs(f(j)) < 2 * eps) {
          const double hx = b.h_x(j, k);
          if (hx * df(j) < -b.tol.reg || (std::abs(hx) < b.tol.zero && std::abs(df(j)) < b.tol.zero)) {
            broken = "near-zero condition";
            break;
          }
        }
        if (std::abs(f(j)) > eps && !(b.h_t(j, k) * f(j) > 0)) {
          broken = "sign condition";
          break;
        }
      }
    }
    if (!broken.empty()) {
      failure.attempts.emplace_back(eps, broken);
      continue;
    }

    ExtensionResult out;
    out.eps = eps;
    out.m = 18 / eps * sup;
    out.cut_lo = 1 - 2 * eps;
    out.cut_hi = 1 - eps;
    out.t_max = t_max;
    out.t.resize(steps);
    out.h_tilde.resize(n, steps);
    out.grad_norm.resize(n, steps);
    for (int k = 0; k < steps; ++k) {
      const double t = static_cast<double>(k + 1) / n_t;
      out.t(k) = t;
      const double u = (t - out.cut_lo) / eps;
      const double chi = smoothstep(u), dchi = smoothstep_derivative(u) / eps;
      for (int j = 0; j < n; ++j) {
        const double model = out.m * f(j) * t * t / 2;
        double value, gx, gt;
        if (k < n_t) {
          const double h = b.h(j, k);
          value = (1 - chi) * h + chi * model;
          gx = (1 - chi) * b.h_x(j, k) + chi * out.m * df(j) * t * t / 2;
          gt = dchi * (model - h) + (1 - chi) * b.h_t(j, k) + chi * out.m * f(j) * t;
        } else {
          value = model;
          gx = out.m * df(j) * t * t / 2;
          gt = out.m * f(j) * t;
        }
        out.h_tilde(j, k) = value;
        out.grad_norm(j, k) = std::hypot(gx, gt);
      }
    }
    out.min_grad = out.grad_norm.minCoeff();
    if (out.min_grad > b.tol.zero) return out;
    failure.attempts.emplace_back(eps, "gradient");
  }
  failure.reason = "no admissible eps in 1/4 ... 1/64";
  return failure;
}

HomogeneityFit homogeneity_degree(const Eigen::VectorXd& t, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                  Tolerances tol) {
  if (t.size() < 2) throw ParameterError("homogeneity fit needs at least two t-slices");
  if (a.cols() != t.size() || b.cols() != t.size() || a.rows() != b.rows())
    throw ParameterError("form samples do not match the t-slices");
  if ((t.array() <= 0).any()) throw ParameterError("t-slices must be positive");
  const Eigen::VectorXd lt = t.array().log();
  const double mean_lt = lt.mean();
  const double var_lt = (lt.array() - mean_lt).square().sum();
  if (var_lt == 0) throw ParameterError("t-slices must be distinct");

  // usable series: nonvanishing with a fixed sign along t
  auto usable = [&](const Eigen::MatrixXd& m, Eigen::Index j) {
    const auto row = m.row(j);
    return (row.array().abs() > tol.zero).all() && ((row.array() > 0).all() || (row.array() < 0).all());
  };
  auto slope = [&](const Eigen::MatrixXd& m, Eigen::Index j) {
    const Eigen::VectorXd y = m.row(j).transpose().array().abs().log();
    return ((lt.array() - mean_lt) * (y.array() - y.mean())).sum() / var_lt;
  };
  std::vector<double> sa, sb;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    if (usable(a, j)) sa.push_back(slope(a, j));
    if (usable(b, j)) sb.push_back(slope(b, j) + 1);
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  HomogeneityFit fit;
  if (!sa.empty()) fit.degree_dx = mean(sa);
  if (!sb.empty()) fit.degree_dt = mean(sb);
  if (sa.empty() && sb.empty()) return fit;
  std::vector<double> all = sa;
  all.insert(all.end(), sb.begin(), sb.end());
  const double m = mean(all);
  fit.degree = m;

  // misfit of each sampled series against t^m scaling from its largest sample
  auto misfit = [&](const Eigen::MatrixXd& s, double power) {
    double worst = 0;
    for (Eigen::Index j = 0; j < s.rows(); ++j) {
      Eigen::Index ref;
      const double peak = s.row(j).cwiseAbs().maxCoeff(&ref);
      if (peak <= tol.zero) continue;
      for (Eigen::Index k = 0; k < t.size(); ++k) {
        const double predicted = s(j, ref) * std::pow(t(k) / t(ref), power);
        worst = std::max(worst, std::abs(s(j, k) - predicted) / peak);
      }
    }
    return worst;
  };
  fit.deviation = std::max(misfit(a, m), misfit(b, m - 1));
  fit.homogeneous = fit.deviation < tol.reg;
  return fit;
}

ExampleBundle gen_example(const std::string& name, const std::map<std::string, std::string>& params) {
  ExampleBundle out;
  out.name = name;
  const int n = int_param(params, "n", 720), n_t = int_param(params, "n_t", 200);
  auto& in = out.input;
  if (name == "cylinder_failing" || name == "cylinder_enlarged") {
    const bool failing = name == "cylinder_failing";
    auto cyl = ring_cylinder(failing ? std::vector<int>{1, 2} : std::vector<int>{-2, 0, 2});
    in.pair.complex = std::move(cyl.complex);
    in.omega.weight = std::move(cyl.weights);
    const int top = failing ? 1 : 2;
    if (failing)
      add_arc(in.pair.sub, 0, 1, 3);  // sin x > 0 on the t = 1 circle
    else
      add_arc(in.pair.sub, 0, 5, 7);  // sin x < 0 on the t = -2 circle
    add_arc(in.pair.sub, top, 5, 7);  // sin x < 0 on the t = 2 circle
    if (failing) {
      out.boundary.push_back(collar("S1x{1}", 2, -1, n, n_t));   // t = 2 - t'
      out.boundary.push_back(collar("S1x{2}", 1, 1, n, n_t));    // t = 1 + t'
    } else {
      out.boundary.push_back(collar("S1x{-2}", 1, 1, n, n_t));   // t = -1 - t'
      out.boundary.push_back(collar("S1x{2}", 1, 1, n, n_t));
      out.critical.push_back({"S1x{0}", 1, {2}, std::nullopt});
    }
  } else if (name == "circle") {
    in.pair.complex = CellComplex({{0}, {1}}, {{1, {{0, -1}, {0, 1}}}}, {});
    in.omega.weight[1] = rat_param(params, "weight", "1");
  } else if (name == "collar_sine") {
    // h = t^2 sin x near a circle boundary; the form restricts to an exact one
    in.pair.complex = CellComplex({{0}, {1}}, {{1, {{0, -1}, {0, 1}}}}, {});
    in.omega.weight[1] = 0;
    out.boundary.push_back(collar("S1", 0, 1, n, n_t));
  } else if (name == "torus") {
    const std::vector<Letter> word{{1, 1}, {2, 1}, {1, -1}, {2, -1}};
    in.pair.complex = CellComplex({{0}, {1, 2}, {3}}, {{1, {{0, -1}, {0, 1}}}, {2, {{0, -1}, {0, 1}}}, {3, {}}},
                                  {{3, word}});
    in.omega.weight[1] = rat_param(params, "w1", "1");
    in.omega.weight[2] = rat_param(params, "w2", "0");
  } else if (name == "interval_ends") {
    LineModel model;
    model.kind = parse_line_potential(param(params, "variant", "quadratic_both_up"));
    if (model.kind == LinePotential::custom) throw ParameterError("interval_ends has no custom variant");
    const Rat L = rat_param(params, "L", "10");
    if (L <= 1) throw ParameterError("interval_ends needs L > 1");
    model.L = L.convert_to<double>();
    model.n = int_param(params, "grid", 2001);
    model.T = rat_param(params, "T", "4").convert_to<double>();
    in.pair.complex = CellComplex({{0, 1}, {2}}, {{2, {{0, -1}, {1, 1}}}}, {});
    switch (model.kind) {
      case LinePotential::quadratic_both_up:
        in.omega.weight[2] = 0;
        out.critical.push_back({"t=0", 0, {1}, std::nullopt});
        break;
      case LinePotential::quadratic_both_down:
        in.omega.weight[2] = 0;
        in.pair.sub = {0, 1};
        out.critical.push_back({"t=0", 1, {1}, std::nullopt});
        break;
      default:  // h(L) - h(-L) = L^2 + t0^2/3 with t0 = 1
        in.omega.weight[2] = L * L + Rat(1, 3);
        in.pair.sub = {0};
        break;
    }
    out.line_model = model;
  } else {
    throw ParameterError("unknown example \"" + name + "\"");
  }
  validate_input(in);
  return out;
}

}  // namespace nk
