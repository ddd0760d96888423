// novikov_kit: command-line front end. Documents are JSON on stdin/stdout
// (or --input/--output); exit codes are 0 ok, 2 bad input, 3 the checked
// property fails, 4 numerics inconclusive.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "novikov_kit/io.hpp"

namespace {

using nk::Json;

enum Exit { kOk = 0, kInternal = 1, kBadInput = 2, kVerdict = 3, kInconclusive = 4 };

struct Io {
  std::string input = "-";
  std::string output = "-";
};

void add_io(CLI::App* cmd, Io& io, bool reads = true) {
  if (reads) cmd->add_option("--input,-i", io.input, "input document, - for stdin");
  cmd->add_option("--output,-o", io.output, "output path, - for stdout");
}

Json read_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw nk::InputError("cannot read " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return nk::parse_document(text);
}

void write_document(const std::string& path, Json doc) {
  doc["novikov_kit_schema"] = nk::kSchemaVersion;
  const std::string text = doc.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw nk::InputError("cannot write " + path);
  out << text;
}

void check_schema(const Json& doc) {
  if (doc.is_object() && doc.contains("novikov_kit_schema") && doc.at("novikov_kit_schema") != nk::kSchemaVersion)
    throw nk::InputError("unsupported novikov_kit_schema " + doc.at("novikov_kit_schema").dump());
}

// Boundary components of a document: a "boundary_data" list or one component.
std::vector<nk::BoundaryData> boundary_components(const Json& doc, const std::optional<double>& tol_zero,
                                                  const std::optional<double>& tol_reg) {
  std::vector<nk::BoundaryData> out;
  if (doc.contains("boundary_data")) {
    for (const auto& c : doc.at("boundary_data")) out.push_back(nk::boundary_from_json(c));
  } else {
    out.push_back(nk::boundary_from_json(doc));
  }
  if (out.empty()) throw nk::InputError("document has no boundary components");
  for (auto& b : out) {
    if (tol_zero) b.tol.zero = *tol_zero;
    if (tol_reg) b.tol.reg = *tol_reg;
  }
  return out;
}

nk::NovikovResult checked_novikov(const nk::NovikovInput& in, Json& checks, bool& consistent) {
  const auto result = nk::novikov(in);
  const long chi = nk::euler_characteristic(in.pair);
  const long sum = nk::alternating_sum(result.background);
  const auto cone = nk::background_betti(nk::build_cone(in));
  // the cone carries one extra degree, which is zero
  std::vector<std::size_t> cone_trimmed(cone.begin(), cone.begin() + std::min(cone.size(), result.background.size()));
  const bool cone_ok = cone_trimmed == result.background &&
                       std::all_of(cone.begin() + static_cast<long>(cone_trimmed.size()), cone.end(),
                                   [](std::size_t b) { return b == 0; });
  checks["euler_check"] = {{"chi", chi}, {"rank", in.F.rank}, {"alternating_sum", sum}, {"holds", sum == chi * in.F.rank}};
  checks["cone_check"] = {{"background", cone}, {"agrees", cone_ok}};
  consistent = sum == chi * in.F.rank && cone_ok;
  return result;
}

int run_validate(const Io& io) {
  const Json doc = read_document(io.input);
  check_schema(doc);
  const auto in = nk::novikov_input_from_json(doc);
  auto report = nk::validate_pair(in.pair);
  if (report.empty()) {
    for (auto part : {nk::check_cocycle(in.pair.complex, in.omega), nk::check_flat(in.pair.complex, in.F)})
      report.insert(report.end(), part.begin(), part.end());
  }
  if (report.empty()) {
    try {
      nk::validate_input(in);
    } catch (const nk::InputError& e) {
      report.push_back({-1, "input", e.what()});
    }
  }
  Json out{{"valid", report.empty()}, {"violations", nk::to_json(report)}};
  if (report.empty()) out["euler_characteristic"] = nk::euler_characteristic(in.pair);
  write_document(io.output, out);
  return report.empty() ? kOk : kVerdict;
}

int run_novikov(const Io& io, const std::optional<int>& degree, int decimals) {
  const Json doc = read_document(io.input);
  check_schema(doc);
  const auto in = nk::novikov_input_from_json(doc);
  nk::validate_input(in);
  Json checks;
  bool consistent = false;
  const auto result = checked_novikov(in, checks, consistent);
  Json out = nk::to_json(result, decimals);
  out.update(checks);
  if (degree) {
    Json kept = Json::array();
    for (const auto& d : out["jumps"])
      if (d["degree"] == *degree) kept.push_back(d);
    out["jumps"] = kept;
  }
  for (const char* key : {"critical", "name", "line_model"})
    if (doc.contains(key)) out[key] = doc.at(key);
  write_document(io.output, out);
  return consistent ? kOk : kVerdict;
}

int run_morse(const Io& io) {
  const Json doc = read_document(io.input);
  check_schema(doc);
  std::vector<std::size_t> background;
  if (doc.contains("background")) {
    background = doc.at("background").get<std::vector<std::size_t>>();
  } else {
    const auto in = nk::novikov_input_from_json(doc);
    nk::validate_input(in);
    background = nk::background_betti(in);
  }
  if (!doc.contains("critical")) throw nk::InputError("missing key \"critical\"");
  const auto critical = nk::critical_from_json(doc.at("critical"));
  const auto report = nk::certify(nk::morse_polynomial(critical), nk::novikov_polynomial(background));
  write_document(io.output, nk::to_json(report));
  return report.holds() ? kOk : kVerdict;
}

int run_boundary(const Io& io, const std::optional<double>& tol_zero, const std::optional<double>& tol_reg) {
  const Json doc = read_document(io.input);
  check_schema(doc);
  Json components = Json::array();
  bool ok = true;
  for (const auto& b : boundary_components(doc, tol_zero, tol_reg)) {
    const auto report = nk::check_B1_B2_B3(b);
    ok = ok && report.ok();
    components.push_back(nk::to_json(report, b));
  }
  write_document(io.output, {{"components", components}, {"ok", ok}});
  return ok ? kOk : kVerdict;
}

int run_extend(const Io& io, const std::string& component, double t_max, const std::optional<double>& tol_zero,
               const std::optional<double>& tol_reg) {
  const Json doc = read_document(io.input);
  check_schema(doc);
  const auto all = boundary_components(doc, tol_zero, tol_reg);
  const nk::BoundaryData* chosen = &all.front();
  if (!component.empty()) {
    const auto it = std::find_if(all.begin(), all.end(), [&](const auto& b) { return b.label == component; });
    if (it == all.end()) throw nk::InputError("no boundary component \"" + component + "\"");
    chosen = &*it;
  }
  const auto r = nk::extend_homogeneous(*chosen, t_max);
  Json out{{"label", chosen->label}};
  if (const auto* ok = std::get_if<nk::ExtensionResult>(&r)) {
    out["extension"] = nk::to_json(*ok);
    write_document(io.output, out);
    return kOk;
  }
  out["failure"] = nk::to_json(std::get<nk::ExtensionFailure>(r));
  write_document(io.output, out);
  return kVerdict;
}

struct WittenOptions {
  std::string model;
  std::optional<double> T, L;
  std::optional<int> n;
  int k = 4;
  double gap = 1e-3;
  std::optional<int> degree;
  std::vector<double> radii;
  std::vector<double> Ts;
};

int run_witten(const Io& io, const WittenOptions& o) {
  nk::LineModel model;
  std::optional<std::vector<std::size_t>> background;
  if (!o.model.empty()) {
    model.kind = nk::parse_line_potential(o.model);
    if (model.kind == nk::LinePotential::custom) throw nk::ParameterError("a custom model needs an --input document");
    background = nk::background_betti(nk::gen_example("interval_ends", {{"variant", o.model}}).input);
  } else {
    const Json doc = read_document(io.input);
    check_schema(doc);
    model = nk::line_model_from_json(doc.contains("line_model") ? doc.at("line_model") : doc);
    if (doc.contains("background")) {
      background = doc.at("background").get<std::vector<std::size_t>>();
    } else if (doc.contains("cells")) {
      const auto in = nk::novikov_input_from_json(doc);
      nk::validate_input(in);
      background = nk::background_betti(in);
    }
  }
  if (o.T) model.T = *o.T;
  if (o.L) model.L = *o.L;
  if (o.n) model.n = *o.n;
  if (o.k < 2) throw nk::ParameterError("--k must be at least 2");

  const auto report = nk::witten_spectrum(model, o.k, o.gap);
  Json model_json = nk::to_json(model);
  model_json.erase("dh");
  model_json.erase("ddh");
  Json degrees = Json::object();
  for (int d = 0; d < 2; ++d)
    if (!o.degree || *o.degree == d) degrees[std::to_string(d)] = nk::to_json(report.degree[static_cast<std::size_t>(d)]);
  Json out{{"model", model_json}, {"gap", o.gap}, {"degree", degrees}, {"pairing_error", report.pairing_error}};

  int code = kOk;
  const auto& k0 = report.degree[0].kernel.dim;
  const auto& k1 = report.degree[1].kernel.dim;
  if (!k0 || !k1) code = kInconclusive;
  if (background) {
    const auto cmp = nk::kernel_vs_novikov(model, *background, std::max(o.k, 6), o.gap);
    out["novikov"] = {{"background", cmp.novikov}, {"conclusive", cmp.conclusive}, {"agree", cmp.agree}};
    if (!cmp.conclusive) code = kInconclusive;
    else if (!cmp.agree && code == kOk) code = kVerdict;
  }
  if (!o.Ts.empty()) {
    if (code == kInconclusive) throw nk::ParameterError("concentration needs a resolved kernel");
    const std::vector<double> radii = o.radii.empty() ? std::vector<double>{2.0} : o.radii;
    Json rows = Json::array();
    for (const auto& row : nk::concentration(model, radii, o.Ts, o.gap)) {
      std::vector<double> oracle;
      for (double r : radii) oracle.push_back(nk::gaussian_tail(row.T, r));
      rows.push_back({{"T", row.T}, {"degree", row.degree}, {"radii", radii}, {"tail", row.tail}, {"gaussian_oracle", oracle}});
    }
    out["concentration"] = rows;
  }
  write_document(io.output, out);
  return code;
}

int run_example(const Io& io, const std::string& name, const std::vector<std::string>& params, bool boundary) {
  std::map<std::string, std::string> p;
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw nk::ParameterError("--param expects key=value, got \"" + kv + "\"");
    p[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  write_document(io.output, nk::to_json(nk::gen_example(name, p), boundary));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Novikov numbers, Morse certificates, boundary checks and Witten spectra"};
  app.require_subcommand(1, 1);

  Io io;
  auto* validate = app.add_subcommand("validate", "check a cellular input document");
  add_io(validate, io);

  std::optional<int> degree;
  int decimals = -1;
  auto* novikov = app.add_subcommand("novikov", "background Novikov numbers and jump points");
  add_io(novikov, io);
  novikov->add_option("--degree", degree, "only report jumps in this degree");
  novikov->add_option("--decimal", decimals, "also render intervals and T with this many digits")->check(CLI::Range(1, 40));

  auto* morse = app.add_subcommand("morse", "Morse and Novikov polynomials and the certificate");
  add_io(morse, io);

  std::optional<double> tol_zero, tol_reg;
  auto* boundary = app.add_subcommand("boundary", "boundary conditions on each boundary component");
  add_io(boundary, io);
  auto* extend = app.add_subcommand("extend", "homogeneous extension of boundary data");
  add_io(extend, io);
  for (auto* cmd : {boundary, extend}) {
    cmd->add_option("--tol-zero", tol_zero, "zero tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--tol-reg", tol_reg, "regularity tolerance")->check(CLI::PositiveNumber);
  }
  std::string component;
  double t_max = 3;
  extend->add_option("--component", component, "boundary component label (default: the first)");
  extend->add_option("--t-max", t_max, "extend up to this t");

  WittenOptions w;
  auto* witten = app.add_subcommand("witten", "Witten Laplacian spectra on the line");
  add_io(witten, io);
  witten->add_option("--model", w.model, "quadratic_both_up, quadratic_both_down or quadratic_mixed");
  witten->add_option("--T", w.T, "deformation parameter")->check(CLI::PositiveNumber);
  witten->add_option("--L", w.L, "half-length of the interval")->check(CLI::PositiveNumber);
  witten->add_option("--n", w.n, "grid points");
  witten->add_option("--k", w.k, "eigenvalues per degree");
  witten->add_option("--gap", w.gap, "relative kernel gap")->check(CLI::PositiveNumber);
  witten->add_option("--degree", w.degree, "only report this degree")->check(CLI::Range(0, 1));
  witten->add_option("--radii", w.radii, "radii for the tail mass")->delimiter(',');
  witten->add_option("--concentration", w.Ts, "values of T for the tail mass")->delimiter(',');

  std::string name;
  std::vector<std::string> params;
  bool with_boundary = false;
  auto* example = app.add_subcommand("example", "generate a shipped example document");
  add_io(example, io, false);
  example->add_option("name", name, "example name")->required();
  example->add_option("--param,-p", params, "key=value generator parameter");
  example->add_flag("--boundary", with_boundary, "include sampled boundary data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "novikov_kit: " << e.what() << "\n\n" << app.help();
    return kBadInput;
  }

  try {
    if (*validate) return run_validate(io);
    if (*novikov) return run_novikov(io, degree, decimals);
    if (*morse) return run_morse(io);
    if (*boundary) return run_boundary(io, tol_zero, tol_reg);
    if (*extend) return run_extend(io, component, t_max, tol_zero, tol_reg);
    if (*witten) return run_witten(io, w);
    if (*example) return run_example(io, name, params, with_boundary);
  } catch (const nk::InputError& e) {
    std::cerr << "novikov_kit: input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const nk::ParameterError& e) {
    std::cerr << "novikov_kit: " << e.what() << "\n";
    return kBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "novikov_kit: malformed document: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "novikov_kit: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kBadInput;
}
