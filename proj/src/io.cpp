#include "novikov_kit/io.hpp"

#include <cmath>
#include <sstream>

namespace nk {

namespace {

CellId id_from_key(const std::string& key) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty()) throw InputError("\"" + key + "\" is not a cell id");
  return v;
}

Rat rat_from(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw InputError("expected a rational string \"p/q\" or an integer, got " + j.dump());
}

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing key \"") + key + "\"");
  return doc.at(key);
}

const Json& object_at(const Json& doc, const char* key) {
  const Json& j = require(doc, key);
  if (!j.is_object()) throw InputError(std::string("\"") + key + "\" must be an object keyed by cell id");
  return j;
}

Json path_to_json(const Path& p) {
  Json out = Json::array();
  for (const auto& l : p) out.push_back({l.edge, l.dir});
  return out;
}

Path path_from_json(const Json& j) {
  Path out;
  for (const auto& l : j) {
    if (!l.is_array() || l.size() != 2) throw InputError("path letters are [edge, direction] pairs");
    out.push_back({l.at(0).get<CellId>(), l.at(1).get<int>()});
  }
  return out;
}

Json matrix_to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    out.push_back(row);
  }
  return out;
}

RatMatrix matrix_from_json(const Json& j, int rank) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank) throw InputError("transport must have rank rows");
  RatMatrix m(rank, rank);
  for (int i = 0; i < rank; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != rank) throw InputError("transport must have rank columns");
    for (int k = 0; k < rank; ++k) m(i, k) = rat_from(row.at(static_cast<std::size_t>(k)));
  }
  return m;
}

Json pair_to_json(const CellPair& p) {
  const auto& c = p.complex;
  Json doc;
  Json cells = Json::array();
  for (int d = 0; d <= c.dimension(); ++d) cells.push_back(c.cells(d));
  doc["cells"] = cells;
  Json boundary = Json::object();
  for (const auto& [id, entries] : c.boundary_map()) {
    Json list = Json::array();
    for (const auto& inc : entries) list.push_back({inc.face, inc.coeff});
    boundary[std::to_string(id)] = list;
  }
  doc["boundary"] = boundary;
  Json words = Json::object();
  for (const auto& [id, w] : c.word_map()) words[std::to_string(id)] = path_to_json(w);
  doc["attaching_words"] = words;
  doc["subcomplex"] = p.sub;
  return doc;
}

CellPair pair_from_json(const Json& doc) {
  std::vector<std::vector<CellId>> cells;
  for (const auto& dim : require(doc, "cells")) cells.push_back(dim.get<std::vector<CellId>>());
  std::map<CellId, std::vector<Incidence>> boundary;
  if (doc.contains("boundary"))
    for (const auto& [key, list] : object_at(doc, "boundary").items()) {
      auto& entries = boundary[id_from_key(key)];
      for (const auto& e : list) {
        if (!e.is_array() || e.size() != 2) throw InputError("boundary entries are [face, coefficient] pairs");
        entries.push_back({e.at(0).get<CellId>(), e.at(1).get<int>()});
      }
    }
  std::map<CellId, std::vector<Letter>> words;
  if (doc.contains("attaching_words"))
    for (const auto& [key, list] : object_at(doc, "attaching_words").items()) words[id_from_key(key)] = path_from_json(list);
  CellPair p{CellComplex(std::move(cells), std::move(boundary), std::move(words)), {}};
  if (doc.contains("subcomplex")) {
    const auto ids = doc.at("subcomplex").get<std::vector<CellId>>();
    p.sub.insert(ids.begin(), ids.end());
  }
  return p;
}

LocalSystem local_system_from_json(const Json& j) {
  LocalSystem F;
  F.rank = j.value("rank", 1);
  if (F.rank < 1) throw InputError("local system rank must be positive");
  if (j.contains("transports"))
    for (const auto& [key, m] : object_at(j, "transports").items()) F.transport[id_from_key(key)] = matrix_from_json(m, F.rank);
  return F;
}

Json local_system_to_json(const LocalSystem& F) {
  Json t = Json::object();
  for (const auto& [e, m] : F.transport) t[std::to_string(e)] = matrix_to_json(m);
  return {{"rank", F.rank}, {"transports", t}};
}

template <typename F>
auto wrap(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
}

Json rows_of(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(j, k));
    out.push_back(row);
  }
  return out;
}

Eigen::MatrixXd matrix_of(const Json& j, int n, int n_t, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw InputError(std::string(name) + " must have n rows");
  Eigen::MatrixXd m(n, n_t);
  for (int r = 0; r < n; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<int>(row.size()) != n_t) throw InputError(std::string(name) + " must have n_t columns");
    for (int k = 0; k < n_t; ++k) m(r, k) = row.at(static_cast<std::size_t>(k)).get<double>();
  }
  return m;
}

Json vector_of(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("not valid JSON: ") + e.what());
  }
}

Json to_json(const NovikovInput& in) {
  Json doc = pair_to_json(in.pair);
  Json w = Json::object();
  for (const auto& [e, r] : in.omega.weight) w[std::to_string(e)] = to_string(r);
  doc["cocycle"] = w;
  doc["local_system"] = local_system_to_json(in.F);
  if (!in.incidence_transport.empty()) {
    Json it = Json::object();
    for (const auto& [cell, faces] : in.incidence_transport)
      for (const auto& [face, path] : faces) it[std::to_string(cell)][std::to_string(face)] = path_to_json(path);
    doc["incidence_transport"] = it;
  }
  return doc;
}

NovikovInput novikov_input_from_json(const Json& doc) {
  return wrap([&] {
    NovikovInput in;
    in.pair = pair_from_json(doc);
    for (const auto& [key, w] : object_at(doc, "cocycle").items()) in.omega.weight[id_from_key(key)] = rat_from(w);
    if (doc.contains("local_system")) in.F = local_system_from_json(doc.at("local_system"));
    if (doc.contains("incidence_transport"))
      for (const auto& [cell, faces] : object_at(doc, "incidence_transport").items())
        for (const auto& [face, path] : faces.items())
          in.incidence_transport[id_from_key(cell)][id_from_key(face)] = path_from_json(path);
    return in;
  });
}

Json to_json(const CriticalSubsetData& c) {
  Json out{{"label", c.label}, {"index", c.index}, {"poincare", c.poincare}};
  if (c.local_model) {
    Json m = pair_to_json(c.local_model->pair);
    m["local_system"] = local_system_to_json(c.local_model->F);
    out["local_model"] = m;
  }
  return out;
}

std::vector<CriticalSubsetData> critical_from_json(const Json& list) {
  return wrap([&] {
    if (!list.is_array()) throw InputError("critical data must be a list");
    std::vector<CriticalSubsetData> out;
    for (const auto& c : list) {
      CriticalSubsetData d;
      d.label = c.value("label", "");
      d.index = require(c, "index").get<int>();
      if (c.contains("local_model")) {
        const auto& m = c.at("local_model");
        LocalModel model{pair_from_json(m), LocalSystem::trivial()};
        if (m.contains("local_system")) model.F = local_system_from_json(m.at("local_system"));
        d.local_model = std::move(model);
      }
      if (c.contains("poincare") || !d.local_model) {
        d.poincare = require(c, "poincare").get<std::vector<long>>();
      } else {
        // P_C read off the local model, unshifted
        const auto shifted = local_model_contribution(d);
        for (std::size_t k = static_cast<std::size_t>(std::max(d.index, 0)); k < shifted.size(); ++k)
          d.poincare.push_back(static_cast<long>(shifted[k]));
      }
      out.push_back(std::move(d));
    }
    return out;
  });
}

Json to_json(const BoundaryData& b) {
  return {{"label", b.label},
          {"n", b.n()},
          {"n_t", b.n_t()},
          {"h", rows_of(b.h)},
          {"h_x", rows_of(b.h_x)},
          {"h_t", rows_of(b.h_t)},
          {"tol", {{"zero", b.tol.zero}, {"reg", b.tol.reg}}}};
}

BoundaryData boundary_from_json(const Json& doc) {
  return wrap([&] {
    const int n = require(doc, "n").get<int>(), n_t = require(doc, "n_t").get<int>();
    if (n < 3 || n_t < 2) throw InputError("boundary grid needs n >= 3 and n_t >= 2");
    BoundaryData b;
    b.label = doc.value("label", "");
    b.h = matrix_of(require(doc, "h"), n, n_t, "h");
    b.h_x = matrix_of(require(doc, "h_x"), n, n_t, "h_x");
    b.h_t = matrix_of(require(doc, "h_t"), n, n_t, "h_t");
    if (doc.contains("tol")) {
      b.tol.zero = doc.at("tol").value("zero", b.tol.zero);
      b.tol.reg = doc.at("tol").value("reg", b.tol.reg);
    }
    check_shape(b);
    return b;
  });
}

Json to_json(const LineModel& m) {
  Json out{{"kind", std::string(to_string(m.kind))}, {"L", m.L}, {"n", m.n}, {"T", m.T}, {"t0", m.t0}};
  if (m.kind == LinePotential::custom) {
    out["dh"] = vector_of(m.custom_dh);
    out["ddh"] = vector_of(m.custom_ddh);
  }
  return out;
}

LineModel line_model_from_json(const Json& doc) {
  return wrap([&] {
    LineModel m;
    try {
      m.kind = parse_line_potential(require(doc, "kind").get<std::string>());
    } catch (const ParameterError& e) {
      throw InputError(e.what());
    }
    m.L = doc.value("L", m.L);
    m.n = doc.value("n", m.n);
    m.T = doc.value("T", m.T);
    m.t0 = doc.value("t0", m.t0);
    if (m.kind == LinePotential::custom) {
      const auto dh = require(doc, "dh").get<std::vector<double>>();
      const auto ddh = require(doc, "ddh").get<std::vector<double>>();
      m.custom_dh = Eigen::Map<const Eigen::VectorXd>(dh.data(), static_cast<Eigen::Index>(dh.size()));
      m.custom_ddh = Eigen::Map<const Eigen::VectorXd>(ddh.data(), static_cast<Eigen::Index>(ddh.size()));
    }
    return m;
  });
}

Json to_json(const ExampleBundle& b, bool with_boundary) {
  Json doc = to_json(b.input);
  doc["novikov_kit_schema"] = kSchemaVersion;
  doc["name"] = b.name;
  Json critical = Json::array();
  for (const auto& c : b.critical) critical.push_back(to_json(c));
  doc["critical"] = critical;
  if (b.line_model) doc["line_model"] = to_json(*b.line_model);
  if (with_boundary) {
    Json list = Json::array();
    for (const auto& c : b.boundary) list.push_back(to_json(c));
    doc["boundary_data"] = list;
  }
  return doc;
}

Json coefficients(const Poly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  return out;
}

std::string decimal(const Rat& r, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << r.convert_to<double>();
  return os.str();
}

Json to_json(const NovikovResult& r, int decimals) {
  Json jumps = Json::array();
  for (const auto& d : r.jumps) {
    Json points = Json::array();
    for (const auto& p : d.points) {
      Json point{{"interval", {to_string(p.s_interval.lo), to_string(p.s_interval.hi)}},
                 {"exact", p.s_interval.exact()},
                 {"deficit", p.deficit},
                 {"factor", coefficients(p.factor)}};
      if (decimals >= 0) {
        point["interval_decimal"] = {decimal(p.s_interval.lo, decimals), decimal(p.s_interval.hi, decimals)};
        // T = -N ln s reverses the order of the endpoints
        auto T_of = [&](const Rat& s) {
          std::ostringstream os;
          os.precision(decimals);
          os << -static_cast<double>(r.scale) * std::log(s.convert_to<double>()) + 0.0;
          return os.str();
        };
        point["T_decimal"] = {T_of(p.s_interval.hi), T_of(p.s_interval.lo)};
      }
      points.push_back(point);
    }
    jumps.push_back({{"degree", d.degree}, {"points", points}});
  }
  return {{"background", r.background}, {"jumps", jumps}, {"scale_N", r.scale}};
}

Json to_json(const MorseReport& r) {
  Json verdict;
  if (const auto* c = std::get_if<Certificate>(&r.verdict)) {
    verdict["Q"] = integer_coefficients(c->Q);
  } else {
    const auto& f = std::get<CertificateFailure>(r.verdict);
    Json negative = Json::array();
    for (const auto& [k, q] : f.negative_q) negative.push_back({{"k", k}, {"q", to_string(q)}});
    verdict["failure"] = {{"remainder_at_minus1", to_string(f.remainder_at_minus1)},
                          {"negative_q", negative},
                          {"deficit", integer_coefficients(f.deficit)}};
  }
  return {{"M", integer_coefficients(r.M)}, {"N", integer_coefficients(r.N)}, {"verdict", verdict}};
}

Json to_json(const ValidationReport& r) {
  Json list = Json::array();
  for (const auto& v : r) list.push_back({{"cell", v.cell}, {"invariant", v.invariant}, {"detail", v.detail}});
  return list;
}

Json to_json(const BoundaryReport& r, const BoundaryData& b) {
  auto points = [&](const std::vector<int>& js) {
    Json out = Json::array();
    for (int j : js) out.push_back({{"j", j}, {"x", b.x(j)}, {"t", 1.0}});
    return out;
  };
  return {{"label", b.label}, {"B1", points(r.b1)}, {"B2", points(r.b2)}, {"B3", points(r.b3)}, {"ok", r.ok()}};
}

Json to_json(const ExtensionResult& r) {
  return {{"eps", r.eps},
          {"m", r.m},
          {"chi", {{"cut_lo", r.cut_lo}, {"cut_hi", r.cut_hi}, {"smoothstep_degree", r.smoothstep_degree}}},
          {"t_max", r.t_max},
          {"grid", {{"n", r.h_tilde.rows()}, {"steps", r.t.size()}}},
          {"min_grad", r.min_grad}};
}

Json to_json(const ExtensionFailure& f) {
  Json attempts = Json::array();
  for (const auto& [eps, what] : f.attempts) attempts.push_back({{"eps", eps}, {"broken", what}});
  return {{"reason", f.reason}, {"attempts", attempts}};
}

Json to_json(const DegreeSpectrum& d) {
  Json out{{"eigenvalues", vector_of(d.eigenvalues)},
           {"kernel_dim", d.kernel.dim ? Json(*d.kernel.dim) : Json(nullptr)},
           {"kernel_threshold", d.kernel.threshold},
           {"first_positive", d.kernel.first_positive}};
  if (const auto err = oracle_error(d)) {
    out["oracle"] = vector_of(*d.oracle);
    out["oracle_error"] = *err;
  }
  return out;
}

}  // namespace nk
