#include "novikov_kit/cellkit.hpp"

#include <algorithm>
#include <sstream>

namespace nk {

namespace {

const std::vector<CellId> kNoCells;
const std::vector<Incidence> kNoBoundary;
const std::vector<Letter> kNoWord;

std::string str(CellId id) { return std::to_string(id); }

}  // namespace

CellComplex::CellComplex(std::vector<std::vector<CellId>> cells, std::map<CellId, std::vector<Incidence>> boundary,
                         std::map<CellId, std::vector<Letter>> attaching_words)
    : cells_(std::move(cells)), boundary_(std::move(boundary)), words_(std::move(attaching_words)) {
  for (auto& dim_cells : cells_) std::sort(dim_cells.begin(), dim_cells.end());
  while (!cells_.empty() && cells_.back().empty()) cells_.pop_back();
  for (int d = 0; d < static_cast<int>(cells_.size()); ++d)
    for (CellId id : cells_[static_cast<std::size_t>(d)]) dim_of_.emplace(id, d);
}

const std::vector<CellId>& CellComplex::cells(int d) const {
  if (d < 0 || d > dimension()) return kNoCells;
  return cells_[static_cast<std::size_t>(d)];
}

std::size_t CellComplex::cell_count() const {
  std::size_t n = 0;
  for (const auto& c : cells_) n += c.size();
  return n;
}

int CellComplex::dim_of(CellId id) const {
  auto it = dim_of_.find(id);
  return it == dim_of_.end() ? -1 : it->second;
}

const std::vector<Incidence>& CellComplex::boundary(CellId id) const {
  auto it = boundary_.find(id);
  return it == boundary_.end() ? kNoBoundary : it->second;
}

std::map<CellId, int> CellComplex::incidence(CellId id) const {
  std::map<CellId, int> out;
  for (const auto& inc : boundary(id)) out[inc.face] += inc.coeff;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

const std::vector<Letter>& CellComplex::word(CellId id) const {
  auto it = words_.find(id);
  return it == words_.end() ? kNoWord : it->second;
}

CellId CellComplex::tail(CellId edge) const {
  for (const auto& inc : boundary(edge))
    if (inc.coeff == -1) return inc.face;
  throw InputError("edge " + str(edge) + " has no tail vertex");
}

CellId CellComplex::head(CellId edge) const {
  for (const auto& inc : boundary(edge))
    if (inc.coeff == 1) return inc.face;
  throw InputError("edge " + str(edge) + " has no head vertex");
}

RatMatrix LocalSystem::along(CellId edge) const {
  auto it = transport.find(edge);
  return it == transport.end() ? RatMatrix(RatMatrix::Identity(rank, rank)) : it->second;
}

ValidationReport validate_complex(const CellComplex& c) {
  ValidationReport out;
  auto add = [&](CellId id, std::string inv, std::string detail) {
    out.push_back({id, std::move(inv), std::move(detail)});
  };

  std::map<CellId, int> seen;
  for (int d = 0; d <= c.dimension(); ++d)
    for (CellId id : c.cells(d))
      if (++seen[id] == 2) add(id, "unique cell ids", "id listed more than once");

  for (const auto& [id, entries] : c.boundary_map()) {
    if (!c.contains(id)) {
      add(id, "referenced cells exist", "boundary given for an unknown cell");
      continue;
    }
    const int d = c.dim_of(id);
    if (d == 0 && !entries.empty()) add(id, "cell dimensions", "a vertex has no boundary");
    for (const auto& inc : entries) {
      if (!c.contains(inc.face))
        add(id, "referenced cells exist", "boundary refers to unknown cell " + str(inc.face));
      else if (c.dim_of(inc.face) != d - 1)
        add(id, "cell dimensions", "boundary cell " + str(inc.face) + " is not of dimension " + std::to_string(d - 1));
    }
  }

  bool edges_ok = true;
  for (CellId e : c.cells(1)) {
    const auto& b = c.boundary(e);
    const bool ok = b.size() == 2 &&
                    ((b[0].coeff == -1 && b[1].coeff == 1) || (b[0].coeff == 1 && b[1].coeff == -1)) &&
                    c.dim_of(b[0].face) == 0 && c.dim_of(b[1].face) == 0;
    if (!ok) {
      edges_ok = false;
      add(e, "edge endpoints", "an edge lists exactly one tail (-1) and one head (+1) vertex");
    }
  }

  for (const auto& [id, w] : c.word_map())
    if (c.dim_of(id) != 2) add(id, "attaching words", "attaching word given for a cell that is not a 2-cell");

  for (CellId f : c.cells(2)) {
    if (!c.has_word(f) || c.word(f).empty()) {
      add(f, "attaching words", "2-cell without a nonempty attaching word");
      continue;
    }
    const auto& w = c.word(f);
    bool letters_ok = true;
    for (const auto& l : w)
      if (c.dim_of(l.edge) != 1 || (l.dir != 1 && l.dir != -1)) {
        letters_ok = false;
        add(f, "attaching words", "letter refers to " + str(l.edge) + " which is not an edge, or has dir not +-1");
      }
    if (!letters_ok) continue;
    std::map<CellId, int> abel;
    for (const auto& l : w) abel[l.edge] += l.dir;
    for (auto it = abel.begin(); it != abel.end();) it = it->second == 0 ? abel.erase(it) : std::next(it);
    if (abel != c.incidence(f)) add(f, "incidence = abelianized word", "signed incidence list differs from the attaching word");
    if (edges_ok) {
      for (std::size_t i = 0; i < w.size(); ++i)
        if (c.letter_end(w[i]) != c.letter_start(w[(i + 1) % w.size()])) {
          add(f, "attaching words", "attaching word is not a closed edge path");
          break;
        }
    }
  }

  if (edges_ok) {
    for (int d = 2; d <= c.dimension(); ++d)
      for (CellId s : c.cells(d)) {
        std::map<CellId, long> dd;
        for (const auto& [t, n] : c.incidence(s))
          for (const auto& [u, m] : c.incidence(t)) dd[u] += static_cast<long>(n) * m;
        for (const auto& [u, v] : dd)
          if (v != 0) {
            add(s, "composed boundary is zero", "coefficient " + std::to_string(v) + " on cell " + str(u));
            break;
          }
      }
  }
  return out;
}

ValidationReport validate_pair(const CellPair& p) {
  ValidationReport out = validate_complex(p.complex);
  for (CellId id : p.sub) {
    if (!p.complex.contains(id)) {
      out.push_back({id, "subcomplex", "subcomplex lists an unknown cell"});
      continue;
    }
    for (const auto& inc : p.complex.boundary(id))
      if (!p.sub.count(inc.face)) {
        out.push_back({id, "subcomplex", "boundary cell " + str(inc.face) + " missing from the subcomplex"});
        break;
      }
  }
  return out;
}

ValidationReport check_cocycle(const CellComplex& c, const OneCocycle& omega) {
  for (CellId e : c.cells(1))
    if (!omega.weight.count(e)) throw InputError("cocycle has no weight for edge " + str(e));
  for (const auto& [e, w] : omega.weight)
    if (c.dim_of(e) != 1) throw InputError("cocycle weight given for " + str(e) + ", which is not an edge");
  ValidationReport out;
  for (CellId f : c.cells(2)) {
    Rat sum(0);
    for (const auto& [e, n] : c.incidence(f)) sum += Rat(n) * omega.weight.at(e);
    if (sum != 0) out.push_back({f, "cocycle condition", "weights sum to " + to_string(sum) + " around the cell"});
  }
  return out;
}

ValidationReport check_flat(const CellComplex& c, const LocalSystem& F) {
  if (F.rank < 1) throw InputError("local system rank must be positive");
  for (const auto& [e, m] : F.transport) {
    if (c.dim_of(e) != 1) throw InputError("transport given for " + str(e) + ", which is not an edge");
    if (m.rows() != F.rank || m.cols() != F.rank)
      throw InputError("transport of edge " + str(e) + " is not " + std::to_string(F.rank) + "x" + std::to_string(F.rank));
    if (rank(m) != F.rank) throw InputError("transport of edge " + str(e) + " is not invertible");
  }
  ValidationReport out;
  const RatMatrix id = RatMatrix::Identity(F.rank, F.rank);
  for (CellId f : c.cells(2))
    if (holonomy(F, c.word(f)) != id) out.push_back({f, "flatness", "holonomy around the cell is not the identity"});
  return out;
}

RatMatrix holonomy(const LocalSystem& F, const Path& path) {
  RatMatrix acc = RatMatrix::Identity(F.rank, F.rank);
  for (const auto& l : path) {
    const RatMatrix t = F.along(l.edge);
    acc = l.dir > 0 ? RatMatrix(acc * t) : RatMatrix(acc * inverse(t));
  }
  return acc;
}

Rat period(const OneCocycle& omega, const Path& path) {
  Rat acc(0);
  for (const auto& l : path) acc += Rat(l.dir) * omega.weight.at(l.edge);
  return acc;
}

std::vector<std::vector<CellId>> cells_in(const CellComplex& c, const std::set<CellId>& ids) {
  std::vector<std::vector<CellId>> out(static_cast<std::size_t>(c.dimension() + 1));
  for (int d = 0; d <= c.dimension(); ++d)
    for (CellId id : c.cells(d))
      if (ids.count(id)) out[static_cast<std::size_t>(d)].push_back(id);
  return out;
}

std::vector<std::vector<CellId>> relative_subcomplex(const CellPair& p) {
  std::vector<std::vector<CellId>> out(static_cast<std::size_t>(p.complex.dimension() + 1));
  for (int d = 0; d <= p.complex.dimension(); ++d)
    for (CellId id : p.complex.cells(d))
      if (!p.sub.count(id)) out[static_cast<std::size_t>(d)].push_back(id);
  return out;
}

long euler_characteristic(const CellPair& p) {
  long chi = 0;
  const auto rel = relative_subcomplex(p);
  for (std::size_t d = 0; d < rel.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(rel[d].size());
  return chi;
}

}  // namespace nk
