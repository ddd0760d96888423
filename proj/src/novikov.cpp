#include "novikov_kit/novikov.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace nk {

namespace {

using Index = Eigen::Index;

struct Term {
  CellId face;
  int sign;
  Path path;
};

void collect_closure(const CellComplex& c, CellId id, std::set<CellId>& out) {
  if (!out.insert(id).second) return;
  for (const auto& inc : c.boundary(id)) collect_closure(c, inc.face, out);
  for (const auto& l : c.word(id)) collect_closure(c, l.edge, out);  // letters that cancel in the incidence
}

CellId base_vertex(const CellComplex& c, CellId id) {
  switch (c.dim_of(id)) {
    case 0:
      return id;
    case 1:
      return c.tail(id);
    case 2: {
      CellId best = c.letter_start(c.word(id).front());
      for (const auto& l : c.word(id)) best = std::min(best, c.letter_start(l));
      return best;
    }
    default: {
      std::set<CellId> cl;
      collect_closure(c, id, cl);
      for (CellId x : cl)
        if (c.dim_of(x) == 0) return x;  // std::set is sorted
      throw InputError("cell " + std::to_string(id) + " has no vertex in its closure");
    }
  }
}

// The attaching word rotated to start at the cell's base vertex.
Path rotated_word(const CellComplex& c, CellId face) {
  const auto& w = c.word(face);
  const CellId base = base_vertex(c, face);
  std::size_t start = 0;
  while (c.letter_start(w[start]) != base) ++start;
  Path out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(w[(start + i) % w.size()]);
  return out;
}

// Shortest edge path from `from` to `to` through the closure of `cell`;
// neighbours are visited in edge-id order so the choice is deterministic.
Path closure_path(const CellComplex& c, CellId cell, CellId from, CellId to) {
  std::set<CellId> cl;
  collect_closure(c, cell, cl);
  std::map<CellId, std::vector<Letter>> adjacent;
  for (CellId e : cl) {
    if (c.dim_of(e) != 1) continue;
    adjacent[c.tail(e)].push_back({e, +1});
    adjacent[c.head(e)].push_back({e, -1});
  }
  std::map<CellId, std::pair<CellId, Letter>> came_from;
  std::deque<CellId> queue{from};
  came_from.emplace(from, std::make_pair(from, Letter{0, 0}));
  while (!queue.empty()) {
    const CellId v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (const auto& l : adjacent[v]) {
      const CellId w = c.letter_end(l);
      if (came_from.emplace(w, std::make_pair(v, l)).second) queue.push_back(w);
    }
  }
  if (!came_from.count(to))
    throw InputError("no edge path inside the closure of cell " + std::to_string(cell));
  Path path;
  for (CellId v = to; v != from; v = came_from.at(v).first) path.push_back(came_from.at(v).second);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Term> coboundary_terms(const NovikovInput& in, CellId cell) {
  const auto& c = in.pair.complex;
  std::vector<Term> out;
  const int d = c.dim_of(cell);
  if (d == 1) {
    out.push_back({c.head(cell), +1, {{cell, +1}}});
    out.push_back({c.tail(cell), -1, {}});
  } else if (d == 2) {
    Path prefix;
    for (const auto& l : rotated_word(c, cell)) {
      if (l.dir > 0) {
        out.push_back({l.edge, +1, prefix});
      } else {
        Path to_tail = prefix;
        to_tail.push_back(l);
        out.push_back({l.edge, -1, std::move(to_tail)});
      }
      prefix.push_back(l);
    }
  } else if (d >= 3) {
    const CellId base = base_vertex(c, cell);
    const auto overrides = in.incidence_transport.find(cell);
    for (const auto& [face, n] : c.incidence(cell)) {
      if (overrides != in.incidence_transport.end())
        if (auto it = overrides->second.find(face); it != overrides->second.end()) {
          out.push_back({face, n, it->second});
          continue;
        }
      out.push_back({face, n, closure_path(c, cell, base, base_vertex(c, face))});
    }
  }
  return out;
}

std::vector<std::size_t> betti_from_ranks(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& ranks) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const std::size_t out_rank = k < ranks.size() ? ranks[k] : 0;
    const std::size_t in_rank = k >= 1 && k - 1 < ranks.size() ? ranks[k - 1] : 0;
    out[k] = dims[k] - out_rank - in_rank;
  }
  return out;
}

std::vector<DegreeJumps> jumps_from(const std::vector<LaurentMatrix>& maps, std::size_t degrees) {
  std::vector<InvariantFactors> inv;
  inv.reserve(maps.size());
  for (const auto& m : maps) inv.push_back(invariant_factors(m));
  std::vector<DegreeJumps> out;
  for (std::size_t i = 0; i < degrees; ++i) {
    DegreeJumps dj{static_cast<int>(i), {}};
    std::vector<const InvariantFactors*> touching;
    if (i < inv.size()) touching.push_back(&inv[i]);
    if (i >= 1 && i - 1 < inv.size()) touching.push_back(&inv[i - 1]);
    Poly prod = Poly::constant(Rat(1));
    for (const auto* f : touching)
      if (!f->factors.empty()) prod *= f->factors.back();
    if (prod.degree() > 0) {
      const Poly g = squarefree_part(prod);
      for (const auto& root : positive_real_roots(g)) {
        std::size_t deficit = 0;
        for (const auto* f : touching)
          for (const auto& factor : f->factors)
            if (vanishes_at(gcd(factor, g), root)) ++deficit;
        dj.points.push_back({root, deficit, g});
      }
    }
    out.push_back(std::move(dj));
  }
  return out;
}

}  // namespace

long NovikovInput::scale() const {
  BigInt n(1);
  for (const auto& [e, w] : omega.weight) n = boost::multiprecision::lcm(n, denominator_of(w));
  if (n > 1000000) throw InputError("cocycle denominators are too large for the s-polynomial encoding");
  return n.convert_to<long>();
}

void validate_input(const NovikovInput& in) {
  ValidationReport report = validate_pair(in.pair);
  if (report.empty()) {
    auto more = check_cocycle(in.pair.complex, in.omega);
    report.insert(report.end(), more.begin(), more.end());
    more = check_flat(in.pair.complex, in.F);
    report.insert(report.end(), more.begin(), more.end());
  }
  const auto& c = in.pair.complex;
  if (report.empty())
    for (const auto& [cell, faces] : in.incidence_transport)
      for (const auto& [face, path] : faces) {
        const auto inc = c.incidence(cell);
        bool ok = c.dim_of(cell) >= 3 && inc.count(face);
        for (const auto& l : path) ok = ok && c.dim_of(l.edge) == 1;
        if (ok) {
          CellId v = base_vertex(c, cell);
          for (const auto& l : path) {
            ok = ok && c.letter_start(l) == v;
            v = c.letter_end(l);
          }
          ok = ok && v == base_vertex(c, face);
        }
        if (!ok)
          report.push_back({cell, "incidence transport",
                            "override for face " + std::to_string(face) + " is not a path between base vertices"});
      }
  if (report.empty()) return;
  std::ostringstream msg;
  msg << "invalid input:";
  for (const auto& v : report) msg << "\n  cell " << v.cell << ": " << v.invariant << " (" << v.detail << ")";
  throw InputError(msg.str());
}

std::size_t CochainComplex::dim(int d) const {
  if (d < 0 || d > top_degree()) return 0;
  return cells[static_cast<std::size_t>(d)].size() * static_cast<std::size_t>(rank);
}

CochainComplex build_on_cells(const NovikovInput& in, std::vector<std::vector<CellId>> cells) {
  const auto& c = in.pair.complex;
  const long N = in.scale();
  const int r = in.F.rank;
  cells.resize(static_cast<std::size_t>(std::max(c.dimension(), 0) + 1));
  CochainComplex out{std::move(cells), r, {}};

  std::unordered_map<CellId, Index> position;
  for (const auto& dim_cells : out.cells)
    for (std::size_t i = 0; i < dim_cells.size(); ++i) position[dim_cells[i]] = static_cast<Index>(i);

  for (int d = 0; d < out.top_degree(); ++d) {
    const auto& rows = out.cells[static_cast<std::size_t>(d + 1)];
    LaurentMatrix m = LaurentMatrix::Constant(static_cast<Index>(out.dim(d + 1)), static_cast<Index>(out.dim(d)), Laurent{});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto& term : coboundary_terms(in, rows[i])) {
        auto col = position.find(term.face);
        if (col == position.end() || c.dim_of(term.face) != d) continue;
        if (!std::binary_search(out.cells[static_cast<std::size_t>(d)].begin(),
                                out.cells[static_cast<std::size_t>(d)].end(), term.face))
          continue;
        const Rat exponent = Rat(N) * period(in.omega, term.path);
        if (!is_integral(exponent)) throw InputError("scaled period is not an integer");
        const int k = numerator_of(exponent).convert_to<int>();
        const RatMatrix h = holonomy(in.F, term.path);
        for (int a = 0; a < r; ++a)
          for (int b = 0; b < r; ++b)
            if (h(a, b) != 0)
              m(static_cast<Index>(i) * r + a, col->second * r + b) += Laurent::monomial(Rat(term.sign) * h(a, b), k);
      }
    }
    out.coboundary.push_back(std::move(m));
  }
  return out;
}

CochainComplex build_deformed(const NovikovInput& in) {
  validate_input(in);
  return build_on_cells(in, relative_subcomplex(in.pair));
}

std::vector<std::size_t> background_betti(const CochainComplex& c) {
  std::vector<std::size_t> dims, ranks;
  for (int d = 0; d <= c.top_degree(); ++d) dims.push_back(c.dim(d));
  for (const auto& m : c.coboundary) ranks.push_back(rank_generic(m));
  return betti_from_ranks(dims, ranks);
}

std::vector<std::size_t> betti_at(const CochainComplex& c, const Rat& s0) {
  if (s0 <= 0) throw ParameterError("s0 must be positive");
  std::vector<std::size_t> dims, ranks;
  for (int d = 0; d <= c.top_degree(); ++d) dims.push_back(c.dim(d));
  for (const auto& m : c.coboundary) ranks.push_back(evaluate_rank(m, s0));
  return betti_from_ranks(dims, ranks);
}

std::vector<DegreeJumps> jump_points(const CochainComplex& c) {
  return jumps_from(c.coboundary, static_cast<std::size_t>(c.top_degree() + 1));
}

std::vector<std::size_t> background_betti(const NovikovInput& in) { return background_betti(build_deformed(in)); }

std::vector<DegreeJumps> jump_points(const NovikovInput& in) { return jump_points(build_deformed(in)); }

NovikovResult novikov(const NovikovInput& in) {
  const auto c = build_deformed(in);
  return {background_betti(c), jump_points(c), in.scale()};
}

std::vector<std::size_t> betti_at(const NovikovInput& in, const Rat& s0) {
  if (s0 <= 0) throw ParameterError("s0 must be positive");
  return betti_at(build_deformed(in), s0);
}

ConeComplex build_cone(const NovikovInput& in) {
  validate_input(in);
  const auto& c = in.pair.complex;
  const int D = std::max(c.dimension(), 0);
  std::set<CellId> all;
  for (int d = 0; d <= D; ++d) all.insert(c.cells(d).begin(), c.cells(d).end());
  const CochainComplex X = build_on_cells(in, cells_in(c, all));
  const CochainComplex A = build_on_cells(in, cells_in(c, in.pair.sub));
  const Index r = in.F.rank;

  ConeComplex cone;
  for (int k = 0; k <= D + 1; ++k) cone.dims.push_back(X.dim(k) + A.dim(k - 1));

  for (int k = 0; k <= D; ++k) {
    LaurentMatrix m = LaurentMatrix::Constant(static_cast<Index>(cone.dims[static_cast<std::size_t>(k + 1)]),
                                              static_cast<Index>(cone.dims[static_cast<std::size_t>(k)]), Laurent{});
    const auto row_a = static_cast<Index>(X.dim(k + 1));  // start of the C^k(A) rows
    const auto col_a = static_cast<Index>(X.dim(k));      // start of the C^{k-1}(A) columns
    if (k < D) {
      const auto& dx = X.coboundary[static_cast<std::size_t>(k)];
      m.block(0, 0, dx.rows(), dx.cols()) = dx;
    }
    const auto& xk = X.cells[static_cast<std::size_t>(k)];
    const auto& ak = A.cells[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < ak.size(); ++i) {
      const auto j = static_cast<Index>(std::lower_bound(xk.begin(), xk.end(), ak[i]) - xk.begin());
      for (Index a = 0; a < r; ++a) m(row_a + static_cast<Index>(i) * r + a, j * r + a) = Laurent(1);
    }
    if (k >= 1) {
      const auto& da = A.coboundary[static_cast<std::size_t>(k - 1)];
      for (Index i = 0; i < da.rows(); ++i)
        for (Index j = 0; j < da.cols(); ++j)
          if (!da(i, j).is_zero()) m(row_a + i, col_a + j) = -da(i, j);
    }
    cone.differential.push_back(std::move(m));
  }
  return cone;
}

std::vector<std::size_t> background_betti(const ConeComplex& cone) {
  std::vector<std::size_t> ranks;
  for (const auto& m : cone.differential) ranks.push_back(rank_generic(m));
  return betti_from_ranks(cone.dims, ranks);
}

std::vector<std::size_t> betti_at(const ConeComplex& cone, const Rat& s0) {
  std::vector<std::size_t> ranks;
  for (const auto& m : cone.differential) ranks.push_back(evaluate_rank(m, s0));
  return betti_from_ranks(cone.dims, ranks);
}

long alternating_sum(const std::vector<std::size_t>& betti) {
  long acc = 0;
  for (std::size_t i = 0; i < betti.size(); ++i) acc += (i % 2 == 0 ? 1 : -1) * static_cast<long>(betti[i]);
  return acc;
}

}  // namespace nk
