#pragma once

// Small hand-built complexes and a random generator shared by the tests.

#include <random>

#include "novikov_kit/novikov.hpp"

namespace fx {

using nk::CellComplex;
using nk::CellId;
using nk::Incidence;
using nk::Letter;
using nk::Rat;

inline std::vector<Incidence> edge(CellId tail, CellId head) { return {{tail, -1}, {head, 1}}; }

inline std::vector<Incidence> abelianize(const std::vector<Letter>& w) {
  std::map<CellId, int> acc;
  for (const auto& l : w) acc[l.edge] += l.dir;
  std::vector<Incidence> out;
  for (const auto& [e, n] : acc)
    if (n != 0) out.push_back({e, n});
  return out;
}

/// One vertex 0 and a loop 1.
inline CellComplex circle() { return CellComplex({{0}, {1}}, {{1, edge(0, 0)}}, {}); }

/// One vertex 0, loops a = 1 and b = 2, face 3 with word a b a^-1 b^-1.
inline CellComplex torus(std::vector<Letter> word = {{1, 1}, {2, 1}, {1, -1}, {2, -1}}) {
  return CellComplex({{0}, {1, 2}, {3}}, {{1, edge(0, 0)}, {2, edge(0, 0)}, {3, abelianize(word)}}, {{3, word}});
}

/// Vertices 0 (left end) and 1 (right end), edge 2 from 0 to 1.
inline CellComplex interval() { return CellComplex({{0, 1}, {2}}, {{2, edge(0, 1)}}, {}); }

/// A 3-ball whose 3-cell is based at vertex 0 while one of its faces is based
/// at vertex 1, so the coboundary needs a transport path inside the closure.
/// Vertices 0,1,2; edges a=3 (0->1), b=4 (1->2), c=5 (1->2); faces 6 = a b c^-1 a^-1
/// and 7 = b c^-1; 3-cell 8 with boundary 6 - 7.
inline CellComplex pinched_ball() {
  const std::vector<Letter> w6{{3, 1}, {4, 1}, {5, -1}, {3, -1}}, w7{{4, 1}, {5, -1}};
  return CellComplex({{0, 1, 2}, {3, 4, 5}, {6, 7}, {8}},
                     {{3, edge(0, 1)}, {4, edge(1, 2)}, {5, edge(1, 2)}, {6, abelianize(w6)}, {7, abelianize(w7)},
                      {8, {{6, 1}, {7, -1}}}},
                     {{6, w6}, {7, w7}});
}

inline nk::NovikovInput input(CellComplex c, std::map<CellId, Rat> weights, std::set<CellId> sub = {},
                              nk::LocalSystem F = nk::LocalSystem::trivial()) {
  nk::NovikovInput in;
  in.pair = {std::move(c), std::move(sub)};
  in.omega.weight = std::move(weights);
  in.F = std::move(F);
  return in;
}

/// Weights of the exact cocycle dh.
inline std::map<CellId, Rat> exact_weights(const CellComplex& c, const std::map<CellId, Rat>& h) {
  std::map<CellId, Rat> w;
  for (CellId e : c.cells(1)) w[e] = h.at(c.head(e)) - h.at(c.tail(e));
  return w;
}

inline nk::RatMatrix mat2(int a, int b, int c, int d) {
  nk::RatMatrix m(2, 2);
  m << Rat(a), Rat(b), Rat(c), Rat(d);
  return m;
}

/// Rational basis of {x : A x = 0} by Gauss-Jordan elimination.
inline std::vector<nk::RatVector> nullspace(nk::RatMatrix a) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.row(p).swap(a.row(r));
    const Rat inv = Rat(1) / a(r, c);
    for (Eigen::Index j = 0; j < cols; ++j) a(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != r && a(i, c) != 0) {
        const Rat f = a(i, c);
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
      }
    pivots.push_back(c);
    ++r;
  }
  std::vector<nk::RatVector> basis;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    nk::RatVector v = nk::RatVector::Constant(cols, Rat(0));
    v(free) = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v(pivots[k]) = -a(static_cast<Eigen::Index>(k), free);
    basis.push_back(v);
  }
  return basis;
}

struct RandomInput {
  nk::NovikovInput in;
  bool exact = false;
  bool integral = false;
};

/// Random connected 2-complex (at most 40 cells) with a random subcomplex, a
/// random cocycle from the cocycle space and a flat local system of rank 1 or 2
/// with commuting holonomy, conjugated by a random vertex gauge.
inline RandomInput random_input(std::mt19937& rng) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int nv = uni(1, 10), ne = uni(nv, nv + 12);
  std::vector<CellId> verts, edges, faces;
  std::map<CellId, std::vector<Incidence>> boundary;
  std::map<CellId, std::vector<Letter>> words;
  CellId next = 0;
  for (int i = 0; i < nv; ++i) verts.push_back(next++);
  std::vector<std::pair<CellId, CellId>> ends;
  for (int i = 0; i < ne; ++i) {
    CellId t, h;
    if (i < nv - 1) {  // spanning tree first
      t = verts[static_cast<std::size_t>(uni(0, i))];
      h = verts[static_cast<std::size_t>(i + 1)];
      if (uni(0, 1)) std::swap(t, h);
    } else {
      t = verts[static_cast<std::size_t>(uni(0, nv - 1))];
      h = verts[static_cast<std::size_t>(uni(0, nv - 1))];
    }
    edges.push_back(next);
    ends.emplace_back(t, h);
    boundary[next++] = edge(t, h);
  }
  // faces along random closed walks
  std::map<CellId, std::vector<Letter>> out_letters;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out_letters[ends[i].first].push_back({edges[i], 1});
    out_letters[ends[i].second].push_back({edges[i], -1});
  }
  auto end_of = [&](const Letter& l) {
    const auto& e = ends[static_cast<std::size_t>(l.edge - static_cast<CellId>(nv))];
    return l.dir > 0 ? e.second : e.first;
  };
  const int budget = 40 - nv - ne;
  const int nf = uni(0, std::min(14, std::max(budget, 0)));
  for (int f = 0; f < nf; ++f) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      const CellId start = verts[static_cast<std::size_t>(uni(0, nv - 1))];
      std::vector<Letter> w;
      CellId v = start;
      const int len = uni(1, 8);
      for (int k = 0; k < len || v != start; ++k) {
        if (k > 40) break;
        const auto& opts = out_letters[v];
        if (opts.empty()) break;
        const Letter l = opts[static_cast<std::size_t>(uni(0, static_cast<int>(opts.size()) - 1))];
        w.push_back(l);
        v = end_of(l);
      }
      if (w.empty() || v != start) continue;
      faces.push_back(next);
      boundary[next] = abelianize(w);
      words[next++] = w;
      break;
    }
  }
  CellComplex c({verts, edges, faces}, boundary, words);

  // cocycle space: kernel of the face-edge incidence matrix
  nk::RatMatrix inc = nk::RatMatrix::Constant(static_cast<Eigen::Index>(faces.size()),
                                              static_cast<Eigen::Index>(edges.size()), Rat(0));
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (const auto& [e, n] : c.incidence(faces[i])) inc(static_cast<Eigen::Index>(i), e - nv) = n;
  const auto basis = nullspace(inc);
  auto random_cocycle = [&](int lo, int hi) {
    nk::RatVector v = nk::RatVector::Constant(static_cast<Eigen::Index>(edges.size()), Rat(0));
    for (const auto& b : basis) v += Rat(uni(lo, hi)) * b;
    // clear denominators so that exponents stay integral
    nk::BigInt den(1);
    for (Eigen::Index i = 0; i < v.size(); ++i) den = boost::multiprecision::lcm(den, nk::denominator_of(v(i)));
    return nk::RatVector(v * Rat(den));
  };

  RandomInput out;
  const int kind = uni(0, 3);
  std::map<CellId, Rat> weights;
  if (kind == 0) {  // exact
    std::map<CellId, Rat> h;
    for (CellId v : verts) h[v] = Rat(uni(-6, 6)) / Rat(uni(1, 3));
    weights = exact_weights(c, h);
    out.exact = true;
  } else {
    const nk::RatVector w = random_cocycle(-2, 2);
    const int den = kind == 1 ? uni(1, 3) : 1;
    for (std::size_t i = 0; i < edges.size(); ++i) weights[edges[i]] = w(static_cast<Eigen::Index>(i)) / Rat(den);
  }
  out.integral = true;
  for (const auto& [e, w] : weights) out.integral = out.integral && nk::is_integral(w);

  nk::LocalSystem F = nk::LocalSystem::trivial(uni(1, 2));
  const int system = uni(0, 2);
  if (system > 0) {
    const nk::RatVector k1 = random_cocycle(-1, 1), k2 = random_cocycle(-1, 1);
    std::map<CellId, nk::RatMatrix> gauge;
    for (CellId v : verts) {
      nk::RatMatrix g;
      do {
        g = nk::RatMatrix(F.rank, F.rank);
        for (int i = 0; i < F.rank; ++i)
          for (int j = 0; j < F.rank; ++j) g(i, j) = Rat(uni(-2, 2));
      } while (nk::rank(g) != F.rank);
      gauge[v] = g;
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto a = k1(static_cast<Eigen::Index>(i)).convert_to<long>();
      const auto b = k2(static_cast<Eigen::Index>(i)).convert_to<long>();
      nk::RatMatrix d = nk::RatMatrix::Identity(F.rank, F.rank);
      if (system == 1) {
        d(0, 0) = nk::pow(Rat(2), a);
        if (F.rank == 2) d(1, 1) = nk::pow(Rat(3), b);
      } else if (F.rank == 2) {
        d(0, 1) = Rat(a);  // J^a
      } else {
        d(0, 0) = nk::pow(Rat(-1), a);
      }
      F.transport[edges[i]] = gauge[ends[i].first] * d * nk::inverse(gauge[ends[i].second]);
    }
  }

  // random subcomplex: a few vertices, then edges and faces whose boundary is inside
  std::set<CellId> sub;
  for (CellId v : verts)
    if (uni(0, 2) == 0) sub.insert(v);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (sub.count(ends[i].first) && sub.count(ends[i].second) && uni(0, 1)) sub.insert(edges[i]);
  for (CellId f : faces) {
    bool closed = true;
    for (const auto& l : c.word(f)) closed = closed && sub.count(l.edge);
    if (closed && uni(0, 1)) sub.insert(f);
  }

  out.in = input(std::move(c), std::move(weights), std::move(sub), std::move(F));
  return out;
}

}  // namespace fx
