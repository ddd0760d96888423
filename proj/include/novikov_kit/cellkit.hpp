#pragma once

// Finite cell complexes, pairs, rational 1-cocycles and flat local systems.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "novikov_kit/rational.hpp"

namespace nk {

using CellId = std::int64_t;

struct Incidence {
  CellId face;
  int coeff;
};

/// One letter of a 2-cell's attaching word: an edge traversed along (+1) or
/// against (-1) its stored orientation.
struct Letter {
  CellId edge;
  int dir;
};

using Path = std::vector<Letter>;

/// Finite regular-enough CW complex given combinatorially.
///
/// Edges list their endpoints in `boundary` as {tail, -1} and {head, +1};
/// a loop repeats its vertex with both signs. 2-cells also carry an ordered
/// closed attaching word used for holonomy. Ids are unique across dimensions.
class CellComplex {
 public:
  CellComplex() = default;
  CellComplex(std::vector<std::vector<CellId>> cells, std::map<CellId, std::vector<Incidence>> boundary,
              std::map<CellId, std::vector<Letter>> attaching_words);

  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  /// Sorted ids of the d-cells (empty outside [0, dimension()]).
  const std::vector<CellId>& cells(int d) const;
  std::size_t cell_count() const;

  bool contains(CellId id) const { return dim_of_.count(id) != 0; }
  /// -1 for unknown ids.
  int dim_of(CellId id) const;

  /// Raw boundary entries as given (edges keep their tail/head entries).
  const std::vector<Incidence>& boundary(CellId id) const;
  /// Boundary with repeated faces summed; zero coefficients dropped.
  std::map<CellId, int> incidence(CellId id) const;
  /// Attaching word of a 2-cell, empty if absent.
  const std::vector<Letter>& word(CellId id) const;
  bool has_word(CellId id) const { return words_.count(id) != 0; }

  /// Endpoints of a well-formed edge.
  CellId tail(CellId edge) const;
  CellId head(CellId edge) const;

  /// Vertex every letter (e, dir) starts at.
  CellId letter_start(const Letter& l) const { return l.dir > 0 ? tail(l.edge) : head(l.edge); }
  CellId letter_end(const Letter& l) const { return l.dir > 0 ? head(l.edge) : tail(l.edge); }

  const std::map<CellId, std::vector<Incidence>>& boundary_map() const { return boundary_; }
  const std::map<CellId, std::vector<Letter>>& word_map() const { return words_; }

 private:
  std::vector<std::vector<CellId>> cells_;
  std::map<CellId, std::vector<Incidence>> boundary_;
  std::map<CellId, std::vector<Letter>> words_;
  std::unordered_map<CellId, int> dim_of_;
};

struct CellPair {
  CellComplex complex;
  std::set<CellId> sub;
};

/// Periods of a closed 1-form on the 1-cells.
struct OneCocycle {
  std::map<CellId, Rat> weight;
};

/// Flat bundle of rank r given by tail-to-head transports. Edges without an
/// explicit transport carry the identity.
struct LocalSystem {
  int rank = 1;
  std::map<CellId, RatMatrix> transport;

  static LocalSystem trivial(int r = 1) { return LocalSystem{r, {}}; }
  RatMatrix along(CellId edge) const;
};

struct Violation {
  CellId cell;
  std::string invariant;
  std::string detail;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate_complex(const CellComplex& c);

/// Subcomplex closure (in addition to validate_complex on the ambient complex).
ValidationReport validate_pair(const CellPair& p);

/// Throws InputError when some 1-cell has no weight.
ValidationReport check_cocycle(const CellComplex& c, const OneCocycle& omega);

/// Throws InputError for a singular or wrongly-sized transport.
ValidationReport check_flat(const CellComplex& c, const LocalSystem& F);

/// Per degree, the sorted d-cells of the complex that are not in sub.
std::vector<std::vector<CellId>> relative_subcomplex(const CellPair& p);

/// Sum over d of (-1)^d times the number of relative d-cells.
long euler_characteristic(const CellPair& p);

/// Ordered product of transports along a path (inverses for dir = -1).
RatMatrix holonomy(const LocalSystem& F, const Path& path);

/// Signed sum of weights along a path.
Rat period(const OneCocycle& omega, const Path& path);

/// Per degree, the sorted d-cells of c whose ids are in `ids`.
std::vector<std::vector<CellId>> cells_in(const CellComplex& c, const std::set<CellId>& ids);

}  // namespace nk
