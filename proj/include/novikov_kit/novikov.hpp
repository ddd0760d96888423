#pragma once

// Novikov deformation of the relative twisted cochain complex: background
// Betti numbers, jump points and pointwise Betti numbers, plus the mapping
// cone of the restriction to the subcomplex as an independent route.

#include <cstddef>
#include <map>
#include <vector>

#include "novikov_kit/cellkit.hpp"
#include "novikov_kit/exactalg.hpp"

namespace nk {

/// A pair with a closed 1-cocycle and a flat local system.
///
/// Cochains of a cell take values in the fiber over the cell's base point:
/// a vertex is its own base, an edge is based at its tail, a 2-cell at the
/// lowest-id vertex its attaching word passes through, and a higher cell at
/// the lowest-id vertex of its closure. Transport from a cell's base to the
/// base of a face runs along its attaching word (2-cells) or along a
/// shortest edge path in the closure (dimension >= 3) unless overridden in
/// `incidence_transport[cell][face]`.
struct NovikovInput {
  CellPair pair;
  OneCocycle omega;
  LocalSystem F = LocalSystem::trivial();
  std::map<CellId, std::map<CellId, Path>> incidence_transport;

  /// Least common denominator N of the weights; s = exp(-T/N).
  long scale() const;
};

/// Throws InputError listing the violations when the input is not valid.
void validate_input(const NovikovInput& in);

/// Deformed coboundaries on a closed set of cells; coboundary[d] maps
/// d-cochains to (d+1)-cochains, with rank-sized blocks per cell.
struct CochainComplex {
  std::vector<std::vector<CellId>> cells;
  int rank = 1;
  std::vector<LaurentMatrix> coboundary;

  int top_degree() const { return static_cast<int>(cells.size()) - 1; }
  std::size_t dim(int d) const;
};

/// The relative complex of the pair (cells of sub removed).
CochainComplex build_deformed(const NovikovInput& in);

/// The deformed complex on an explicit cell list, which must be closed
/// under boundary or be the complement of such a set.
CochainComplex build_on_cells(const NovikovInput& in, std::vector<std::vector<CellId>> cells);

struct JumpPoint {
  RootInterval s_interval;  ///< T = -N ln s
  std::size_t deficit;      ///< Betti number at the jump minus the background value
  Poly factor;              ///< squarefree polynomial whose root the interval isolates
};

struct DegreeJumps {
  int degree;
  std::vector<JumpPoint> points;
};

struct NovikovResult {
  std::vector<std::size_t> background;
  std::vector<DegreeJumps> jumps;
  long scale = 1;
};

std::vector<std::size_t> background_betti(const NovikovInput& in);
std::vector<DegreeJumps> jump_points(const NovikovInput& in);
NovikovResult novikov(const NovikovInput& in);

/// Betti numbers of the relative complex specialised at s = s0 > 0.
std::vector<std::size_t> betti_at(const NovikovInput& in, const Rat& s0);

std::vector<std::size_t> background_betti(const CochainComplex& c);
std::vector<std::size_t> betti_at(const CochainComplex& c, const Rat& s0);
std::vector<DegreeJumps> jump_points(const CochainComplex& c);

/// Mapping cone of the restriction C(X) -> C(A):
/// D(eta, eta1) = (delta eta, -delta eta1 + j* eta) on C^k(X) + C^{k-1}(A).
struct ConeComplex {
  std::vector<std::size_t> dims;
  std::vector<LaurentMatrix> differential;  ///< differential[k]: degree k -> k + 1
};

ConeComplex build_cone(const NovikovInput& in);
std::vector<std::size_t> background_betti(const ConeComplex& cone);
std::vector<std::size_t> betti_at(const ConeComplex& cone, const Rat& s0);

/// Sum of (-1)^i b_i.
long alternating_sum(const std::vector<std::size_t>& betti);

}  // namespace nk
