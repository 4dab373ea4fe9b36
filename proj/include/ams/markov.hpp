// Class structure and Cesaro limits of finite stochastic matrices.

#pragma once

#include <cstddef>
#include <vector>

#include "ams/linalg.hpp"

namespace ams {

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Successor lists over strictly positive entries.
Adjacency support_graph(const Matrix& p);

/// Tarjan's algorithm. Components are returned sorted by their smallest
/// member, members sorted ascending, so the output is canonical.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Adjacency& adj);

struct ClassDecomposition {
  std::vector<std::vector<std::size_t>> sccs;
  std::vector<std::size_t> scc_of;
  /// Indices into sccs of the closed (recurrent) classes, ascending.
  std::vector<std::size_t> closed;
  /// absorb(s, c): probability of eventual absorption of state s into the
  /// c-th closed class.
  Matrix absorb;
  /// Stationary distribution of each closed class, over the full state space.
  std::vector<Vector> classdist;

  bool is_closed_state(std::size_t s) const;
};

/// Throws InvariantViolation unless p is square and row-stochastic.
void require_stochastic(const Matrix& p);

ClassDecomposition decompose(const Matrix& p);

/// Pi = lim (1/n) sum_{k<n} P^k, assembled as Pi[i,j] = sum_C h(i,C) pi_C(j).
Matrix cesaro_limit(const Matrix& p);
Matrix cesaro_limit(const ClassDecomposition& d, std::size_t n);

/// Strict structural positivity: exact sign for rationals, > 0 for doubles.
/// Graph questions never use the float tolerance.
bool structurally_positive(const Scalar& x);

}  // namespace ams
