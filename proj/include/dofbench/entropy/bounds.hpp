#pragma once

#include "dofbench/rational.hpp"

#include <stdexcept>

namespace dofbench::entropy {

/// Multiple-access style per-user outer bound 1/2 + (M-1)/K for a fully
/// connected K-user network with size-M decoding clusters, valid for almost
/// all channel coefficients.
inline Rational clustered_outer_bound(int users, int cluster_size) {
  if (users < 1) throw std::invalid_argument("K must be positive");
  if (cluster_size < 1 || cluster_size > users) throw std::invalid_argument("cluster size must lie in [1, K]");
  Rational bound = Rational(1, 2) + Rational(cluster_size - 1, users);
  bound.canonicalize();
  return bound;
}

/// Sum DoF of the 4-user fully connected network with pairwise clustered
/// decoding (known result, not derived here).
inline Rational fully_connected_pairwise_dof() { return Rational(8, 3); }

/// Sum DoF bound for the locally connected counterpart, derived by the
/// certificate checker.
inline Rational locally_connected_pairwise_dof() { return Rational(12, 5); }

}  // namespace dofbench::entropy
