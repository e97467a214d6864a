#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

#include "dchern/linalg.hpp"

namespace testutil {

using dchern::cplx;
using dchern::CMat;
using dchern::CVec;

// Eigen's own QR-based solver, kept apart from the LAPACK path under test.
inline CVec oracle_eigenvalues(const CMat& a) {
  Eigen::ComplexEigenSolver<CMat> es(a, false);
  return es.eigenvalues();
}

// Greedy nearest pairing in input order, each element of b used once.
inline double multiset_distance(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) return INFINITY;
  std::vector<bool> used(b.size(), false);
  std::vector<Eigen::Index> order(a.size());
  std::iota(order.begin(), order.end(), 0);
  double worst = 0.0;
  for (Eigen::Index i : order) {
    Eigen::Index best = -1;
    double d = INFINITY;
    for (Eigen::Index j = 0; j < b.size(); ++j)
      if (!used[j] && std::abs(a[i] - b[j]) < d) {
        d = std::abs(a[i] - b[j]);
        best = j;
      }
    used[best] = true;
    worst = std::max(worst, d);
  }
  return worst;
}

using dchern::max_abs;

}  // namespace testutil
