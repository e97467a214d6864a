#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace dchern {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

struct EigenDecomposition {
  CVec values;
  CMat right;  // columns: A v = w v
  CMat left;   // columns: A^H u = conj(w) u, empty unless requested
};

// General complex eigendecomposition (LAPACK zgeev). Throws ComputationError
// on non-convergence, with norm and conditioning diagnostics in the message.
EigenDecomposition eig(const CMat& a, bool want_left = true, bool want_right = true);
CVec eigenvalues(const CMat& a);

// Matrix exponential by scaling and squaring with Pade approximants.
CMat expm(const CMat& a);

double max_abs(const CMat& a);
double norm1(const CMat& a);

struct MultisetMatch {
  double max_distance = 0.0;
  Eigen::Index worst = -1;  // index into the first set
  cplx worst_a{}, worst_b{};
};

// Greedy nearest-neighbour pairing of two equally sized multisets, processed
// in lexicographic order of the first. Returns the worst paired distance.
MultisetMatch match_multisets(const CVec& a, const CVec& b);

CVec concat(const CVec& a, const CVec& b);

}  // namespace dchern
