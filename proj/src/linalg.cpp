#include "dchern/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "dchern/errors.hpp"

namespace dchern {

EigenDecomposition eig(const CMat& a, bool want_left, bool want_right) {
  if (a.rows() != a.cols()) throw ValidationError("eig: matrix is not square");
  if (!a.allFinite()) throw ValidationError("eig: matrix has non-finite entries");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  EigenDecomposition out;
  out.values.resize(n);
  if (n == 0) return out;
  CMat work = a;
  CMat vl(want_left ? n : 1, want_left ? n : 1);
  CMat vr(want_right ? n : 1, want_right ? n : 1);
  lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, want_left ? 'V' : 'N', want_right ? 'V' : 'N', n,
                                  work.data(), n, out.values.data(), vl.data(), vl.rows(), vr.data(),
                                  vr.rows());
  if (info != 0) {
    std::ostringstream msg;
    msg << "eigensolver failed (zgeev info=" << info << ") for n=" << n << ", ||A||_1=" << norm1(a)
        << ", ||A A^H - A^H A||_max=" << max_abs(a * a.adjoint() - a.adjoint() * a);
    throw ComputationError(msg.str());
  }
  if (want_left) out.left = std::move(vl);
  if (want_right) out.right = std::move(vr);
  return out;
}

CVec eigenvalues(const CMat& a) { return eig(a, false, false).values; }

CMat expm(const CMat& a) { return a.exp(); }

double max_abs(const CMat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

double norm1(const CMat& a) { return a.size() ? a.cwiseAbs().colwise().sum().maxCoeff() : 0.0; }

MultisetMatch match_multisets(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw ValidationError("match_multisets: sizes differ");
  const Eigen::Index n = a.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) {
    if (a[i].real() != a[j].real()) return a[i].real() < a[j].real();
    return a[i].imag() < a[j].imag();
  });
  std::vector<char> used(n, 0);
  MultisetMatch m;
  for (auto i : order) {
    Eigen::Index best = -1;
    double bd = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (used[j]) continue;
      double d = std::abs(a[i] - b[j]);
      if (best < 0 || d < bd) {
        best = j;
        bd = d;
      }
    }
    used[best] = 1;
    if (m.worst < 0 || bd > m.max_distance) {
      m.max_distance = bd;
      m.worst = i;
      m.worst_a = a[i];
      m.worst_b = b[best];
    }
  }
  return m;
}

CVec concat(const CVec& a, const CVec& b) {
  CVec out(a.size() + b.size());
  out << a, b;
  return out;
}

}  // namespace dchern
