#pragma once

#include <array>
#include <string>

#include "dchern/linalg.hpp"

namespace dchern {

enum class Boundary { Periodic, Open };

std::string to_string(Boundary b);
Boundary parse_boundary(const std::string& s);

// Couplings of the two-band lattice model plus lattice geometry.
// Defaults are the reference parameter set (lx = ly = 1, tx = ty = -1).
struct ModelParams {
  double lx = 1.0;
  double ly = 1.0;
  double tx = -1.0;
  double ty = -1.0;
  double m = 1.5;
  double lam = 0.1;
  int nx = 1;
  int ny = 1;
  Boundary boundary = Boundary::Periodic;

  void validate() const;  // throws ValidationError
  int cells() const { return nx * ny; }
};

struct Momentum {
  double kx = 0.0;
  double ky = 0.0;
};

using Mat2 = Eigen::Matrix2cd;

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

// h(k) = lx sin kx sx + ly sin ky sy + eps(k) sz, eps = m + tx cos kx + ty cos ky.
Mat2 bloch_hamiltonian(const ModelParams& p, Momentum k);

// Onsite gain/loss. M_ij = conj(D_i) D_j for coefficient row D.
struct DissipatorSpec {
  Eigen::Vector2cd gain_row;
  Eigen::Vector2cd loss_row;
  Mat2 Mg;
  Mat2 Ml;
};

DissipatorSpec dissipator_spec(const ModelParams& p);

// X(k) = i h(k) - lam (sx + sy) - sqrt(2) lam I.
Mat2 bloch_damping_matrix(const ModelParams& p, Momentum k);

// Closed form -sqrt(2) lam +/- i E(k), principal branch of E; the branch
// with the larger imaginary part comes first.
std::array<cplx, 2> bloch_damping_eigenvalues(const ModelParams& p, Momentum k);

// Dense operator over (cell, sublattice). Row of (ix, iy, s) is
// 2 * (iy * nx + ix) + s with s = 0 for A and 1 for B.
struct LatticeOperator {
  CMat matrix;
  int nx = 1;
  int ny = 1;
  Boundary boundary = Boundary::Periodic;

  Eigen::Index dim() const { return matrix.rows(); }
  Eigen::Index index(int ix, int iy, int s) const { return 2 * (static_cast<Eigen::Index>(iy) * nx + ix) + s; }
};

// Largest allowed 2L for dense lattice operators.
inline constexpr Eigen::Index kDefaultMaxDim = 4096;

LatticeOperator real_space_damping_matrix(const ModelParams& p, Eigen::Index max_dim = kDefaultMaxDim);
LatticeOperator real_space_hamiltonian(const ModelParams& p, Eigen::Index max_dim = kDefaultMaxDim);

// Block-diagonal onsite matrix (Mg or Ml) over the lattice.
LatticeOperator real_space_onsite(const ModelParams& p, const Mat2& block,
                                  Eigen::Index max_dim = kDefaultMaxDim);

// Cyclic shift by one cell along x (axis 0) or y (axis 1), acting on the
// lattice index map.
CMat translation_matrix(int nx, int ny, int axis);

}  // namespace dchern
