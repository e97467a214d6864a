#pragma once

#include <string>
#include <vector>

#include "dchern/model.hpp"

namespace dchern {

// Lindblad operator linear in fermions: sum_j coeffs_j c_j (annihilation)
// or sum_j coeffs_j c_j^dagger (creation).
struct JumpOperator {
  CVec coeffs;
  bool creation = false;
};

// Majorana representation with c_j = (w_{2j} - i w_{2j+1}) / 2 (0-based).
struct MajoranaRep {
  CMat HM;  // antisymmetric; H = sum_ab w_a HM_ab w_b + identity_shift
  CMat lM;  // one row per jump operator
  CMat MM;  // MM_ab = sum_mu conj(lM_mu,a) lM_mu,b
  double identity_shift = 0.0;
};

struct StructureMatrices {
  CMat Z;  // HM + i Re(MM)^T
  RMat Y;  // 2 Im(MM)^T
};

// h is the coefficient matrix of H = sum_ij h_ij c_i^dagger c_j.
MajoranaRep majorana_rep(const CMat& h, const std::vector<JumpOperator>& jumps);
StructureMatrices structure_matrices(const MajoranaRep& rep);

// Closed form Z = 1/4 (h_r + M_i^T) (x) sy + i/4 (h_i + M_r^T) (x) 1, where
// M = M_l + M_g^T collects loss and gain.
CMat structure_z_closed_form(const CMat& h, const CMat& Ml, const CMat& Mg);

// Loss and gain operator per cell built from dissipator_spec rows.
std::vector<JumpOperator> lattice_jump_operators(const ModelParams& p);

// Physical single-particle Hamiltonian h_phys whose damping matrix
// i h_phys^T - (Ml^T + Mg) is real_space_damping_matrix.
CMat physical_hamiltonian(const ModelParams& p);

enum class UnionFault { None, FlipDissipativeSign };

struct UnionReport {
  bool pass = false;
  double max_distance = 0.0;
  double tolerance = 1e-8;
  cplx worst_rapidity{}, worst_damping{};
  CVec rapidities;  // eig(4iZ)
};

// Compares eig(4iZ) with eig(X) u eig(X*) for the lattice in p. The fault
// hook corrupts the damping matrix side to exercise failure reporting.
UnionReport verify_union(const ModelParams& p, double tol = 1e-8, UnionFault fault = UnionFault::None);

// Rapidities entering subset sums: those with Re <= tol. For dissipative
// systems this keeps all 4L values.
CVec select_rapidities(const CVec& eig4iz, double tol = 1e-10);

// All 2^n subset sums, empty subset first. n <= max_modes <= 20.
CVec liouvillian_eigenvalues(const CVec& rapidities, int max_modes = 20);

// Brute-force Liouvillian spectrum on the 2^n-dimensional Fock space via
// Jordan-Wigner operators (n <= 3 modes).
CVec fock_liouvillian_spectrum(const CMat& h, const std::vector<JumpOperator>& jumps);

}  // namespace dchern
