#include "dchern/thirdq.hpp"

#include <cmath>
#include <sstream>

#include "dchern/errors.hpp"

namespace dchern {

namespace {

const cplx I1{0.0, 1.0};

// Kronecker product of an n x n matrix with a 2 x 2 block, mode index outer.
CMat kron2(const CMat& a, const Mat2& b) {
  CMat out(2 * a.rows(), 2 * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

MajoranaRep majorana_rep(const CMat& h, const std::vector<JumpOperator>& jumps) {
  if (h.rows() != h.cols()) throw ValidationError("majorana_rep: h is not square");
  const double herm = max_abs(h - h.adjoint());
  if (herm > 1e-12 * std::max(1.0, max_abs(h)))
    throw ValidationError("majorana_rep: h is not Hermitian (defect " + std::to_string(herm) + ")");
  const Eigen::Index n = h.rows();
  MajoranaRep rep;
  const CMat a = 0.25 * kron2(h, Mat2::Identity() + pauli_y());
  rep.HM = 0.5 * (a - a.transpose());
  rep.identity_shift = a.diagonal().sum().real();
  rep.lM = CMat::Zero(static_cast<Eigen::Index>(jumps.size()), 2 * n);
  for (std::size_t mu = 0; mu < jumps.size(); ++mu) {
    const JumpOperator& j = jumps[mu];
    if (j.coeffs.size() != n) throw ValidationError("majorana_rep: jump operator length mismatch");
    const cplx phase = j.creation ? I1 : -I1;
    for (Eigen::Index k = 0; k < n; ++k) {
      rep.lM(mu, 2 * k) = 0.5 * j.coeffs[k];
      rep.lM(mu, 2 * k + 1) = 0.5 * phase * j.coeffs[k];
    }
  }
  rep.MM = rep.lM.adjoint() * rep.lM;
  return rep;
}

StructureMatrices structure_matrices(const MajoranaRep& rep) {
  StructureMatrices s;
  const RMat re = rep.MM.real();
  s.Z = rep.HM + I1 * re.transpose().cast<cplx>();
  s.Y = 2.0 * rep.MM.imag().transpose();
  return s;
}

CMat structure_z_closed_form(const CMat& h, const CMat& Ml, const CMat& Mg) {
  const CMat m = Ml + Mg.transpose();
  const RMat hr = h.real(), hi = h.imag(), mr = m.real(), mi = m.imag();
  const CMat first = (hr + mi.transpose()).cast<cplx>();
  const CMat second = (hi + mr.transpose()).cast<cplx>();
  return 0.25 * kron2(first, pauli_y()) + 0.25 * I1 * kron2(second, Mat2::Identity());
}

std::vector<JumpOperator> lattice_jump_operators(const ModelParams& p) {
  p.validate();
  const DissipatorSpec d = dissipator_spec(p);
  const Eigen::Index modes = 2 * static_cast<Eigen::Index>(p.cells());
  std::vector<JumpOperator> out;
  for (Eigen::Index c = 0; c < p.cells(); ++c) {
    JumpOperator loss{CVec::Zero(modes), false}, gain{CVec::Zero(modes), true};
    loss.coeffs.segment<2>(2 * c) = d.loss_row;
    gain.coeffs.segment<2>(2 * c) = d.gain_row;
    out.push_back(std::move(loss));
    out.push_back(std::move(gain));
  }
  return out;
}

CMat physical_hamiltonian(const ModelParams& p) { return real_space_hamiltonian(p).matrix.transpose(); }

UnionReport verify_union(const ModelParams& p, double tol, UnionFault fault) {
  const CMat h = physical_hamiltonian(p);
  const StructureMatrices sm = structure_matrices(majorana_rep(h, lattice_jump_operators(p)));
  CMat x = real_space_damping_matrix(p).matrix;
  if (fault == UnionFault::FlipDissipativeSign) {
    // the on-site dissipative block changes sign, Hamiltonian part untouched
    const Mat2 d = -p.lam * (pauli_x() + pauli_y()) - std::sqrt(2.0) * p.lam * Mat2::Identity();
    for (Eigen::Index r = 0; r < x.rows(); r += 2) x.block<2, 2>(r, r) -= 2.0 * d;
  }
  UnionReport rep;
  rep.tolerance = tol;
  rep.rapidities = eigenvalues(4.0 * I1 * sm.Z);
  const CVec ex = eigenvalues(x);
  const MultisetMatch mm = match_multisets(rep.rapidities, concat(ex, ex.conjugate()));
  rep.max_distance = mm.max_distance;
  rep.worst_rapidity = mm.worst_a;
  rep.worst_damping = mm.worst_b;
  rep.pass = mm.max_distance < tol;
  return rep;
}

CVec select_rapidities(const CVec& eig4iz, double tol) {
  std::vector<cplx> keep;
  for (Eigen::Index i = 0; i < eig4iz.size(); ++i)
    if (eig4iz[i].real() <= tol) keep.push_back(eig4iz[i]);
  return Eigen::Map<CVec>(keep.data(), static_cast<Eigen::Index>(keep.size()));
}

CVec liouvillian_eigenvalues(const CVec& rapidities, int max_modes) {
  if (max_modes > 20) throw ValidationError("liouvillian_eigenvalues: max_modes is capped at 20");
  const Eigen::Index n = rapidities.size();
  if (n > max_modes) {
    std::ostringstream msg;
    msg << "liouvillian_eigenvalues: " << n << " rapidities would give 2^" << n
        << " subset sums; at most " << max_modes << " allowed (use a lattice with <= " << max_modes / 4
        << " cells)";
    throw ResourceError(msg.str());
  }
  const std::size_t count = std::size_t{1} << n;
  CVec out(static_cast<Eigen::Index>(count));
  out[0] = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t half = std::size_t{1} << i;
    for (std::size_t s = 0; s < half; ++s) out[half + s] = out[s] + rapidities[i];
  }
  return out;
}

CVec fock_liouvillian_spectrum(const CMat& h, const std::vector<JumpOperator>& jumps) {
  const Eigen::Index n = h.rows();
  if (n < 1 || n > 3) throw ValidationError("fock_liouvillian_spectrum: supports 1 to 3 modes");
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMat zz(2, 2), lower(2, 2), id2 = CMat::Identity(2, 2);
  zz << 1.0, 0.0, 0.0, -1.0;
  lower << 0.0, 1.0, 0.0, 0.0;  // |0><1| with occupation basis (|0>, |1>)
  std::vector<CMat> c(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    CMat op = CMat::Identity(1, 1);
    for (Eigen::Index k = 0; k < n; ++k) op = kron(op, k < j ? zz : (k == j ? lower : id2));
    c[j] = op;
  }
  CMat H = CMat::Zero(dim, dim);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) H += h(i, j) * c[i].adjoint() * c[j];
  const CMat id = CMat::Identity(dim, dim);
  CMat L = -I1 * (kron(id, H) - kron(H.transpose(), id));
  for (const JumpOperator& jop : jumps) {
    if (jop.coeffs.size() != n) throw ValidationError("fock_liouvillian_spectrum: jump length mismatch");
    CMat op = CMat::Zero(dim, dim);
    for (Eigen::Index j = 0; j < n; ++j) op += jop.coeffs[j] * (jop.creation ? CMat(c[j].adjoint()) : c[j]);
    const CMat ld = op.adjoint() * op;
    L += 2.0 * kron(op.conjugate(), op) - kron(id, ld) - kron(ld.transpose(), id);
  }
  return eigenvalues(L);
}

}  // namespace dchern
