#include "dchern/model.hpp"

#include <cmath>
#include <sstream>

#include "dchern/errors.hpp"

namespace dchern {

namespace {

const cplx I1{0.0, 1.0};

Eigen::Index checked_dim(const ModelParams& p, Eigen::Index max_dim) {
  p.validate();
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(p.nx) * p.ny;
  if (dim > max_dim) {
    std::ostringstream msg;
    msg << "lattice " << p.nx << "x" << p.ny << " needs a " << dim << "x" << dim
        << " dense operator, above the budget of " << max_dim;
    throw ResourceError(msg.str());
  }
  return dim;
}

void add_block(CMat& a, Eigen::Index r, Eigen::Index c, const Mat2& b) { a.block<2, 2>(r, c) += b; }

// Assembles onsite + nearest-neighbour hopping blocks. hop_x is the block
// coupling cell r to r + x; the reverse bond gets hop_x_back.
CMat assemble(const ModelParams& p, Eigen::Index dim, const Mat2& onsite, const Mat2& hop_x,
              const Mat2& hop_x_back, const Mat2& hop_y, const Mat2& hop_y_back) {
  CMat a = CMat::Zero(dim, dim);
  const bool periodic = p.boundary == Boundary::Periodic;
  auto row = [&](int ix, int iy) { return 2 * (static_cast<Eigen::Index>(iy) * p.nx + ix); };
  for (int iy = 0; iy < p.ny; ++iy) {
    for (int ix = 0; ix < p.nx; ++ix) {
      const Eigen::Index r = row(ix, iy);
      add_block(a, r, r, onsite);
      if (ix + 1 < p.nx || periodic) {
        const Eigen::Index s = row((ix + 1) % p.nx, iy);
        add_block(a, r, s, hop_x);
        add_block(a, s, r, hop_x_back);
      }
      if (iy + 1 < p.ny || periodic) {
        const Eigen::Index s = row(ix, (iy + 1) % p.ny);
        add_block(a, r, s, hop_y);
        add_block(a, s, r, hop_y_back);
      }
    }
  }
  return a;
}

}  // namespace

std::string to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "open"; }

Boundary parse_boundary(const std::string& s) {
  if (s == "periodic" || s == "pbc") return Boundary::Periodic;
  if (s == "open" || s == "obc") return Boundary::Open;
  throw ValidationError("unknown boundary '" + s + "' (expected periodic or open)");
}

void ModelParams::validate() const {
  for (double v : {lx, ly, tx, ty, m, lam})
    if (!std::isfinite(v)) throw ValidationError("model parameters must be finite");
  if (lam < 0.0) throw ValidationError("lam must be >= 0");
  if (nx < 1 || ny < 1) throw ValidationError("nx and ny must be >= 1");
}

Mat2 pauli_x() {
  Mat2 s;
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

Mat2 pauli_y() {
  Mat2 s;
  s << 0.0, -I1, I1, 0.0;
  return s;
}

Mat2 pauli_z() {
  Mat2 s;
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

Mat2 bloch_hamiltonian(const ModelParams& p, Momentum k) {
  const double eps = p.m + p.tx * std::cos(k.kx) + p.ty * std::cos(k.ky);
  return p.lx * std::sin(k.kx) * pauli_x() + p.ly * std::sin(k.ky) * pauli_y() + eps * pauli_z();
}

DissipatorSpec dissipator_spec(const ModelParams& p) {
  if (p.lam < 0.0) throw ValidationError("lam must be >= 0");
  DissipatorSpec d;
  const double scale = std::sqrt(p.lam / std::sqrt(2.0));
  d.gain_row << scale, scale * std::polar(1.0, -M_PI / 4.0);
  d.loss_row = d.gain_row.conjugate();
  d.Mg = d.gain_row.conjugate() * d.gain_row.transpose();
  d.Ml = d.loss_row.conjugate() * d.loss_row.transpose();
  return d;
}

Mat2 bloch_damping_matrix(const ModelParams& p, Momentum k) {
  return I1 * bloch_hamiltonian(p, k) - p.lam * (pauli_x() + pauli_y()) -
         std::sqrt(2.0) * p.lam * Mat2::Identity();
}

std::array<cplx, 2> bloch_damping_eigenvalues(const ModelParams& p, Momentum k) {
  const double eps = p.m + p.tx * std::cos(k.kx) + p.ty * std::cos(k.ky);
  const cplx a = p.lx * std::sin(k.kx) + I1 * p.lam;
  const cplx b = p.ly * std::sin(k.ky) + I1 * p.lam;
  const cplx e = std::sqrt(a * a + b * b + eps * eps);
  const cplx c = -std::sqrt(2.0) * p.lam;
  cplx u = c + I1 * e, v = c - I1 * e;
  if (u.imag() < v.imag()) std::swap(u, v);
  return {u, v};
}

LatticeOperator real_space_damping_matrix(const ModelParams& p, Eigen::Index max_dim) {
  const Eigen::Index dim = checked_dim(p, max_dim);
  const Mat2 sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
  const Mat2 onsite = I1 * p.m * sz - p.lam * (sx + sy) - std::sqrt(2.0) * p.lam * Mat2::Identity();
  const Mat2 hx = 0.5 * p.lx * sx + I1 * 0.5 * p.tx * sz;
  const Mat2 hxb = -0.5 * p.lx * sx + I1 * 0.5 * p.tx * sz;
  const Mat2 hy = 0.5 * p.ly * sy + I1 * 0.5 * p.ty * sz;
  const Mat2 hyb = -0.5 * p.ly * sy + I1 * 0.5 * p.ty * sz;
  return {assemble(p, dim, onsite, hx, hxb, hy, hyb), p.nx, p.ny, p.boundary};
}

LatticeOperator real_space_hamiltonian(const ModelParams& p, Eigen::Index max_dim) {
  const Eigen::Index dim = checked_dim(p, max_dim);
  const Mat2 sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
  const Mat2 onsite = p.m * sz;
  const Mat2 hx = -I1 * 0.5 * p.lx * sx + 0.5 * p.tx * sz;
  const Mat2 hy = -I1 * 0.5 * p.ly * sy + 0.5 * p.ty * sz;
  return {assemble(p, dim, onsite, hx, hx.adjoint(), hy, hy.adjoint()), p.nx, p.ny, p.boundary};
}

LatticeOperator real_space_onsite(const ModelParams& p, const Mat2& block, Eigen::Index max_dim) {
  const Eigen::Index dim = checked_dim(p, max_dim);
  CMat a = CMat::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; r += 2) a.block<2, 2>(r, r) = block;
  return {std::move(a), p.nx, p.ny, p.boundary};
}

CMat translation_matrix(int nx, int ny, int axis) {
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(nx) * ny;
  CMat t = CMat::Zero(dim, dim);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const int jx = axis == 0 ? (ix + 1) % nx : ix;
      const int jy = axis == 1 ? (iy + 1) % ny : iy;
      for (int s = 0; s < 2; ++s) t(2 * (static_cast<Eigen::Index>(jy) * nx + jx) + s, 2 * (static_cast<Eigen::Index>(iy) * nx + ix) + s) = 1.0;
    }
  }
  return t;
}

}  // namespace dchern
