#include <doctest.h>

#include <cmath>
#include <random>

#include "dchern/errors.hpp"
#include "dchern/spectra.hpp"
#include "dchern/thirdq.hpp"
#include "helpers.hpp"

using namespace dchern;
using testutil::max_abs;
using testutil::multiset_distance;
using testutil::oracle_eigenvalues;

namespace {

const cplx I1{0.0, 1.0};

CMat kron(const CMat& a, const CMat& b) {
  CMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

// Jordan-Wigner annihilators on n modes.
std::vector<CMat> annihilators(int n) {
  CMat lower = CMat::Zero(2, 2), parity = CMat::Identity(2, 2), id = CMat::Identity(2, 2);
  lower(0, 1) = 1.0;
  parity(1, 1) = -1.0;
  std::vector<CMat> out;
  for (int j = 0; j < n; ++j) {
    CMat op = CMat::Identity(1, 1);
    for (int k = 0; k < n; ++k) op = kron(op, k < j ? parity : (k == j ? lower : id));
    out.push_back(op);
  }
  return out;
}

CMat random_hermitian(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(g(gen), g(gen));
  return 0.5 * (a + a.adjoint());
}

ModelParams lattice(int n, Boundary b, double m, double lam) {
  ModelParams p;
  p.nx = p.ny = n;
  p.boundary = b;
  p.m = m;
  p.lam = lam;
  return p;
}

}  // namespace

TEST_CASE("majorana form reassembles the Hamiltonian in Fock space") {
  for (int n : {1, 2}) {
    const CMat h = n == 1 ? CMat::Constant(1, 1, 0.8) : random_hermitian(2, 5);
    const MajoranaRep rep = majorana_rep(h, {});
    const auto c = annihilators(n);
    std::vector<CMat> w;
    for (const CMat& cj : c) {
      w.push_back(cj + cj.adjoint());
      w.push_back(I1 * (cj - cj.adjoint()));
    }
    const Eigen::Index dim = c[0].rows();
    CMat from_w = rep.identity_shift * CMat::Identity(dim, dim);
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b) from_w += rep.HM(a, b) * w[a] * w[b];
    CMat direct = CMat::Zero(dim, dim);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) direct += h(i, j) * c[i].adjoint() * c[j];
    CHECK(max_abs(from_w - direct) < 1e-14);
  }
}

TEST_CASE("majorana representation basics") {
  const MajoranaRep zero = majorana_rep(CMat::Zero(3, 3), {});
  CHECK(max_abs(zero.HM) == 0.0);
  CHECK(zero.identity_shift == 0.0);
  const MajoranaRep r = majorana_rep(random_hermitian(4, 9), {});
  CHECK(max_abs(r.HM + r.HM.transpose()) == 0.0);
  CMat bad = CMat::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(majorana_rep(bad, {}), ValidationError);
  // single mode: HM = (eps / 4) [[0, -i], [i, 0]]
  const MajoranaRep one = majorana_rep(CMat::Constant(1, 1, 2.0), {});
  CMat want(2, 2);
  want << 0.0, -0.5 * I1, 0.5 * I1, 0.0;
  CHECK(max_abs(one.HM - want) == 0.0);
}

TEST_CASE("bath matrix of linear dissipators") {
  const ModelParams p = lattice(2, Boundary::Open, 1.5, 0.3);
  const DissipatorSpec d = dissipator_spec(p);
  const CMat sy = pauli_y();
  const CMat ml = real_space_onsite(p, d.Ml).matrix, mg = real_space_onsite(p, d.Mg).matrix;
  std::vector<JumpOperator> loss, gain;
  for (const JumpOperator& j : lattice_jump_operators(p)) (j.creation ? gain : loss).push_back(j);
  CHECK(max_abs(majorana_rep(CMat::Zero(8, 8), loss).MM - 0.25 * kron(ml, CMat::Identity(2, 2) + sy)) < 1e-15);
  CHECK(max_abs(majorana_rep(CMat::Zero(8, 8), gain).MM - 0.25 * kron(mg, CMat::Identity(2, 2) - sy)) < 1e-15);
}

TEST_CASE("structure matrices") {
  SUBCASE("no bath, real h") {
    const CMat h = random_hermitian(3, 2).real().cast<cplx>();
    const StructureMatrices s = structure_matrices(majorana_rep(h, {}));
    CHECK(max_abs(s.Z - 0.25 * kron(h, pauli_y())) < 1e-16);
    CHECK(s.Y.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("closed form agrees with the generic assembly") {
    for (Boundary b : {Boundary::Periodic, Boundary::Open}) {
      const ModelParams p = lattice(2, b, 2.5, 0.5);
      const DissipatorSpec d = dissipator_spec(p);
      const CMat h = physical_hamiltonian(p);
      const StructureMatrices s = structure_matrices(majorana_rep(h, lattice_jump_operators(p)));
      const CMat closed =
          structure_z_closed_form(h, real_space_onsite(p, d.Ml).matrix, real_space_onsite(p, d.Mg).matrix);
      CHECK(max_abs(s.Z - closed) < 1e-15);
    }
  }
  SUBCASE("single cell rapidities") {
    const ModelParams p = lattice(1, Boundary::Periodic, 1.5, 0.1);
    const StructureMatrices s = structure_matrices(majorana_rep(physical_hamiltonian(p), lattice_jump_operators(p)));
    CHECK(s.Z.rows() == 4);
    const cplx a(-0.1414213562373095, 0.4795831523312719);
    CVec want(4);
    want << a, a, std::conj(a), std::conj(a);
    CHECK(multiset_distance(oracle_eigenvalues(4.0 * I1 * s.Z), want) < 1e-12);
  }
}

TEST_CASE("rapidity union") {
  const UnionReport one = verify_union(lattice(1, Boundary::Periodic, 1.5, 0.1));
  CHECK(one.pass);
  CHECK(one.max_distance < 1e-9);
  CHECK(verify_union(lattice(2, Boundary::Open, 2.5, 0.5)).pass);
  const UnionReport free = verify_union(lattice(2, Boundary::Periodic, 1.5, 0.0));
  CHECK(free.pass);
  CHECK(free.rapidities.real().cwiseAbs().maxCoeff() < 1e-12);
  const UnionReport broken = verify_union(lattice(2, Boundary::Open, 1.5, 0.1), 1e-8, UnionFault::FlipDissipativeSign);
  CHECK_FALSE(broken.pass);
  CHECK(broken.max_distance > 1e-3);
}

TEST_CASE("subset sums") {
  const cplx a(-0.3, 1.0), b(-0.7, -2.0);
  CVec one(1);
  one << a;
  CVec want1(2);
  want1 << 0.0, a;
  CHECK(multiset_distance(liouvillian_eigenvalues(one), want1) == 0.0);
  CVec two(2);
  two << a, b;
  CVec want2(4);
  want2 << 0.0, a, b, a + b;
  CHECK(multiset_distance(liouvillian_eigenvalues(two), want2) < 1e-16);
  CHECK_THROWS_AS(liouvillian_eigenvalues(CVec::Zero(5), 4), ResourceError);
  CHECK_THROWS(liouvillian_eigenvalues(CVec::Zero(2), 21));
}

TEST_CASE("single-cell Liouvillian gap matches the damping-matrix gap at k = 0") {
  const ModelParams p = lattice(1, Boundary::Periodic, 1.5, 0.1);
  const StructureMatrices s = structure_matrices(majorana_rep(physical_hamiltonian(p), lattice_jump_operators(p)));
  const CVec sums = liouvillian_eigenvalues(select_rapidities(eigenvalues(4.0 * I1 * s.Z)));
  double gap = INFINITY;
  for (Eigen::Index i = 0; i < sums.size(); ++i)
    if (std::abs(sums[i]) > 1e-12) gap = std::min(gap, -2.0 * sums[i].real());
  double xgap = INFINITY;
  for (const cplx& v : bloch_damping_eigenvalues(p, {0, 0})) xgap = std::min(xgap, -2.0 * v.real());
  CHECK(gap == doctest::Approx(xgap).epsilon(1e-12));
}

TEST_CASE("Fock-space oracle") {
  SUBCASE("one mode") {
    const CMat h = CMat::Constant(1, 1, 1.5);
    const std::vector<JumpOperator> jumps = {{CVec::Constant(1, std::sqrt(0.1)), false},
                                             {CVec::Constant(1, std::sqrt(0.3)), true}};
    const CVec sums =
        liouvillian_eigenvalues(select_rapidities(eigenvalues(4.0 * I1 * structure_matrices(majorana_rep(h, jumps)).Z)));
    CHECK(multiset_distance(sums, fock_liouvillian_spectrum(h, jumps)) < 1e-8);
    // With the 2 L rho L^dagger normalization the coherence decays at g_l + g_g.
    double slowest = -INFINITY;
    for (Eigen::Index i = 0; i < sums.size(); ++i)
      if (std::abs(sums[i]) > 1e-12) slowest = std::max(slowest, sums[i].real());
    CHECK(slowest == doctest::Approx(-0.4).epsilon(1e-12));
  }
  SUBCASE("two modes of the reference cell and a random three-mode system") {
    const ModelParams p = lattice(1, Boundary::Periodic, 2.5, 0.5);
    const CMat h2 = physical_hamiltonian(p);
    const auto j2 = lattice_jump_operators(p);
    const CVec s2 =
        liouvillian_eigenvalues(select_rapidities(eigenvalues(4.0 * I1 * structure_matrices(majorana_rep(h2, j2)).Z)));
    CHECK(multiset_distance(s2, fock_liouvillian_spectrum(h2, j2)) < 1e-8);

    const CMat h3 = random_hermitian(3, 21);
    std::vector<JumpOperator> j3 = {{CVec::Random(3), false}, {CVec::Random(3), true}};
    const CVec s3 =
        liouvillian_eigenvalues(select_rapidities(eigenvalues(4.0 * I1 * structure_matrices(majorana_rep(h3, j3)).Z)));
    CHECK(multiset_distance(s3, fock_liouvillian_spectrum(h3, j3)) < 1e-8);
  }
}
