#include <doctest.h>

#include <cmath>
#include <random>

#include "dchern/spectra.hpp"
#include "helpers.hpp"

using namespace dchern;
using testutil::max_abs;
using testutil::multiset_distance;
using testutil::oracle_eigenvalues;

namespace {

ModelParams lattice(int n, Boundary b, double m, double lam) {
  ModelParams p;
  p.nx = p.ny = n;
  p.boundary = b;
  p.m = m;
  p.lam = lam;
  return p;
}

CMat random_matrix(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(g(gen), g(gen));
  return a;
}

}  // namespace

TEST_CASE("diagonal input") {
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = -1.0;
  d(1, 1) = cplx(-2.0, 3.0);
  const SpectrumResult s = spectrum(d);
  CVec want(2);
  want << -1.0, cplx(-2.0, 3.0);
  CHECK(multiset_distance(s.eigenvalues, want) == 0.0);
  for (int n = 0; n < 2; ++n) {
    const int e = s.eigenvalues[n] == cplx(-1.0, 0.0) ? 0 : 1;
    CHECK(std::abs(s.right(e, n)) == doctest::Approx(1.0));
    CHECK(std::abs(s.left(e, n)) == doctest::Approx(1.0));
    CHECK(std::abs(s.right(1 - e, n)) == 0.0);
  }
}

TEST_CASE("2x2 damping matrix at k = 0") {
  ModelParams p;
  const SpectrumResult s = spectrum(CMat(bloch_damping_matrix(p, {0, 0})));
  CVec want(2);
  want << cplx(-0.1414213562373095, 0.4795831523312719), cplx(-0.1414213562373095, -0.4795831523312719);
  CHECK(multiset_distance(s.eigenvalues, want) < 1e-15);
}

TEST_CASE("hermitian input has matching left and right vectors") {
  CMat a = random_matrix(6, 3);
  a = (a + a.adjoint()).eval();
  const SpectrumResult s = spectrum(a);
  for (int n = 0; n < 6; ++n) {
    const cplx overlap = s.left.col(n).dot(s.right.col(n));
    CHECK(std::abs(overlap) / (s.left.col(n).norm() * s.right.col(n).norm()) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("residuals and biorthogonality") {
  const SpectrumResult r = spectrum(random_matrix(40, 11));
  CHECK(r.right_residual < 1e-8);
  CHECK(r.left_residual < 1e-8);
  CHECK(biorthogonality_defect(r) < 1e-8);
  for (Boundary b : {Boundary::Periodic, Boundary::Open}) {
    const SpectrumResult s = spectrum(real_space_damping_matrix(lattice(4, b, 2.5, 0.5)));
    CHECK(s.right_residual < 1e-8);
    CHECK(s.left_residual < 1e-8);
    CHECK(s.eigenvalues.real().maxCoeff() <= 1e-10);
    CHECK(multiset_distance(s.eigenvalues, oracle_eigenvalues(real_space_damping_matrix(lattice(4, b, 2.5, 0.5)).matrix)) <
          1e-10);
  }
  const SpectrumResult open = spectrum(real_space_damping_matrix(lattice(4, Boundary::Open, 2.5, 0.5)));
  if (open.degenerate_clusters == 0) CHECK(biorthogonality_defect(open) < 1e-8);
}

TEST_CASE("bloch gap closes at m = 1.5") {
  const double k0 = std::acos(0.75);
  for (double lam : {0.1, 0.5}) {
    const GapReport g = liouvillian_gap_bloch(lattice(1, Boundary::Periodic, 1.5, lam), 128);
    CHECK(std::abs(g.gap) < 1e-8);
    CHECK(std::abs(std::abs(g.argmin.kx) - k0) < 1e-4);
    CHECK(std::abs(std::abs(g.argmin.ky) - k0) < 1e-4);
  }
}

TEST_CASE("bloch gap is open at m = 2.5") {
  // Brute-force 256^2 mesh with numpy eigvals, then Nelder-Mead polish.
  const GapReport g1 = liouvillian_gap_bloch(lattice(1, Boundary::Periodic, 2.5, 0.1), 128);
  CHECK(g1.gap > 0.05);
  CHECK(g1.gap == doctest::Approx(0.08813781241770996).epsilon(1e-8));
  const GapReport g5 = liouvillian_gap_bloch(lattice(1, Boundary::Periodic, 2.5, 0.5), 128);
  CHECK(g5.gap == doctest::Approx(0.33917345624903006).epsilon(1e-8));
}

TEST_CASE("no dissipation means no gap") {
  for (double m : {0.5, 1.5, 2.5}) CHECK(liouvillian_gap_bloch(lattice(1, Boundary::Periodic, m, 0.0), 32).gap == 0.0);
}

TEST_CASE("real-space gaps at 20x20") {
  // Reference values: numpy eigvals on an independently assembled matrix.
  const GapReport open = liouvillian_gap_real(real_space_damping_matrix(lattice(20, Boundary::Open, 1.5, 0.1)));
  CHECK(open.gap > 0.0);
  CHECK(open.gap == doctest::Approx(0.26733410936312924).epsilon(1e-8));
  const GapReport per = liouvillian_gap_real(real_space_damping_matrix(lattice(20, Boundary::Periodic, 2.5, 0.5)));
  CHECK(per.gap > 0.0);
}

TEST_CASE("periodic gap converges to the Bloch gap" * doctest::test_suite("slow")) {
  const GapReport bloch = liouvillian_gap_bloch(lattice(1, Boundary::Periodic, 2.5, 0.1), 256);
  const GapReport real = liouvillian_gap_real(real_space_damping_matrix(lattice(30, Boundary::Periodic, 2.5, 0.1)));
  CHECK(std::abs(real.gap - bloch.gap) < 0.05);
  CHECK(real.gap == doctest::Approx(0.08814908068292475).epsilon(1e-8));
}

TEST_CASE("bloch union over lattice momenta") {
  const ModelParams p = lattice(3, Boundary::Periodic, 1.5, 0.1);
  CHECK(multiset_distance(bloch_union(p), oracle_eigenvalues(real_space_damping_matrix(p).matrix)) < 1e-10);
}

TEST_CASE("localization") {
  SUBCASE("delta vector") {
    LatticeOperator op;
    op.nx = 8;
    op.ny = 9;
    CMat v = CMat::Zero(2 * 72, 1);
    v(op.index(3, 7, 1), 0) = cplx(0.0, 2.0);
    const LocalizationReport r = skin_localization(v, 8, 9);
    CHECK(r.mean_ix[0] == 3.0);
    CHECK(r.mean_iy[0] == 7.0);
  }
  SUBCASE("hermitian limit has no dominant corner") {
    const ModelParams p = lattice(20, Boundary::Open, 1.5, 0.0);
    const LocalizationReport r = skin_localization(spectrum(real_space_damping_matrix(p)), 20, 20);
    CHECK(r.dominant_fraction <= 0.6);
  }
  SUBCASE("skin effect piles modes into one corner") {
    const ModelParams p = lattice(20, Boundary::Open, 1.5, 0.1);
    const LocalizationReport r = skin_localization(spectrum(real_space_damping_matrix(p)), 20, 20);
    CHECK(r.dominant_fraction > 0.9);
    MESSAGE("dominant corner: " << to_string(r.dominant));
  }
}
