// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "dchern/circuit.hpp"
#include "dchern/dynamics.hpp"
#include "dchern/netlist.hpp"
#include "dchern/spectra.hpp"
#include "dchern/thirdq.hpp"

using namespace dchern;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

const std::pair<double, double> kSets[] = {{1.5, 0.1}, {1.5, 0.5}, {2.5, 0.1}, {2.5, 0.5}};

ModelParams lattice(int nx, int ny, Boundary b, double m, double lam) {
  ModelParams p;
  p.nx = nx;
  p.ny = ny;
  p.boundary = b;
  p.m = m;
  p.lam = lam;
  return p;
}

const char* name(Boundary b) { return b == Boundary::Periodic ? "P" : "O"; }

Outcome gap_closing() {
  Outcome o;
  const double k0 = std::acos(0.75);
  for (auto [m, lam] : kSets) {
    const GapReport g = liouvillian_gap_bloch(lattice(1, 1, Boundary::Periodic, m, lam), 512);
    o.detail << "m=" << m << ",lam=" << lam << ": gap=" << g.gap;
    if (m < 2.0) {
      const double dk = std::max(std::abs(std::abs(g.argmin.kx) - k0), std::abs(std::abs(g.argmin.ky) - k0));
      o.detail << " |k-k0|=" << dk << "; ";
      o.require(std::abs(g.gap) < 1e-6, "gap closes");
      o.require(dk < 1e-4, "argmin at arccos(3/4)");
    } else {
      o.detail << "; ";
      o.require(g.gap > 0.01, "gap open");
    }
  }
  return o;
}

Outcome open_gap() {
  Outcome o;
  for (auto [m, lam] : kSets) {
    const LatticeOperator x = real_space_damping_matrix(lattice(20, 20, Boundary::Open, m, lam));
    const GapReport g = liouvillian_gap_real(x);
    const double abs_residual = g.residual * norm1(x.matrix);
    o.detail << "m=" << m << ",lam=" << lam << ": gap=" << g.gap << " residual=" << abs_residual << "; ";
    o.require(g.gap > 0.0 && g.gap > 10.0 * abs_residual, "open gap with margin");
  }
  return o;
}

Outcome damping_laws() {
  Outcome o;
  // Sampling restricted to the final decade of the run, where the law is read off.
  const std::vector<double> times = geometric_grid(20.0, 200.0, 48);
  for (auto [m, lam] : kSets) {
    const double bloch = liouvillian_gap_bloch(lattice(1, 1, Boundary::Periodic, m, lam), 256).gap;
    DampingLaw laws[2];
    int k = 0;
    for (int n : {20, 30}) {
      const DampingSeries s = deviation_series(lattice(n, n, Boundary::Periodic, m, lam), times);
      const DampingClassification c = classify_damping(s, 20.0, 200.0);
      laws[k++] = c.law;
      o.detail << n << "x" << n << " m=" << m << ",lam=" << lam << ": " << to_string(c.law);
      if (m > 2.0) {
        o.detail << " rate=" << c.rate << " gap=" << bloch;
        o.require(c.law == DampingLaw::Exponential, "exponential law");
        o.require(std::abs(c.rate - bloch) <= 0.3 * bloch, "rate within 30% of the Bloch gap");
      } else {
        o.detail << " exponent=" << c.exponent;
        o.require(c.law == DampingLaw::Algebraic, "algebraic law");
      }
      o.detail << "; ";
    }
    o.require(laws[0] == laws[1], "size-stable classification");
  }
  return o;
}

Outcome chiral_damping() {
  Outcome o;
  const Wavefront w = wavefront_times(lattice(20, 20, Boundary::Open, 1.5, 0.1), linear_grid(0.1, 100.0, 200));
  const auto a = w.at(0, 0), b = w.at(0, 9), c = w.at(0, 19);
  o.require(a && b && c, "crossover times defined along ix=0");
  if (a && b && c) {
    o.detail << "t_cross(ix=0; iy=0,9,19)=" << *a << "," << *b << "," << *c << "; ";
    o.require(*a < *b && *b < *c, "strict ordering along the row");
  }
  double prev = -1.0;
  for (int n : {10, 14, 20}) {
    const DampingSeries s =
        deviation_series(lattice(n, n, Boundary::Open, 1.5, 0.1), geometric_grid(0.1, 200.0, 160));
    const DampingClassification cl = classify_damping(s, 2.0, 200.0);
    o.detail << "L=" << n << ": " << to_string(cl.law) << " breakpoint=" << cl.segmented.breakpoint << "; ";
    o.require(cl.law == DampingLaw::Crossover, "power law then exponential at L=" + std::to_string(n));
    o.require(cl.segmented.breakpoint > prev, "algebraic stage grows with L");
    prev = cl.segmented.breakpoint;
  }
  return o;
}

Outcome steady_state() {
  Outcome o;
  double worst = 0.0;
  for (auto [m, lam] : kSets)
    for (int n = 1; n <= 20; ++n)
      for (Boundary b : {Boundary::Periodic, Boundary::Open}) {
        const ModelParams p = lattice(n, n, b, m, lam);
        const CMat x = real_space_damping_matrix(p).matrix;
        const CMat mg = real_space_onsite(p, dissipator_spec(p).Mg).matrix;
        const double r = steady_state_residual(x, 0.5 * CMat::Identity(x.rows(), x.cols()), mg);
        worst = std::max(worst, r);
      }
  o.detail << "max residual over 1x1..20x20, both boundaries, four sets: " << worst;
  o.require(worst < 1e-12, "residual < 1e-12");
  return o;
}

Outcome third_quantization() {
  Outcome o;
  double worst_union = 0.0, worst_fock = 0.0;
  const cplx i4(0.0, 4.0);
  for (auto [m, lam] : kSets) {
    for (int nx = 1; nx <= 3; ++nx)
      for (int ny = 1; ny <= 3; ++ny)
        for (Boundary b : {Boundary::Periodic, Boundary::Open}) {
          const UnionReport u = verify_union(lattice(nx, ny, b, m, lam));
          worst_union = std::max(worst_union, u.max_distance);
        }
    CMat h1(1, 1);
    h1(0, 0) = m;
    const std::vector<JumpOperator> j1 = {{CVec::Constant(1, std::sqrt(lam)), false},
                                          {CVec::Constant(1, std::sqrt(lam / 2)), true}};
    const ModelParams cell = lattice(1, 1, Boundary::Periodic, m, lam);
    for (const auto& [h, j] : {std::pair{h1, j1}, std::pair{physical_hamiltonian(cell), lattice_jump_operators(cell)}}) {
      const CVec sums = liouvillian_eigenvalues(select_rapidities(eigenvalues(i4 * structure_matrices(majorana_rep(h, j)).Z)));
      const CVec fock = fock_liouvillian_spectrum(h, j);
      worst_fock = std::max(worst_fock, sums.size() == fock.size() ? match_multisets(sums, fock).max_distance : INFINITY);
    }
  }
  o.detail << "union max distance (all lattices up to 3x3)=" << worst_union << "; Fock oracle (1, 2 modes)=" << worst_fock;
  o.require(worst_union < 1e-8, "eig(4iZ) = eig(X) u eig(X*)");
  o.require(worst_fock < 1e-8, "subset sums = Fock-space Liouvillian");
  return o;
}

Outcome propagator_oracle() {
  Outcome o;
  double worst = 0.0;
  std::vector<double> times;
  for (int i = 1; i <= 10; ++i) times.push_back(i);
  for (auto [m, lam] : kSets)
    for (Boundary b : {Boundary::Periodic, Boundary::Open}) {
      const ModelParams p = lattice(2, 2, b, m, lam);
      const CMat x = real_space_damping_matrix(p).matrix;
      const CMat mg = real_space_onsite(p, dissipator_spec(p).Mg).matrix;
      const CMat d0 = CMat::Identity(8, 8);
      const auto full = evolve_full(x, mg, d0, times);
      CMat d = d0;
      for (std::size_t i = 0; i < times.size(); ++i) {
        d = integrate_rk4(x, mg, d, 1.0, 1e-3);
        worst = std::max(worst, max_abs(d - full[i].delta));
      }
    }
  o.detail << "max |spectral - RK4| on 2x2, t in [0,10]: " << worst;
  o.require(worst < 1e-6, "agreement < 1e-6");
  return o;
}

Outcome circuit_mapping() {
  Outcome o;
  double bloch = 0.0, real = 0.0, diag = 0.0, trip = 0.0;
  for (auto [m, lam] : kSets) {
    const ModelParams base = lattice(1, 1, Boundary::Periodic, m, lam);
    const ComponentSet c = component_values(base);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) {
        const Momentum k{-M_PI + 2 * M_PI * i / 16, -M_PI + 2 * M_PI * j / 16};
        bloch = std::max(bloch, max_abs(CMat(bloch_laplacian(c, k).JP - bloch_damping_matrix(base, k))));
      }
    for (int n = 3; n <= 6; ++n) {
      const ModelParams p = lattice(n, n, Boundary::Open, m, lam);
      const CircuitModel open = real_space_circuit(c, p);
      real = std::max(real, verify_mapping(open, real_space_damping_matrix(p)).max_error);
      const CircuitModel per = real_space_circuit(c, lattice(n, n, Boundary::Periodic, m, lam));
      diag = std::max(diag, (open.laplacian().diagonal() - per.laplacian().diagonal()).cwiseAbs().maxCoeff());
      trip = std::max(trip, max_abs(netlist_laplacian(export_netlist(open), open) - open.laplacian()));
    }
  }
  const InicCheck inic = check_inic_templates(1.0, 0.0);
  o.detail << "Bloch |JP-X|=" << bloch << " open |JP-X|=" << real << " diagonal=" << diag << " round trip=" << trip
           << " converter templates=" << std::max({inic.grounded_error, inic.floating_error, inic.directional_error});
  o.require(bloch < 1e-9, "Bloch mapping");
  o.require(real < 1e-9, "open mapping");
  o.require(diag < 1e-12, "compensated diagonal");
  o.require(trip < 1e-12, "netlist round trip");
  o.require(inic.pass, "negative impedance templates exact");
  return o;
}

Outcome skin_effect() {
  Outcome o;
  const LocalizationReport on =
      skin_localization(spectrum(real_space_damping_matrix(lattice(20, 20, Boundary::Open, 1.5, 0.1))), 20, 20);
  const LocalizationReport off =
      skin_localization(spectrum(real_space_damping_matrix(lattice(20, 20, Boundary::Open, 1.5, 0.0))), 20, 20);
  o.detail << "lam=0.1: " << to_string(on.dominant) << " " << on.dominant_fraction << "; lam=0: max corner "
           << off.dominant_fraction;
  o.require(on.dominant_fraction > 0.8, "one corner holds > 80%");
  o.require(off.dominant_fraction <= 0.6, "no corner above 60% without dissipation");
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"gap closing and opening (Bloch)", gap_closing},
      {"open-boundary gap at 20x20", open_gap},
      {"damping laws at 30x30 periodic", damping_laws},
      {"chiral damping", chiral_damping},
      {"steady state", steady_state},
      {"third-quantization union and Fock oracle", third_quantization},
      {"propagator vs RK4", propagator_oracle},
      {"circuit mapping", circuit_mapping},
      {"skin-effect localization", skin_effect},
  };
  int failed = 0, index = 0;
  for (const auto& [title, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %s: %s (%.1f s) %s\n", index, o.pass ? "PASS" : "FAIL", title, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
