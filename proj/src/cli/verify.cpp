#include "dchern/verify.hpp"

#include <cmath>
#include <sstream>

#include "dchern/circuit.hpp"
#include "dchern/dynamics.hpp"
#include "dchern/errors.hpp"
#include "dchern/netlist.hpp"
#include "dchern/spectra.hpp"
#include "dchern/thirdq.hpp"

namespace dchern {

Fault parse_fault(const std::string& s) {
  if (s == "none") return Fault::None;
  if (s == "flip-damping-sign") return Fault::FlipDampingSign;
  if (s == "omit-compensation") return Fault::OmitCompensation;
  throw ValidationError("unknown fault hook '" + s + "'");
}

bool VerifyReport::pass() const { return first_failure() == nullptr; }

const CheckResult* VerifyReport::first_failure() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

namespace {

std::string geometry(const ModelParams& p) {
  return std::to_string(p.nx) + "x" + std::to_string(p.ny) + " " + to_string(p.boundary);
}

ModelParams sized(const ModelParams& base, int n, Boundary b) {
  ModelParams p = base;
  p.nx = n;
  p.ny = n;
  p.boundary = b;
  return p;
}

void add(VerifyReport& r, std::string module, std::string op, std::string name, double residual, double threshold) {
  r.checks.push_back({std::move(module), std::move(op), std::move(name), residual, threshold,
                      std::isfinite(residual) && residual < threshold});
}

}  // namespace

VerifyReport run_verification(const ModelParams& base, Fault fault) {
  base.validate();
  VerifyReport rep;
  const Boundary P = Boundary::Periodic, O = Boundary::Open;

  {
    const ModelParams p = sized(base, 4, P);
    const CMat x = real_space_damping_matrix(p).matrix;
    double c = 0.0;
    for (int axis = 0; axis < 2; ++axis) {
      const CMat t = translation_matrix(4, 4, axis);
      c = std::max(c, max_abs(x * t - t * x));
    }
    add(rep, "model", "real_space_damping_matrix", "translation commutator 4x4 periodic", c, 1e-12);
    add(rep, "model", "real_space_damping_matrix", "Bloch union 4x4 periodic",
        match_multisets(eigenvalues(x), bloch_union(p)).max_distance, 1e-9);
  }

  const UnionFault uf = fault == Fault::FlipDampingSign ? UnionFault::FlipDissipativeSign : UnionFault::None;
  for (auto [n, b] : {std::pair{1, P}, std::pair{2, P}, std::pair{2, O}, std::pair{3, P}, std::pair{3, O}}) {
    const ModelParams p = sized(base, n, b);
    const UnionReport u = verify_union(p, 1e-8, uf);
    add(rep, "thirdq", "verify_union", geometry(p), u.max_distance, 1e-8);
  }

  {
    // One mode with loss and gain, and the two modes of a single cell.
    const double lam = base.lam;
    CMat h1(1, 1);
    h1(0, 0) = base.m;
    std::vector<JumpOperator> j1 = {{CVec::Constant(1, std::sqrt(lam)), false},
                                    {CVec::Constant(1, std::sqrt(0.5 * lam)), true}};
    const ModelParams cell = sized(base, 1, P);
    const std::vector<std::pair<CMat, std::vector<JumpOperator>>> systems = {
        {h1, j1}, {physical_hamiltonian(cell), lattice_jump_operators(cell)}};
    for (const auto& [h, jumps] : systems) {
      const StructureMatrices sm = structure_matrices(majorana_rep(h, jumps));
      const CVec rap = select_rapidities(eigenvalues(cplx{0.0, 4.0} * sm.Z));
      const CVec sums = liouvillian_eigenvalues(rap);
      const CVec fock = fock_liouvillian_spectrum(h, jumps);
      const double d = sums.size() == fock.size() ? match_multisets(sums, fock).max_distance : INFINITY;
      add(rep, "thirdq", "liouvillian_eigenvalues", std::to_string(h.rows()) + "-mode Fock oracle", d, 1e-8);
    }
  }

  for (auto [n, b] : {std::pair{4, P}, std::pair{4, O}}) {
    const ModelParams p = sized(base, n, b);
    const CMat x = real_space_damping_matrix(p).matrix;
    const CMat mg = real_space_onsite(p, dissipator_spec(p).Mg).matrix;
    add(rep, "dynamics", "steady_state_residual", geometry(p),
        steady_state_residual(x, 0.5 * CMat::Identity(x.rows(), x.cols()), mg), 1e-12);
  }

  for (Boundary b : {P, O}) {
    const ModelParams p = sized(base, 2, b);
    const CMat x = real_space_damping_matrix(p).matrix;
    const CMat mg = real_space_onsite(p, dissipator_spec(p).Mg).matrix;
    const CMat d0 = CMat::Identity(x.rows(), x.cols());
    const std::vector<double> times = {1.0, 5.0, 10.0};
    const std::vector<CorrelationState> full = evolve_full(x, mg, d0, times);
    double worst = 0.0;
    CMat d = d0;
    double t_prev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      d = integrate_rk4(x, mg, d, times[i] - t_prev, 1e-3);
      t_prev = times[i];
      worst = std::max(worst, max_abs(d - full[i].delta));
    }
    add(rep, "dynamics", "evolve_full", geometry(p) + " vs RK4 to t=10", worst, 1e-6);
  }

  if (base.lam > 0.0 && base.tx != 0.0 && base.ty != 0.0 && base.ly != 0.0) {
    const ComponentSet c = component_values(base, 1.0);
    for (auto [n, b] : {std::pair{4, P}, std::pair{4, O}}) {
      const ModelParams p = sized(base, n, b);
      const bool compensate = fault != Fault::OmitCompensation;
      const CircuitModel circ = real_space_circuit(c, p, compensate);
      const MappingReport m = verify_mapping(circ, real_space_damping_matrix(p));
      add(rep, "circuit", "verify_mapping", geometry(p) + " worst node " + m.worst_node, m.max_error, 1e-9);
    }
    double bloch = 0.0;
    for (int jx = 0; jx < 16; ++jx)
      for (int jy = 0; jy < 16; ++jy) {
        const Momentum k{-M_PI + 2.0 * M_PI * jx / 16, -M_PI + 2.0 * M_PI * jy / 16};
        bloch = std::max(bloch, max_abs(CMat(bloch_laplacian(c, k).JP - bloch_damping_matrix(base, k))));
      }
    add(rep, "circuit", "bloch_laplacian", "16x16 k-grid", bloch, 1e-10);
    {
      const CircuitModel open = real_space_circuit(c, sized(base, 4, O), fault != Fault::OmitCompensation);
      const CircuitModel per = real_space_circuit(c, sized(base, 4, P));
      const double d = (open.laplacian().diagonal() - per.laplacian().diagonal()).cwiseAbs().maxCoeff();
      add(rep, "circuit", "real_space_circuit", "4x4 open vs periodic diagonal", d, 1e-12);
    }
    {
      const CircuitModel open = real_space_circuit(c, sized(base, 3, O), fault != Fault::OmitCompensation);
      const double d = max_abs(netlist_laplacian(export_netlist(open), open) - open.laplacian());
      add(rep, "circuit", "export_netlist", "3x3 open round trip", d, 1e-12);
    }
    const InicCheck ic = check_inic_templates(1.0);
    add(rep, "circuit", "export_netlist", "converter templates",
        std::max({ic.grounded_error, ic.floating_error, ic.directional_error}), 1e-15);
  } else {
    rep.checks.push_back({"circuit", "component_values", "skipped: lam, tx, ty and ly must be nonzero", 0.0, 0.0, true});
  }
  return rep;
}

}  // namespace dchern
