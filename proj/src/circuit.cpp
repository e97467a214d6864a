#include "dchern/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dchern/errors.hpp"

namespace dchern {

namespace {

const cplx I1{0.0, 1.0};

// Element of the unit cell: endpoint a = (cell + da, sa), b = (cell + db, sb).
struct CellElement {
  int sa, dax, day;
  int sb, dbx, dby;
  bool directional;
  ComponentKind kind;
  double value;
  std::string label;
};

cplx admittance(ComponentKind kind, double value, double omega) {
  switch (kind) {
    case ComponentKind::Resistor: return std::isinf(value) ? cplx{} : cplx{1.0 / value, 0.0};
    case ComponentKind::Capacitor: return I1 * omega * value;
    case ComponentKind::Inductor: return std::isinf(value) ? cplx{} : 1.0 / (I1 * omega * value);
  }
  return {};
}

std::vector<CellElement> cell_elements(const ComponentSet& c) {
  using K = ComponentKind;
  std::vector<CellElement> e = {
      {0, 0, 0, 0, 1, 0, false, K::Resistor, c.R2, "R2"},
      {1, 0, 0, 1, 1, 0, false, K::Resistor, c.R3, "R3"},
      {0, 0, 0, 0, 0, 1, false, K::Resistor, c.R4, "R4"},
      {1, 0, 0, 1, 0, 1, false, K::Resistor, c.R7, "R7"},
      {0, 0, 0, 1, 0, 1, false, K::Resistor, c.R6, "R6"},
      {1, 0, 0, 0, 0, 1, false, K::Resistor, c.R5, "R5"},
      {0, 0, 0, 1, 0, 0, false, K::Capacitor, c.C1, "C1"},
      {0, 0, 0, 1, 0, 0, true, K::Resistor, -c.R1, "R1"},
      {1, 1, 0, 0, 0, 0, true, K::Capacitor, c.C2, "C2"},
      {0, 1, 0, 1, 0, 0, true, K::Capacitor, c.C2, "C2"},
  };
  e.erase(std::remove_if(e.begin(), e.end(), [](const CellElement& x) { return x.value == 0.0; }), e.end());
  return e;
}

struct Ground {
  int s;
  ComponentKind kind;
  double value;
  std::string label;
};

std::vector<Ground> cell_groundings(const ComponentSet& c) {
  using K = ComponentKind;
  std::vector<Ground> g = {{0, K::Resistor, c.RA, "RA"},  {1, K::Resistor, c.RB, "RB"},
                           {0, K::Capacitor, c.C, "C"},   {1, K::Capacitor, c.C, "C"},
                           {0, K::Inductor, c.Lind, "L"}, {1, K::Inductor, c.Lind, "L"}};
  g.erase(std::remove_if(g.begin(), g.end(), [](const Ground& x) { return x.value == 0.0 || std::isinf(x.value); }),
          g.end());
  return g;
}

template <class M>
void stamp(M& j, Eigen::Index a, Eigen::Index b, cplx y, bool directional, cplx phase = 1.0) {
  if (directional) {
    j(a, a) -= y;
    j(a, b) += y * phase;
    j(b, a) -= y * std::conj(phase);
    j(b, b) += y;
  } else {
    j(a, a) += y;
    j(a, b) -= y * phase;
    j(b, a) -= y * std::conj(phase);
    j(b, b) += y;
  }
}

void require_nonzero(double v, const char* relation) {
  if (v == 0.0 || !std::isfinite(v))
    throw ValidationError(std::string("component_values: ") + relation + " is undefined for these parameters");
}

}  // namespace

ComponentSet component_values(const ModelParams& p, double omega, double inductor_shift) {
  p.validate();
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("component_values: omega must be > 0");
  if (!(inductor_shift > 0.0) || !std::isfinite(inductor_shift))
    throw ValidationError("component_values: inductor shift 1/(omega^2 Lind) must be > 0");
  require_nonzero(p.lam, "R1 = -1/(omega lam)");
  require_nonzero(p.tx, "R2 = -R3 = -2/(omega tx)");
  require_nonzero(p.ty, "R4 = -R7 = -2/(omega ty)");
  require_nonzero(p.ly, "R5 = -R6 = -2/(omega ly)");
  ComponentSet c;
  c.omega = omega;
  c.C1 = -p.lam;
  c.C2 = p.lx / 2.0;
  c.R1 = -1.0 / (omega * p.lam);
  c.R2 = -2.0 / (omega * p.tx);
  c.R3 = -c.R2;
  c.R4 = -2.0 / (omega * p.ty);
  c.R7 = -c.R4;
  c.R5 = -2.0 / (omega * p.ly);
  c.R6 = -c.R5;
  c.R0 = -1.0 / (1.0 / c.R1 + 2.0 / c.R2 + 2.0 / c.R4);
  c.C = (1.0 + std::sqrt(2.0)) * p.lam;
  c.RA = 1.0 / (omega * p.m + 1.0 / c.R0);
  c.RB = -c.RA;
  c.Lind = 1.0 / (omega * omega * inductor_shift);
  return c;
}

LaplacianPair bloch_laplacian(const ComponentSet& c, Momentum k) {
  Mat2 j = Mat2::Zero();
  for (const CellElement& e : cell_elements(c)) {
    const double dx = e.dbx - e.dax, dy = e.dby - e.day;
    const cplx phase = std::polar(1.0, k.kx * dx + k.ky * dy);
    stamp(j, e.sa, e.sb, admittance(e.kind, e.value, c.omega), e.directional, phase);
  }
  for (const Ground& g : cell_groundings(c)) j(g.s, g.s) += admittance(g.kind, g.value, c.omega);
  LaplacianPair out;
  out.J = j;
  const cplx yl = admittance(ComponentKind::Inductor, c.Lind, c.omega);
  out.JP = (j - yl * Mat2::Identity()) / (-I1 * c.omega);
  return out;
}

std::string CircuitModel::node_name(Eigen::Index n) const {
  const Eigen::Index cell = n / 2;
  return std::string(n % 2 ? "B" : "A") + "_" + std::to_string(cell % params.nx) + "_" +
         std::to_string(cell / params.nx);
}

CMat CircuitModel::branch_laplacian() const {
  CMat j = CMat::Zero(nodes(), nodes());
  for (const Branch& b : branches) stamp(j, b.a, b.b, b.y, b.directional);
  return j;
}

CVec CircuitModel::grounding_admittance() const {
  CVec w = CVec::Zero(nodes());
  for (const Grounding& g : groundings) w[g.node] += g.y;
  return w;
}

CMat CircuitModel::laplacian() const {
  CMat j = branch_laplacian();
  j.diagonal() += grounding_admittance();
  return j;
}

CMat CircuitModel::extract_jp() const {
  const cplx yl = admittance(ComponentKind::Inductor, components.Lind, components.omega);
  CMat j = laplacian();
  j.diagonal().array() -= yl;
  return j / (-I1 * components.omega);
}

CircuitModel real_space_circuit(const ComponentSet& c, const ModelParams& geometry, bool compensate) {
  geometry.validate();
  if (geometry.nx < 2 || geometry.ny < 2)
    throw ValidationError("real_space_circuit: nx and ny must be >= 2 (smaller lattices need self-loop branches)");
  CircuitModel m;
  m.components = c;
  m.params = geometry;
  const int nx = geometry.nx, ny = geometry.ny;
  const bool periodic = geometry.boundary == Boundary::Periodic;
  auto node = [&](int ix, int iy, int s) { return 2 * (static_cast<Eigen::Index>(iy) * nx + ix) + s; };
  CVec missing = CVec::Zero(m.nodes());
  const std::vector<CellElement> elems = cell_elements(c);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      for (const CellElement& e : elems) {
        const int ax = ix + e.dax, ay = iy + e.day, bx = ix + e.dbx, by = iy + e.dby;
        const bool wraps = ax >= nx || ay >= ny || bx >= nx || by >= ny;
        const Eigen::Index a = node(ax % nx, ay % ny, e.sa), b = node(bx % nx, by % ny, e.sb);
        const cplx y = admittance(e.kind, e.value, c.omega);
        if (wraps && !periodic) {
          missing[a] += e.directional ? -y : y;
          missing[b] += y;
          continue;
        }
        m.branches.push_back({a, b, y, e.directional, e.kind, e.value, e.label});
      }
      for (const Ground& g : cell_groundings(c)) {
        m.groundings.push_back({node(ix, iy, g.s), admittance(g.kind, g.value, c.omega), g.kind, g.value, g.label, false});
      }
    }
  }
  if (compensate && !periodic) {
    for (Eigen::Index n = 0; n < m.nodes(); ++n) {
      const cplx y = missing[n];
      const double scale = 1e-14 * (1.0 + std::abs(y));
      if (std::abs(y.real()) > scale)
        m.groundings.push_back({n, cplx{y.real(), 0.0}, ComponentKind::Resistor, 1.0 / y.real(), "RG", true});
      if (std::abs(y.imag()) > scale)
        m.groundings.push_back({n, cplx{0.0, y.imag()}, ComponentKind::Capacitor, y.imag() / c.omega, "CG", true});
    }
  }
  return m;
}

std::vector<CompensationClass> compensation_classes(const CircuitModel& circuit) {
  const int nx = circuit.params.nx, ny = circuit.params.ny;
  CVec comp = CVec::Zero(circuit.nodes());
  std::vector<char> has(circuit.nodes(), 0);
  for (const Grounding& g : circuit.groundings) {
    if (!g.compensation) continue;
    comp[g.node] += g.y;
    has[g.node] = 1;
  }
  std::map<std::pair<std::string, int>, cplx> classes;
  for (Eigen::Index n = 0; n < circuit.nodes(); ++n) {
    const Eigen::Index cell = n / 2;
    const int ix = static_cast<int>(cell % nx), iy = static_cast<int>(cell / nx);
    const std::string vert = iy == 0 ? "lower" : (iy == ny - 1 ? "upper" : "");
    const std::string horz = ix == 0 ? "left" : (ix == nx - 1 ? "right" : "");
    if (vert.empty() && horz.empty()) continue;
    const std::string name = vert.empty() ? horz : (horz.empty() ? vert : vert + "-" + horz);
    classes[{name, static_cast<int>(n % 2)}] = comp[n];
  }
  std::vector<CompensationClass> out;
  for (const auto& [key, y] : classes) out.push_back({key.first, key.second, y});
  return out;
}

int count_distinct(const std::vector<CompensationClass>& classes, double tol) {
  std::vector<cplx> seen;
  for (const CompensationClass& c : classes) {
    bool dup = false;
    for (const cplx& s : seen) dup = dup || std::abs(s - c.y) <= tol * (1.0 + std::abs(s));
    if (!dup) seen.push_back(c.y);
  }
  return static_cast<int>(seen.size());
}

MappingReport verify_mapping(const CircuitModel& circuit, const LatticeOperator& x, double threshold) {
  if (x.dim() != circuit.nodes() || x.nx != circuit.params.nx || x.ny != circuit.params.ny ||
      x.boundary != circuit.params.boundary)
    throw ValidationError("verify_mapping: circuit and damping matrix geometries differ");
  MappingReport r;
  r.threshold = threshold;
  const CMat err = (circuit.extract_jp() - x.matrix).cwiseAbs().cast<cplx>();
  Eigen::Index i = 0, j = 0;
  r.max_error = err.real().maxCoeff(&i, &j);
  r.worst_row = i;
  r.worst_col = j;
  r.worst_node = circuit.node_name(i);
  r.pass = r.max_error < threshold;
  return r;
}

}  // namespace dchern
