#pragma once

#include <string>
#include <vector>

#include "dchern/model.hpp"

namespace dchern {

// Component values at angular frequency omega. Negative values are realized
// with negative impedance converters.
struct ComponentSet {
  double omega = 1.0;
  double C1 = 0.0, C2 = 0.0, C = 0.0;
  double R0 = 0.0, R1 = 0.0, R2 = 0.0, R3 = 0.0, R4 = 0.0, R5 = 0.0, R6 = 0.0, R7 = 0.0;
  double RA = 0.0, RB = 0.0;
  double Lind = 0.0;
};

// inductor_shift sets 1/(omega^2 Lind), the uniform real offset of the
// Laplacian spectrum contributed by the grounding inductors.
ComponentSet component_values(const ModelParams& p, double omega = 1.0, double inductor_shift = 1.0);

struct LaplacianPair {
  Mat2 J;   // J(omega)
  Mat2 JP;  // (J - I/(i omega Lind)) / (-i omega)
};

LaplacianPair bloch_laplacian(const ComponentSet& c, Momentum k);

enum class ComponentKind { Resistor, Capacitor, Inductor };

// Two-terminal element. Passive branches stamp y [[1, -1], [-1, 1]] on
// (a, b). Directional branches (op-amp based) stamp y [[-1, 1], [-1, 1]]:
// node a sees -y (V_a - V_b), node b sees y (V_b - V_a).
struct Branch {
  Eigen::Index a = 0;
  Eigen::Index b = 0;
  cplx y{};
  bool directional = false;
  ComponentKind kind = ComponentKind::Resistor;
  double value = 0.0;  // ohm / farad / henry, signed
  std::string label;
};

struct Grounding {
  Eigen::Index node = 0;
  cplx y{};
  ComponentKind kind = ComponentKind::Resistor;
  double value = 0.0;
  std::string label;
  bool compensation = false;  // boundary grounding module
};

struct CircuitModel {
  ComponentSet components;
  ModelParams params;  // geometry, boundary and provenance
  std::vector<Branch> branches;
  std::vector<Grounding> groundings;

  Eigen::Index nodes() const { return 2 * static_cast<Eigen::Index>(params.nx) * params.ny; }
  std::string node_name(Eigen::Index n) const;
  CMat laplacian() const;          // J(omega) = D - C + W
  CMat branch_laplacian() const;   // D - C only
  CVec grounding_admittance() const;
  CMat extract_jp() const;         // (J - I/(i omega Lind)) / (-i omega)
};

// Open boundaries drop wraparound branches and, when compensate is true, add
// per-node grounding modules restoring the periodic diagonal of D + W.
CircuitModel real_space_circuit(const ComponentSet& c, const ModelParams& geometry, bool compensate = true);

// Distinct compensation admittances, one per (edge or corner class, sublattice).
struct CompensationClass {
  std::string name;  // e.g. "left", "lower-left"
  int sublattice = 0;
  cplx y{};
};
std::vector<CompensationClass> compensation_classes(const CircuitModel& circuit);
int count_distinct(const std::vector<CompensationClass>& classes, double tol = 1e-12);

struct MappingReport {
  bool pass = false;
  double max_error = 0.0;
  double threshold = 1e-9;
  Eigen::Index worst_row = -1, worst_col = -1;
  std::string worst_node;
};

MappingReport verify_mapping(const CircuitModel& circuit, const LatticeOperator& x, double threshold = 1e-9);

}  // namespace dchern
