#pragma once

#include <string>
#include <vector>

#include "dchern/circuit.hpp"

namespace dchern {

// SPICE-like dialect, one card per line:
//   R<id> n1 n2 ohms | C<id> n1 n2 farads | L<id> n1 n2 henries
//   E<id> out+ out- ctl+ ctl- gain     ideal voltage-controlled source
//   .param omega=<value>              operating angular frequency
// Node 0 is ground; lines starting with '*' are comments. Every negative
// element is expanded into a negative impedance converter: a ground-referenced
// source at 2*Va - Vb (an inverter plus a gain-2 stage) driving a positive
// element back into a. All R/C/L literals are positive.
std::string export_netlist(const CircuitModel& circuit);

struct NetlistCard {
  char type = 'R';
  std::string name;
  std::vector<std::string> nodes;
  double value = 0.0;
};

struct Netlist {
  double omega = 1.0;
  std::vector<NetlistCard> cards;
};

Netlist parse_netlist(const std::string& text);

// Nodal admittance seen at the given port nodes after eliminating all other
// nodes and source currents (modified nodal analysis + Kron reduction).
CMat reduced_admittance(const Netlist& netlist, const std::vector<std::string>& ports);

// Round trip: the lattice Laplacian rebuilt from netlist text, ports ordered
// as the circuit's node index.
CMat netlist_laplacian(const std::string& text, const CircuitModel& circuit);

// Expansion templates for a negative impedance -Z, where Z is the impedance
// of a positive element of the given kind and value.
std::string inic_grounded_template(ComponentKind kind, double value, const std::string& node);
std::string inic_floating_template(ComponentKind kind, double value, const std::string& a, const std::string& b);
std::string directional_template(ComponentKind kind, double value, const std::string& a, const std::string& b);

struct InicCheck {
  double grounded_error = 0.0;     // |Y - (-1/Z)|
  double floating_error = 0.0;     // vs -(1/Z) [[1, -1], [-1, 1]]
  double directional_error = 0.0;  // vs (1/Z) [[-1, 1], [-1, 1]]
  bool pass = false;
};

// Reduces the templates with ideal amplifiers and compares with the target
// port admittances.
InicCheck check_inic_templates(double omega = 1.0, double tol = 1e-15);

}  // namespace dchern
