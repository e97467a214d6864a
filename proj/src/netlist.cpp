#include "dchern/netlist.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "dchern/errors.hpp"

namespace dchern {

namespace {

const cplx I1{0.0, 1.0};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

char letter(ComponentKind k) {
  switch (k) {
    case ComponentKind::Resistor: return 'R';
    case ComponentKind::Capacitor: return 'C';
    case ComponentKind::Inductor: return 'L';
  }
  return 'R';
}

class Emitter {
 public:
  std::ostringstream out;

  void element(ComponentKind k, double v, const std::string& a, const std::string& b, const std::string& note = "") {
    const char c = letter(k);
    out << c << ++count_[c] << ' ' << a << ' ' << b << ' ' << fmt(v);
    if (!note.empty()) out << " ; " << note;
    out << '\n';
  }

  void source(const std::string& p, const std::string& n, const std::string& cp, const std::string& cn, double gain) {
    out << 'E' << ++count_['E'] << ' ' << p << ' ' << n << ' ' << cp << ' ' << cn << ' ' << fmt(gain) << '\n';
  }

  std::string internal() { return "X" + std::to_string(++internal_); }

  // Ground-referenced node at 2 V_a - V_b: an inverting buffer of V_b with a
  // gain-2 stage on top.
  std::string doubled(const std::string& a, const std::string& b) {
    const std::string y = internal(), x = internal();
    source(y, "0", b, "0", -1.0);
    source(x, y, a, "0", 2.0);
    return x;
  }

  void passive(ComponentKind k, double v, const std::string& a, const std::string& b, const std::string& note) {
    if (v > 0.0) {
      element(k, v, a, b, note);
      return;
    }
    // Each end sees -(V_a - V_b)/Z through Z hung from 2 V_a - V_b.
    element(k, -v, doubled(a, b), a, note + " inic");
    element(k, -v, doubled(b, a), b, note + " inic");
  }

  void grounded(ComponentKind k, double v, const std::string& n, const std::string& note) {
    if (v > 0.0) {
      element(k, v, n, "0", note);
      return;
    }
    const std::string x = internal();
    source(x, "0", n, "0", 2.0);
    element(k, -v, x, n, note + " inic");
  }

  void directional(ComponentKind k, double v, const std::string& a, const std::string& b, const std::string& note) {
    if (v < 0.0) {
      directional(k, -v, b, a, note);
      return;
    }
    // a: -(V_a - V_b)/Z via a gain-2 converter; b: (V_b - V_a)/Z via a buffer of V_a.
    element(k, v, doubled(a, b), a, note + " dir-neg");
    const std::string xb = internal();
    source(xb, "0", a, "0", 1.0);
    element(k, v, xb, b, note + " dir-pos");
  }

 private:
  std::map<char, int> count_;
  int internal_ = 0;
};

cplx card_admittance(const NetlistCard& c, double omega) {
  switch (c.type) {
    case 'R': return 1.0 / c.value;
    case 'C': return I1 * omega * c.value;
    case 'L': return 1.0 / (I1 * omega * c.value);
  }
  return 0.0;
}

double max_dev(const CMat& a, const CMat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

std::string export_netlist(const CircuitModel& circuit) {
  const ModelParams& p = circuit.params;
  const ComponentSet& c = circuit.components;
  const InicCheck check = check_inic_templates(c.omega);
  Emitter e;
  e.out << "* dchern topolectrical circuit\n";
  e.out << "* lattice " << p.nx << "x" << p.ny << " boundary=" << to_string(p.boundary) << '\n';
  e.out << "* params lx=" << fmt(p.lx) << " ly=" << fmt(p.ly) << " tx=" << fmt(p.tx) << " ty=" << fmt(p.ty)
        << " m=" << fmt(p.m) << " lam=" << fmt(p.lam) << '\n';
  e.out << "* components C1=" << fmt(c.C1) << " C2=" << fmt(c.C2) << " C=" << fmt(c.C) << " R0=" << fmt(c.R0)
        << " R1=" << fmt(c.R1) << " RA=" << fmt(c.RA) << " RB=" << fmt(c.RB) << " Lind=" << fmt(c.Lind) << '\n';
  e.out << "* node names: A_ix_iy, B_ix_iy (0-based); internal converter nodes X<n>\n";
  e.out << "* converter check (ideal amplifiers): grounded " << (check.grounded_error == 0.0 ? "exact" : fmt(check.grounded_error))
        << ", floating " << (check.floating_error == 0.0 ? "exact" : fmt(check.floating_error)) << ", directional "
        << (check.directional_error == 0.0 ? "exact" : fmt(check.directional_error)) << '\n';
  e.out << ".param omega=" << fmt(c.omega) << '\n';
  for (const Branch& b : circuit.branches) {
    const std::string na = circuit.node_name(b.a), nb = circuit.node_name(b.b);
    if (b.directional)
      e.directional(b.kind, b.value, na, nb, b.label);
    else
      e.passive(b.kind, b.value, na, nb, b.label);
  }
  for (const Grounding& g : circuit.groundings) e.grounded(g.kind, g.value, circuit.node_name(g.node), g.label);
  e.out << ".end\n";
  return e.out.str();
}

Netlist parse_netlist(const std::string& text) {
  Netlist n;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto semi = line.find(';'); semi != std::string::npos) line.erase(semi);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '*') continue;
    const std::string where = "netlist line " + std::to_string(lineno) + ": ";
    if (tok[0] == ".end") break;
    if (tok[0] == ".param") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (tok[i].rfind("omega=", 0) == 0) n.omega = std::stod(tok[i].substr(6));
      }
      continue;
    }
    NetlistCard c;
    c.type = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0][0])));
    c.name = tok[0];
    const std::size_t want = c.type == 'E' ? 6 : 4;
    if ((c.type != 'R' && c.type != 'C' && c.type != 'L' && c.type != 'E') || tok.size() != want)
      throw ValidationError(where + "unrecognized card '" + line + "'");
    c.nodes.assign(tok.begin() + 1, tok.end() - 1);
    try {
      c.value = std::stod(tok.back());
    } catch (const std::exception&) {
      throw ValidationError(where + "bad value '" + tok.back() + "'");
    }
    n.cards.push_back(std::move(c));
  }
  return n;
}

CMat reduced_admittance(const Netlist& netlist, const std::vector<std::string>& ports) {
  std::map<std::string, Eigen::Index> port_index;
  for (std::size_t i = 0; i < ports.size(); ++i) port_index[ports[i]] = static_cast<Eigen::Index>(i);
  std::map<std::string, Eigen::Index> internal_index;
  Eigen::Index sources = 0;
  for (const NetlistCard& c : netlist.cards) {
    if (c.type == 'E') ++sources;
    for (const std::string& nm : c.nodes)
      if (nm != "0" && !port_index.count(nm) && !internal_index.count(nm)) {
        const Eigen::Index k = static_cast<Eigen::Index>(internal_index.size());
        internal_index[nm] = k;
      }
  }
  const Eigen::Index np = static_cast<Eigen::Index>(ports.size());
  const Eigen::Index ni = static_cast<Eigen::Index>(internal_index.size());
  const Eigen::Index nq = ni + sources;
  // Unknown layout: ports [0, np), internal nodes [np, np + ni), source currents after.
  auto idx = [&](const std::string& nm) -> Eigen::Index {
    if (nm == "0") return -1;
    if (auto it = port_index.find(nm); it != port_index.end()) return it->second;
    return np + internal_index.at(nm);
  };
  std::vector<Eigen::Triplet<cplx>> trip;
  auto add = [&](Eigen::Index r, Eigen::Index c, cplx v) {
    if (r >= 0 && c >= 0) trip.emplace_back(r, c, v);
  };
  Eigen::Index src = np + ni;
  for (const NetlistCard& c : netlist.cards) {
    if (c.type == 'E') {
      const Eigen::Index p = idx(c.nodes[0]), n = idx(c.nodes[1]), cp = idx(c.nodes[2]), cn = idx(c.nodes[3]);
      add(p, src, 1.0);
      add(n, src, -1.0);
      add(src, p, 1.0);
      add(src, n, -1.0);
      add(src, cp, -c.value);
      add(src, cn, c.value);
      ++src;
      continue;
    }
    const Eigen::Index a = idx(c.nodes[0]), b = idx(c.nodes[1]);
    const cplx y = card_admittance(c, netlist.omega);
    add(a, a, y);
    add(b, b, y);
    add(a, b, -y);
    add(b, a, -y);
  }
  Eigen::SparseMatrix<cplx> full(np + nq, np + nq);
  full.setFromTriplets(trip.begin(), trip.end());
  const CMat dense_pp = CMat(full.topLeftCorner(np, np));
  if (nq == 0) return dense_pp;
  Eigen::SparseMatrix<cplx> qq = full.bottomRightCorner(nq, nq);
  const CMat qp = CMat(full.bottomLeftCorner(nq, np));
  const CMat pq = CMat(full.topRightCorner(np, nq));
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  lu.compute(qq);
  if (lu.info() != Eigen::Success) throw ComputationError("reduced_admittance: singular internal network");
  const CMat sol = lu.solve(qp);
  return dense_pp - pq * sol;
}

CMat netlist_laplacian(const std::string& text, const CircuitModel& circuit) {
  std::vector<std::string> ports;
  for (Eigen::Index n = 0; n < circuit.nodes(); ++n) ports.push_back(circuit.node_name(n));
  return reduced_admittance(parse_netlist(text), ports);
}

std::string inic_grounded_template(ComponentKind kind, double value, const std::string& node) {
  Emitter e;
  e.grounded(kind, -value, node, "neg");
  return e.out.str();
}

std::string inic_floating_template(ComponentKind kind, double value, const std::string& a, const std::string& b) {
  Emitter e;
  e.passive(kind, -value, a, b, "neg");
  return e.out.str();
}

std::string directional_template(ComponentKind kind, double value, const std::string& a, const std::string& b) {
  Emitter e;
  e.directional(kind, value, a, b, "dir");
  return e.out.str();
}

InicCheck check_inic_templates(double omega, double tol) {
  InicCheck r;
  const std::string param = ".param omega=" + fmt(omega) + "\n";
  for (auto [kind, value] : {std::pair{ComponentKind::Resistor, 5.0}, std::pair{ComponentKind::Capacitor, 0.25}}) {
    NetlistCard probe{letter(kind), "Z", {"a", "b"}, value};
    const cplx y = card_admittance(probe, omega);
    const CMat g = reduced_admittance(parse_netlist(param + inic_grounded_template(kind, value, "a")), {"a"});
    r.grounded_error = std::max(r.grounded_error, std::abs(g(0, 0) + y));
    Eigen::Matrix2cd pass;
    pass << 1.0, -1.0, -1.0, 1.0;
    const CMat f = reduced_admittance(parse_netlist(param + inic_floating_template(kind, value, "a", "b")), {"a", "b"});
    r.floating_error = std::max(r.floating_error, max_dev(f, CMat(-y * pass)));
    Eigen::Matrix2cd dir;
    dir << -1.0, 1.0, -1.0, 1.0;
    const CMat d = reduced_admittance(parse_netlist(param + directional_template(kind, value, "a", "b")), {"a", "b"});
    r.directional_error = std::max(r.directional_error, max_dev(d, CMat(y * dir)));
  }
  r.pass = r.grounded_error <= tol && r.floating_error <= tol && r.directional_error <= tol;
  return r;
}

}  // namespace dchern
