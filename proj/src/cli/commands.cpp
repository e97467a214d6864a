#include "dchern/commands.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dchern/circuit.hpp"
#include "dchern/csv.hpp"
#include "dchern/dynamics.hpp"
#include "dchern/errors.hpp"
#include "dchern/netlist.hpp"
#include "dchern/spectra.hpp"
#include "dchern/verify.hpp"

namespace dchern {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string prepare_out(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw ComputationError("cannot create output directory '" + cfg.out + "': " + ec.message());
  return cfg.out;
}

std::string path_in(const RunConfig& cfg, const std::string& name) { return (fs::path(cfg.out) / name).string(); }

std::string comment(const std::string& command, const RunConfig& cfg) { return "dchern " + command + " " + cfg.echo(); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ComputationError("cannot write '" + path + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<double> time_grid(const RunConfig& cfg, bool linear_by_default) {
  const bool linear = cfg.time_grid == "linear" || (cfg.time_grid == "auto" && linear_by_default);
  return linear ? linear_grid(cfg.tmin, cfg.tmax, cfg.tsteps) : geometric_grid(cfg.tmin, cfg.tmax, cfg.tsteps);
}

json gap_json(const GapReport& g) {
  json j;
  j["gap"] = g.gap;
  if (g.grid > 0) {
    j["grid"] = g.grid;
    j["argmin_kx"] = g.argmin.kx;
    j["argmin_ky"] = g.argmin.ky;
  } else {
    j["argmin_index"] = g.argmin_index;
    j["eigensolver_residual"] = g.residual;
  }
  j["argmin_eigenvalue"] = {g.argmin_eigenvalue.real(), g.argmin_eigenvalue.imag()};
  return j;
}

ModelParams with_boundary(const ModelParams& p, Boundary b) {
  ModelParams q = p;
  q.boundary = b;
  return q;
}

}  // namespace

CommandResult cmd_spectrum(const RunConfig& cfg) {
  cfg.validate();
  const ModelParams per = with_boundary(cfg.params, Boundary::Periodic);
  const ModelParams open = with_boundary(cfg.params, Boundary::Open);
  const GapReport bloch_gap = liouvillian_gap_bloch(per, cfg.grid);
  const std::vector<BlochPoint> scan = bloch_spectrum_scan(per, cfg.grid);
  const SpectrumResult s_open = spectrum(real_space_damping_matrix(open, cfg.max_dim));
  const GapReport open_gap = liouvillian_gap_real(s_open);
  const LocalizationReport loc = skin_localization(s_open, open.nx, open.ny);

  prepare_out(cfg);
  CommandResult r;
  {
    const std::string path = path_in(cfg, "spectrum_periodic.csv");
    CsvWriter w(path, comment("spectrum", cfg) + " | Bloch mesh, last two rows at the refined gap minimum",
                {"re", "im", "kx", "ky"});
    for (const BlochPoint& b : scan) w.row({b.value.real(), b.value.imag(), b.k.kx, b.k.ky});
    for (const cplx& v : bloch_damping_eigenvalues(per, bloch_gap.argmin))
      w.row({v.real(), v.imag(), bloch_gap.argmin.kx, bloch_gap.argmin.ky});
    r.files.push_back(path);
  }
  {
    const std::string path = path_in(cfg, "spectrum_periodic_lattice.csv");
    CsvWriter w(path, comment("spectrum", cfg) + " | Bloch union over the lattice momenta", {"re", "im", "kx", "ky"});
    for (int jy = 0; jy < per.ny; ++jy)
      for (int jx = 0; jx < per.nx; ++jx) {
        const Momentum k{2.0 * M_PI * jx / per.nx, 2.0 * M_PI * jy / per.ny};
        for (const cplx& v : bloch_damping_eigenvalues(per, k)) w.row({v.real(), v.imag(), k.kx, k.ky});
      }
    r.files.push_back(path);
  }
  {
    const std::string path = path_in(cfg, "spectrum_open.csv");
    CsvWriter w(path, comment("spectrum", cfg) + " | real-space open lattice", {"re", "im"});
    for (Eigen::Index i = 0; i < s_open.eigenvalues.size(); ++i)
      w.row({s_open.eigenvalues[i].real(), s_open.eigenvalues[i].imag()});
    r.files.push_back(path);
  }
  json j;
  j["command"] = "spectrum";
  j["config"] = cfg.echo();
  j["periodic_bloch_gap"] = gap_json(bloch_gap);
  j["open_gap"] = gap_json(open_gap);
  j["open_max_re"] = s_open.eigenvalues.real().maxCoeff();
  j["open_localization"] = {{"dominant_corner", to_string(loc.dominant)},
                            {"dominant_fraction", loc.dominant_fraction},
                            {"corner_fractions",
                             {{"lower-left", loc.corner_fraction[0]},
                              {"lower-right", loc.corner_fraction[1]},
                              {"upper-left", loc.corner_fraction[2]},
                              {"upper-right", loc.corner_fraction[3]}}}};
  r.summary = dump(j);
  const std::string path = path_in(cfg, "spectrum_summary.json");
  write_text(path, r.summary);
  r.files.push_back(path);
  return r;
}

CommandResult cmd_dynamics(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<double> times = time_grid(cfg, false);
  SeriesOptions opt;
  opt.estimator = cfg.estimator == "deviation" ? Estimator::Deviation : Estimator::FiniteDifference;
  opt.fd_step = cfg.fd_step;
  const DampingSeries s = deviation_series(cfg.params, times, opt);
  const DampingClassification c = classify_damping(s, cfg.resolved_window_lo(), cfg.resolved_window_hi());
  json j;
  j["command"] = "dynamics";
  j["config"] = cfg.echo();
  j["law"] = to_string(c.law);
  j["exponent"] = c.exponent;
  j["rate"] = c.rate;
  j["r2_algebraic"] = c.r2_algebraic;
  j["r2_exponential"] = c.r2_exponential;
  j["segmented"] = {{"breakpoint", c.segmented.breakpoint},
                    {"exponent", c.segmented.exponent},
                    {"rate", c.segmented.rate},
                    {"r2", c.segmented.r2}};
  if (c.law == DampingLaw::Crossover) j["breakpoint"] = c.breakpoint;
  j["window"] = {c.window_lo, c.window_hi};
  j["samples"] = c.samples;
  j["trimmed"] = c.trimmed;
  j["propagator"] = to_string(s.method);
  j["bloch_gap"] = liouvillian_gap_bloch(with_boundary(cfg.params, Boundary::Periodic), cfg.grid).gap;

  prepare_out(cfg);
  CommandResult r;
  {
    const std::string path = path_in(cfg, "dynamics_R.csv");
    CsvWriter w(path, comment("dynamics", cfg), {"t", "R"});
    for (std::size_t i = 0; i < times.size(); ++i) w.row({times[i], s.R[i]});
    r.files.push_back(path);
  }
  r.summary = dump(j);
  const std::string path = path_in(cfg, "dynamics_summary.json");
  write_text(path, r.summary);
  r.files.push_back(path);
  return r;
}

CommandResult cmd_wavefront(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<double> times = time_grid(cfg, true);
  const Wavefront w = wavefront_times(cfg.params, times);
  const int nx = cfg.params.nx, ny = cfg.params.ny;

  prepare_out(cfg);
  CommandResult r;
  {
    const std::string path = path_in(cfg, "wavefront_Rx.csv");
    CsvWriter out(path, comment("wavefront", cfg) + " | ix, iy are 0-based", {"ix", "iy", "t", "Rx"});
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        for (std::size_t i = 0; i < times.size(); ++i)
          out.row({static_cast<long>(ix), static_cast<long>(iy), times[i],
                   w.series.Rx(static_cast<Eigen::Index>(iy) * nx + ix, static_cast<Eigen::Index>(i))});
    r.files.push_back(path);
  }
  int defined = 0;
  {
    const std::string path = path_in(cfg, "wavefront_tcross.csv");
    CsvWriter out(path, comment("wavefront", cfg) + " | ix, iy are 0-based; nan marks cells with no crossover",
                  {"ix", "iy", "t_cross"});
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        const auto t = w.at(ix, iy);
        defined += t.has_value();
        out.row({static_cast<long>(ix), static_cast<long>(iy), t ? *t : std::nan("")});
      }
    r.files.push_back(path);
  }
  // Rows along y at fixed ix: nondecreasing entry times away from iy = 0.
  int monotone_columns = 0;
  for (int ix = 0; ix < nx; ++ix) {
    bool ok = true;
    for (int iy = 0; iy + 1 < ny; ++iy) {
      const auto a = w.at(ix, iy), b = w.at(ix, iy + 1);
      ok = ok && a && b && *a <= *b;
    }
    monotone_columns += ok;
  }
  json j;
  j["command"] = "wavefront";
  j["config"] = cfg.echo();
  j["cells"] = nx * ny;
  j["defined"] = defined;
  j["monotone_lines_in_iy"] = monotone_columns;
  j["propagator"] = to_string(w.series.method);
  r.summary = dump(j);
  const std::string path = path_in(cfg, "wavefront_summary.json");
  write_text(path, r.summary);
  r.files.push_back(path);
  return r;
}

CommandResult cmd_circuit(const RunConfig& cfg) {
  cfg.validate();
  const ModelParams& p = cfg.params;
  if (p.nx < 2 || p.ny < 2) throw ValidationError("circuit needs nx, ny >= 2");
  const ComponentSet comp = component_values(p, cfg.omega, cfg.inductor_shift);
  const bool compensate = cfg.fault != "omit-compensation";
  const CircuitModel circ = real_space_circuit(comp, p, compensate);
  const LatticeOperator x = real_space_damping_matrix(p, cfg.max_dim);
  const MappingReport map = verify_mapping(circ, x);
  const std::string netlist = export_netlist(circ);
  const double round_trip = max_abs(netlist_laplacian(netlist, circ) - circ.laplacian());
  const CircuitModel per = real_space_circuit(comp, with_boundary(p, Boundary::Periodic));
  const double diag = (circ.laplacian().diagonal() - per.laplacian().diagonal()).cwiseAbs().maxCoeff();
  const InicCheck inic = check_inic_templates(cfg.omega);

  struct Row {
    std::string check;
    double residual, threshold;
    std::string detail;
  };
  const std::vector<Row> rows = {
      {"mapping_JP_vs_X", map.max_error, 1e-9, "worst node " + map.worst_node},
      {"diagonal_vs_periodic", diag, 1e-12, ""},
      {"netlist_round_trip", round_trip, 1e-12, ""},
      {"inic_grounded", inic.grounded_error, 1e-15, ""},
      {"inic_floating", inic.floating_error, 1e-15, ""},
      {"inic_directional", inic.directional_error, 1e-15, ""},
  };

  prepare_out(cfg);
  CommandResult r;
  {
    const std::string path = path_in(cfg, "components.csv");
    CsvWriter w(path, comment("circuit", cfg), {"name", "value"});
    const std::vector<std::pair<std::string, double>> vals = {
        {"omega", comp.omega}, {"C1", comp.C1}, {"C2", comp.C2}, {"C", comp.C},   {"R0", comp.R0},
        {"R1", comp.R1},       {"R2", comp.R2}, {"R3", comp.R3}, {"R4", comp.R4}, {"R5", comp.R5},
        {"R6", comp.R6},       {"R7", comp.R7}, {"RA", comp.RA}, {"RB", comp.RB}, {"Lind", comp.Lind}};
    for (const auto& [k, v] : vals) w.row({k, v});
    r.files.push_back(path);
  }
  {
    const std::string path = path_in(cfg, "compensation.csv");
    CsvWriter w(path, comment("circuit", cfg) + " | grounding modules per boundary class",
                {"class", "sublattice", "re", "im"});
    for (const CompensationClass& c : compensation_classes(circ))
      w.row({c.name, std::string(c.sublattice ? "B" : "A"), c.y.real(), c.y.imag()});
    r.files.push_back(path);
  }
  bool all = true;
  {
    const std::string path = path_in(cfg, "circuit_verification.csv");
    CsvWriter w(path, comment("circuit", cfg), {"check", "residual", "threshold", "pass", "detail"});
    for (const Row& row : rows) {
      const bool pass = row.residual <= row.threshold;
      all = all && pass;
      w.row({row.check, row.residual, row.threshold, std::string(pass ? "true" : "false"), row.detail});
    }
    r.files.push_back(path);
  }
  {
    const std::string path = path_in(cfg, "circuit.cir");
    write_text(path, netlist);
    r.files.push_back(path);
  }
  std::ostringstream s;
  s << "circuit " << p.nx << "x" << p.ny << " " << to_string(p.boundary) << ": mapping max|JP - X| = "
    << format_double(map.max_error) << (map.pass ? " (pass)" : " (FAIL at node " + map.worst_node + ")")
    << ", netlist round trip " << format_double(round_trip) << ", diagonal deviation " << format_double(diag) << "\n";
  r.summary = s.str();
  r.exit_code = all ? 0 : 2;
  return r;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  cfg.validate();
  const Fault fault = parse_fault(cfg.fault);
  const VerifyReport rep = run_verification(cfg.params, fault);
  std::ostringstream s;
  for (const CheckResult& c : rep.checks) {
    s << (c.pass ? "PASS " : "FAIL ") << c.module << "." << c.operation << " [" << c.case_name
      << "] residual=" << format_double(c.residual) << " threshold=" << format_double(c.threshold) << "\n";
  }
  if (const CheckResult* f = rep.first_failure()) {
    s << "first failure: " << f->module << "." << f->operation << " [" << f->case_name
      << "] residual=" << format_double(f->residual) << "\n";
  } else {
    s << "all " << rep.checks.size() << " checks passed\n";
  }
  prepare_out(cfg);
  CommandResult r;
  r.summary = s.str();
  const std::string path = path_in(cfg, "verify_report.txt");
  write_text(path, "# " + comment("verify", cfg) + "\n" + r.summary);
  r.files.push_back(path);
  r.exit_code = rep.pass() ? 0 : 2;
  return r;
}

CommandResult run_command(const std::string& name, const RunConfig& cfg) {
  if (name == "spectrum") return cmd_spectrum(cfg);
  if (name == "dynamics") return cmd_dynamics(cfg);
  if (name == "wavefront") return cmd_wavefront(cfg);
  if (name == "circuit") return cmd_circuit(cfg);
  if (name == "verify") return cmd_verify(cfg);
  throw ValidationError("unknown command '" + name + "'");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const ResourceError*>(&e)) return 1;
  return 2;
}

}  // namespace dchern
