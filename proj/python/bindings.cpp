#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "dchern/circuit.hpp"
#include "dchern/commands.hpp"
#include "dchern/config.hpp"
#include "dchern/dynamics.hpp"
#include "dchern/errors.hpp"
#include "dchern/netlist.hpp"
#include "dchern/spectra.hpp"
#include "dchern/thirdq.hpp"

namespace py = pybind11;
using namespace dchern;

namespace {

using release = py::call_guard<py::gil_scoped_release>;

py::dict gap_dict(const GapReport& g) {
  py::dict d;
  d["gap"] = g.gap;
  d["eigenvalue"] = g.argmin_eigenvalue;
  if (g.grid > 0) {
    d["kx"] = g.argmin.kx;
    d["ky"] = g.argmin.ky;
  } else {
    d["index"] = g.argmin_index;
    d["residual"] = g.residual;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_dchern, m) {
  m.doc() = "Dissipative Chern lattice core";

  static py::exception<ValidationError> validation(m, "ValidationError", PyExc_ValueError);
  static py::exception<ResourceError> resource(m, "ResourceError", PyExc_MemoryError);
  static py::exception<ComputationError> computation(m, "ComputationError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(validation.ptr(), e.what());
    } catch (const ResourceError& e) {
      PyErr_SetString(resource.ptr(), e.what());
    } catch (const ComputationError& e) {
      PyErr_SetString(computation.ptr(), e.what());
    }
  });

  py::enum_<Boundary>(m, "Boundary").value("periodic", Boundary::Periodic).value("open", Boundary::Open);

  py::class_<ModelParams>(m, "Params")
      .def(py::init([](double lx, double ly, double tx, double ty, double mass, double lam, int nx, int ny,
                       const std::string& boundary) {
             ModelParams p;
             p.lx = lx;
             p.ly = ly;
             p.tx = tx;
             p.ty = ty;
             p.m = mass;
             p.lam = lam;
             p.nx = nx;
             p.ny = ny;
             p.boundary = parse_boundary(boundary);
             p.validate();
             return p;
           }),
           py::arg("lx") = 1.0, py::arg("ly") = 1.0, py::arg("tx") = -1.0, py::arg("ty") = -1.0, py::arg("m") = 1.5,
           py::arg("lam") = 0.1, py::arg("nx") = 1, py::arg("ny") = 1, py::arg("boundary") = "periodic")
      .def_readwrite("lx", &ModelParams::lx)
      .def_readwrite("ly", &ModelParams::ly)
      .def_readwrite("tx", &ModelParams::tx)
      .def_readwrite("ty", &ModelParams::ty)
      .def_readwrite("m", &ModelParams::m)
      .def_readwrite("lam", &ModelParams::lam)
      .def_readwrite("nx", &ModelParams::nx)
      .def_readwrite("ny", &ModelParams::ny)
      .def_readwrite("boundary", &ModelParams::boundary)
      .def("__repr__", [](const ModelParams& p) {
        return "Params(m=" + std::to_string(p.m) + ", lam=" + std::to_string(p.lam) + ", nx=" + std::to_string(p.nx) +
               ", ny=" + std::to_string(p.ny) + ", boundary=" + to_string(p.boundary) + ")";
      });

  m.def("bloch_damping_matrix",
        [](const ModelParams& p, double kx, double ky) { return CMat(bloch_damping_matrix(p, {kx, ky})); },
        py::arg("params"), py::arg("kx"), py::arg("ky"));
  m.def("bloch_damping_eigenvalues",
        [](const ModelParams& p, double kx, double ky) {
          const auto e = bloch_damping_eigenvalues(p, {kx, ky});
          return std::make_pair(e[0], e[1]);
        },
        py::arg("params"), py::arg("kx"), py::arg("ky"));
  m.def("real_space_damping_matrix", [](const ModelParams& p) { return real_space_damping_matrix(p).matrix; },
        py::arg("params"), release());
  m.def("real_space_hamiltonian", [](const ModelParams& p) { return real_space_hamiltonian(p).matrix; },
        py::arg("params"), release());

  m.def("liouvillian_gap_bloch",
        [](const ModelParams& p, int grid) {
          GapReport g;
          {
            py::gil_scoped_release nogil;
            g = liouvillian_gap_bloch(p, grid);
          }
          return gap_dict(g);
        },
        py::arg("params"), py::arg("grid") = 128);
  m.def("liouvillian_gap_real",
        [](const ModelParams& p) {
          GapReport g;
          {
            py::gil_scoped_release nogil;
            g = liouvillian_gap_real(real_space_damping_matrix(p));
          }
          return gap_dict(g);
        },
        py::arg("params"));
  m.def("skin_localization",
        [](const ModelParams& p) {
          LocalizationReport r;
          {
            py::gil_scoped_release nogil;
            r = skin_localization(spectrum(real_space_damping_matrix(p)), p.nx, p.ny);
          }
          py::dict d;
          d["dominant"] = to_string(r.dominant);
          d["dominant_fraction"] = r.dominant_fraction;
          d["corner_fraction"] = std::vector<double>(r.corner_fraction.begin(), r.corner_fraction.end());
          d["mean_ix"] = r.mean_ix;
          d["mean_iy"] = r.mean_iy;
          return d;
        },
        py::arg("params"));

  m.def("verify_union",
        [](const ModelParams& p, double tol) {
          const UnionReport u = verify_union(p, tol);
          py::dict d;
          d["pass"] = u.pass;
          d["max_distance"] = u.max_distance;
          d["rapidities"] = u.rapidities;
          return d;
        },
        py::arg("params"), py::arg("tol") = 1e-8);
  m.def("liouvillian_eigenvalues", &liouvillian_eigenvalues, py::arg("rapidities"), py::arg("max_modes") = 20);

  m.def("deviation_series",
        [](const ModelParams& p, const std::vector<double>& times) {
          DampingSeries s;
          {
            py::gil_scoped_release nogil;
            s = deviation_series(p, times);
          }
          py::dict d;
          d["times"] = s.times;
          d["R"] = s.R;
          d["Rx"] = s.Rx;
          d["propagator"] = to_string(s.method);
          return d;
        },
        py::arg("params"), py::arg("times"));
  m.def("classify_damping",
        [](const std::vector<double>& t, const std::vector<double>& r, double lo, double hi) {
          const DampingClassification c = classify_damping(t, r, lo, hi);
          py::dict d;
          d["law"] = to_string(c.law);
          d["exponent"] = c.exponent;
          d["rate"] = c.rate;
          d["r2_algebraic"] = c.r2_algebraic;
          d["r2_exponential"] = c.r2_exponential;
          d["breakpoint"] = c.law == DampingLaw::Crossover ? py::object(py::float_(c.breakpoint)) : py::none();
          return d;
        },
        py::arg("times"), py::arg("values"), py::arg("lo"), py::arg("hi"));
  m.def("wavefront_times",
        [](const ModelParams& p, const std::vector<double>& times) {
          Wavefront w;
          {
            py::gil_scoped_release nogil;
            w = wavefront_times(p, times);
          }
          Eigen::MatrixXd t(p.ny, p.nx);
          for (int iy = 0; iy < p.ny; ++iy)
            for (int ix = 0; ix < p.nx; ++ix) t(iy, ix) = w.at(ix, iy).value_or(std::nan(""));
          return t;
        },
        py::arg("params"), py::arg("times"));

  m.def("component_values",
        [](const ModelParams& p, double omega) {
          const ComponentSet c = component_values(p, omega);
          py::dict d;
          d["omega"] = c.omega;
          d["C1"] = c.C1;
          d["C2"] = c.C2;
          d["C"] = c.C;
          d["R0"] = c.R0;
          d["R1"] = c.R1;
          d["R2"] = c.R2;
          d["R3"] = c.R3;
          d["R4"] = c.R4;
          d["R5"] = c.R5;
          d["R6"] = c.R6;
          d["R7"] = c.R7;
          d["RA"] = c.RA;
          d["RB"] = c.RB;
          d["Lind"] = c.Lind;
          return d;
        },
        py::arg("params"), py::arg("omega") = 1.0);
  m.def("circuit_mapping",
        [](const ModelParams& p, double omega, bool compensate) {
          const MappingReport r =
              verify_mapping(real_space_circuit(component_values(p, omega), p, compensate), real_space_damping_matrix(p));
          py::dict d;
          d["pass"] = r.pass;
          d["max_error"] = r.max_error;
          d["worst_node"] = r.worst_node;
          return d;
        },
        py::arg("params"), py::arg("omega") = 1.0, py::arg("compensate") = true);
  m.def("export_netlist",
        [](const ModelParams& p, double omega) { return export_netlist(real_space_circuit(component_values(p, omega), p)); },
        py::arg("params"), py::arg("omega") = 1.0);

  m.def("run_command",
        [](const std::string& name, const std::map<std::string, std::string>& settings) {
          RunConfig cfg;
          for (const auto& [k, v] : settings) apply_setting(cfg, k, v, "settings: ");
          CommandResult r;
          {
            py::gil_scoped_release nogil;
            r = run_command(name, cfg);
          }
          return py::make_tuple(r.exit_code, r.files, r.summary);
        },
        py::arg("name"), py::arg("settings") = std::map<std::string, std::string>{});
}
