#include "dchern/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dchern/csv.hpp"
#include "dchern/errors.hpp"

namespace dchern {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v, const std::string& where) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty() || !std::isfinite(d))
    throw ValidationError(where + "key '" + key + "' expects a finite number, got '" + v + "'");
  return d;
}

long parse_long(const std::string& key, const std::string& v, const std::string& where) {
  std::size_t used = 0;
  long n = 0;
  try {
    n = std::stol(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw ValidationError(where + "key '" + key + "' expects an integer, got '" + v + "'");
  return n;
}

int parse_int(const std::string& key, const std::string& v, const std::string& where) {
  const long n = parse_long(key, v, where);
  if (n < -1000000000L || n > 1000000000L) throw ValidationError(where + "key '" + key + "' is out of range");
  return static_cast<int>(n);
}

std::string one_of(const std::string& key, const std::string& v, std::initializer_list<const char*> allowed,
                   const std::string& where) {
  for (const char* a : allowed)
    if (v == a) return v;
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw ValidationError(where + "key '" + key + "' must be one of {" + list + "}, got '" + v + "'");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "lx",        "ly",     "tx",        "ty",      "m",     "lam",            "nx",      "ny",    "boundary",
      "grid",      "tmin",   "tmax",      "tsteps",  "time_grid", "window_lo",  "window_hi", "estimator",
      "fd_step",   "omega",  "inductor_shift", "max_dim", "fault", "out"};
  return keys;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw, const std::string& where) {
  const std::string v = trim(raw);
  ModelParams& p = c.params;
  if (key == "lx") p.lx = parse_double(key, v, where);
  else if (key == "ly") p.ly = parse_double(key, v, where);
  else if (key == "tx") p.tx = parse_double(key, v, where);
  else if (key == "ty") p.ty = parse_double(key, v, where);
  else if (key == "m") p.m = parse_double(key, v, where);
  else if (key == "lam") p.lam = parse_double(key, v, where);
  else if (key == "nx") p.nx = parse_int(key, v, where);
  else if (key == "ny") p.ny = parse_int(key, v, where);
  else if (key == "boundary") {
    try {
      p.boundary = parse_boundary(v);
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  else if (key == "grid") c.grid = parse_int(key, v, where);
  else if (key == "tmin") c.tmin = parse_double(key, v, where);
  else if (key == "tmax") c.tmax = parse_double(key, v, where);
  else if (key == "tsteps") c.tsteps = parse_int(key, v, where);
  else if (key == "time_grid") c.time_grid = one_of(key, v, {"auto", "geometric", "linear"}, where);
  else if (key == "window_lo") c.window_lo = parse_double(key, v, where);
  else if (key == "window_hi") c.window_hi = parse_double(key, v, where);
  else if (key == "estimator") c.estimator = one_of(key, v, {"deviation", "finite-difference"}, where);
  else if (key == "fd_step") c.fd_step = parse_double(key, v, where);
  else if (key == "omega") c.omega = parse_double(key, v, where);
  else if (key == "inductor_shift") c.inductor_shift = parse_double(key, v, where);
  else if (key == "max_dim") c.max_dim = parse_long(key, v, where);
  else if (key == "fault") c.fault = one_of(key, v, {"none", "flip-damping-sign", "omit-compensation"}, where);
  else if (key == "out") {
    if (v.empty()) throw ValidationError(where + "key 'out' must not be empty");
    c.out = v;
  } else {
    throw ValidationError(where + "unknown key '" + key + "'");
  }
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError(where + "expected 'key = value', got '" + line + "'");
    apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1), where);
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  apply_config_text(cfg, ss.str(), path);
}

void RunConfig::validate() const {
  if (params.nx < 1 || params.ny < 1)
    throw ValidationError("lattice size must be at least 1x1 (nx=" + std::to_string(params.nx) +
                          ", ny=" + std::to_string(params.ny) + ")");
  params.validate();
  if (grid < 2) throw ValidationError("grid must be >= 2");
  if (!(tmin > 0.0)) throw ValidationError("tmin must be > 0");
  if (!(tmax > tmin)) throw ValidationError("tmax must exceed tmin");
  if (tsteps < 2) throw ValidationError("tsteps must be >= 2");
  if (window_lo >= 0.0 && window_hi >= 0.0 && !(window_hi > window_lo))
    throw ValidationError("window_hi must exceed window_lo");
  if (!(fd_step > 0.0)) throw ValidationError("fd_step must be > 0");
  if (!(omega > 0.0)) throw ValidationError("omega must be > 0");
  if (!(inductor_shift > 0.0)) throw ValidationError("inductor_shift must be > 0");
  if (max_dim < 2) throw ValidationError("max_dim must be >= 2");
  const long dim = 2L * params.nx * params.ny;
  if (dim > max_dim)
    throw ResourceError("lattice " + std::to_string(params.nx) + "x" + std::to_string(params.ny) + " needs dimension " +
                        std::to_string(dim) + ", above max_dim=" + std::to_string(max_dim));
}

std::string RunConfig::echo() const {
  std::ostringstream s;
  s << "lx=" << format_double(params.lx) << " ly=" << format_double(params.ly) << " tx=" << format_double(params.tx)
    << " ty=" << format_double(params.ty) << " m=" << format_double(params.m) << " lam=" << format_double(params.lam)
    << " nx=" << params.nx << " ny=" << params.ny << " boundary=" << to_string(params.boundary) << " grid=" << grid
    << " tmin=" << format_double(tmin) << " tmax=" << format_double(tmax) << " tsteps=" << tsteps
    << " time_grid=" << time_grid << " window_lo=" << format_double(resolved_window_lo())
    << " window_hi=" << format_double(resolved_window_hi()) << " estimator=" << estimator
    << " fd_step=" << format_double(fd_step) << " omega=" << format_double(omega)
    << " inductor_shift=" << format_double(inductor_shift) << " max_dim=" << max_dim << " fault=" << fault;
  return s.str();
}

}  // namespace dchern
