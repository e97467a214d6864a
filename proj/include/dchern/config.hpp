#pragma once

#include <string>
#include <vector>

#include "dchern/model.hpp"

namespace dchern {

struct RunConfig {
  ModelParams params = [] {
    ModelParams p;
    p.nx = 10;
    p.ny = 10;
    return p;
  }();
  int grid = 128;
  double tmin = 0.1;
  double tmax = 200.0;
  int tsteps = 160;
  std::string time_grid = "auto";  // auto | geometric | linear
  double window_lo = -1.0;         // classification window; negative = default
  double window_hi = -1.0;
  std::string estimator = "deviation";  // deviation | finite-difference
  double fd_step = 1e-2;
  double omega = 1.0;
  double inductor_shift = 1.0;
  long max_dim = kDefaultMaxDim;
  std::string fault = "none";  // verify hooks: none | flip-damping-sign | omit-compensation
  std::string out = "out";

  // Throws ValidationError (or ResourceError for the dense-matrix budget).
  void validate() const;
  // Classification window, resolved against tmax when unset.
  double resolved_window_lo() const { return window_lo >= 0.0 ? window_lo : tmax / 100.0; }
  double resolved_window_hi() const { return window_hi >= 0.0 ? window_hi : tmax; }
  // One-line key=value echo of every setting, in a fixed order.
  std::string echo() const;
};

const std::vector<std::string>& config_keys();

// Applies one key = value setting; `where` prefixes diagnostics.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& where);

// Flat "key = value" file, '#' comments and blank lines ignored.
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& source);
void apply_config_file(RunConfig& cfg, const std::string& path);

}  // namespace dchern
