#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dchern/fitting.hpp"
#include "dchern/model.hpp"

namespace dchern {

struct CorrelationState {
  CMat delta;  // Delta_ij = <c_i^dagger c_j>
  double t = 0.0;
};

// || X Ds + Ds X^H + 2 Mg ||_max
double steady_state_residual(const CMat& x, const CMat& ds, const CMat& mg);

enum class PropagatorMethod { Spectral, ScalingSquaring };
std::string to_string(PropagatorMethod m);

// exp(X t) either from the eigendecomposition X = V diag(w) V^-1 or, when
// the eigenvector matrix is too ill-conditioned, by scaling and squaring.
class Propagator {
 public:
  explicit Propagator(const CMat& x, double condition_threshold = 1e8);

  PropagatorMethod method() const { return method_; }
  double condition() const { return condition_; }  // 1-norm estimate of cond(V)
  Eigen::Index dim() const { return x_.rows(); }

  CMat exp(double t) const;
  // e^{Xt} D e^{X^H t}
  CMat evolve(const CMat& d0, double t) const;
  // Diagonal of 1/2 e^{Xt} e^{X^H t}, i.e. the deviation from a filled start.
  RVec half_filled_diagonal(double t) const;

 private:
  CMat x_;
  PropagatorMethod method_ = PropagatorMethod::Spectral;
  double condition_ = 0.0;
  CVec w_;
  CMat v_, vinv_;
};

// Two-sided propagation of a deviation state from its timestamp by t.
CorrelationState propagate(const CMat& x, const CorrelationState& d0, double t);

// Delta(t) = Ds + e^{Xt} (Delta0 - Ds) e^{X^H t} with Ds = I/2.
std::vector<CorrelationState> evolve_full(const CMat& x, const CMat& mg, const CMat& delta0,
                                          const std::vector<double>& times);

// Classical RK4 integration of dD/dt = X D + D X^H + 2 Mg (Mg may be empty
// for the homogeneous equation) from 0 to t with step close to dt.
CMat integrate_rk4(const CMat& x, const CMat& mg, const CMat& delta0, double t, double dt);

// n_x = Delta_{xA,xA} + Delta_{xB,xB}; throws ComputationError when the
// imaginary part exceeds 1e-8.
RVec site_occupations(const CMat& delta);

std::vector<double> geometric_grid(double tmin, double tmax, int n);
std::vector<double> linear_grid(double t0, double t1, int n);

enum class Estimator { Deviation, FiniteDifference };

struct SeriesOptions {
  Estimator estimator = Estimator::Deviation;
  double fd_step = 1e-2;
  std::optional<CMat> initial;  // defaults to the filled state I
  double condition_threshold = 1e8;
};

struct DampingSeries {
  int nx = 1;
  int ny = 1;
  std::vector<double> times;
  std::vector<double> R;
  RMat Rx;     // cells x times, cell index iy * nx + ix
  RVec n_inf;  // steady-state occupation per cell
  PropagatorMethod method = PropagatorMethod::Spectral;
};

DampingSeries deviation_series(const ModelParams& p, const std::vector<double>& times, const SeriesOptions& opt = {});

enum class DampingLaw { Algebraic, Exponential, Crossover };
std::string to_string(DampingLaw law);

struct ClassifyOptions {
  double r2_threshold = 0.95;   // both single fits below this -> Crossover
  double kink_ratio = 2.0;      // r * tb / |p| needed for a genuine crossover
  double seg_gain = 0.5;        // segmented 1 - R^2 must shrink by this factor
  std::size_t min_segment = 5;
  double floor = 1e-13;
};

struct DampingClassification {
  DampingLaw law = DampingLaw::Crossover;
  double exponent = 0.0;  // algebraic fit, R ~ t^p
  double rate = 0.0;      // exponential fit, R ~ e^{-r t}
  double r2_algebraic = 0.0;
  double r2_exponential = 0.0;
  SegmentedFit segmented;
  double breakpoint = 0.0;  // set for Crossover from a segmented fit
  double window_lo = 0.0;   // actual first and last sample used
  double window_hi = 0.0;
  std::size_t samples = 0;
  std::size_t trimmed = 0;  // samples dropped for R <= floor
};

// Fits on samples with lo <= t <= hi.
DampingClassification classify_damping(const std::vector<double>& times, const std::vector<double>& values, double lo,
                                       double hi, const ClassifyOptions& opt = {});
inline DampingClassification classify_damping(const DampingSeries& s, double lo, double hi,
                                              const ClassifyOptions& opt = {}) {
  return classify_damping(s.times, s.R, lo, hi, opt);
}

struct WavefrontOptions {
  double floor = 1e-13;
  double min_drop = 1.0;  // fitted decay beyond the breakpoint, in e-folds
  std::size_t min_tail = 3;
};

struct Wavefront {
  int nx = 1;
  int ny = 1;
  std::vector<std::optional<double>> t_cross;  // cell index iy * nx + ix
  DampingSeries series;                        // the lattice run
  DampingSeries reference;                     // periodic run, same size
  std::optional<double> at(int ix, int iy) const { return t_cross[static_cast<std::size_t>(iy) * nx + ix]; }
};

// Per-cell entry time into the boundary-driven exponential stage: the
// breakpoint of a flat-then-linear fit of log(|R_x| / R_periodic).
Wavefront wavefront_times(const ModelParams& p, const std::vector<double>& times, const WavefrontOptions& opt = {});

// Optional biorthogonal expansion of e^{Xt} D0 e^{X^H t} through left and
// right eigenvectors. Fragile for ill-conditioned bases; diagnostic only.
CMat biorthogonal_propagate(const CMat& x, const CMat& d0, double t);

}  // namespace dchern
