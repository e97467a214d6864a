#include "dchern/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "dchern/errors.hpp"
#include "dchern/spectra.hpp"

namespace dchern {

double steady_state_residual(const CMat& x, const CMat& ds, const CMat& mg) {
  if (x.rows() != ds.rows() || x.rows() != mg.rows() || x.cols() != ds.cols() || x.cols() != mg.cols())
    throw ValidationError("steady_state_residual: dimension mismatch");
  return max_abs(x * ds + ds * x.adjoint() + 2.0 * mg);
}

std::string to_string(PropagatorMethod m) {
  return m == PropagatorMethod::Spectral ? "spectral" : "scaling-squaring";
}

Propagator::Propagator(const CMat& x, double condition_threshold) : x_(x) {
  if (x.rows() != x.cols()) throw ValidationError("Propagator: matrix is not square");
  EigenDecomposition e = eig(x, false, true);
  Eigen::PartialPivLU<CMat> lu(e.right);
  vinv_ = lu.inverse();
  condition_ = norm1(e.right) * norm1(vinv_);
  if (std::isfinite(condition_) && condition_ < condition_threshold) {
    method_ = PropagatorMethod::Spectral;
    w_ = std::move(e.values);
    v_ = std::move(e.right);
  } else {
    method_ = PropagatorMethod::ScalingSquaring;
    vinv_.resize(0, 0);
  }
}

CMat Propagator::exp(double t) const {
  if (t < 0.0) throw ValidationError("propagation time must be >= 0");
  if (method_ == PropagatorMethod::ScalingSquaring) return expm(x_ * t);
  const CVec e = (w_ * t).array().exp();
  return (v_ * e.asDiagonal()) * vinv_;
}

CMat Propagator::evolve(const CMat& d0, double t) const {
  const CMat u = exp(t);
  return u * d0 * u.adjoint();
}

RVec Propagator::half_filled_diagonal(double t) const { return 0.5 * exp(t).rowwise().squaredNorm(); }

CorrelationState propagate(const CMat& x, const CorrelationState& d0, double t) {
  if (t < 0.0) throw ValidationError("propagate: t must be >= 0");
  if (t == 0.0) return d0;
  Propagator prop(x);
  return {prop.evolve(d0.delta, t), d0.t + t};
}

std::vector<CorrelationState> evolve_full(const CMat& x, const CMat& mg, const CMat& delta0,
                                          const std::vector<double>& times) {
  const CMat ds = 0.5 * CMat::Identity(x.rows(), x.cols());
  const double res = steady_state_residual(x, ds, mg);
  if (res > 1e-10 * std::max(1.0, max_abs(x)))
    throw ValidationError("evolve_full: I/2 is not stationary for these dissipators (residual " +
                          std::to_string(res) + ")");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw ValidationError("evolve_full: times must be increasing");
  Propagator prop(x);
  const CMat dev = delta0 - ds;
  std::vector<CorrelationState> out;
  out.reserve(times.size());
  for (double t : times) out.push_back({ds + prop.evolve(dev, t), t});
  return out;
}

CMat integrate_rk4(const CMat& x, const CMat& mg, const CMat& delta0, double t, double dt) {
  if (t < 0.0 || dt <= 0.0) throw ValidationError("integrate_rk4: need t >= 0 and dt > 0");
  const bool driven = mg.size() > 0;
  const CMat xh = x.adjoint();
  auto f = [&](const CMat& d) {
    CMat r = x * d + d * xh;
    if (driven) r += 2.0 * mg;
    return r;
  };
  const long steps = std::max(1L, static_cast<long>(std::ceil(t / dt - 1e-9)));
  const double h = t / steps;
  CMat d = delta0;
  for (long s = 0; s < steps && t > 0.0; ++s) {
    const CMat k1 = f(d);
    const CMat k2 = f(d + 0.5 * h * k1);
    const CMat k3 = f(d + 0.5 * h * k2);
    const CMat k4 = f(d + h * k3);
    d += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return d;
}

RVec site_occupations(const CMat& delta) {
  if (delta.rows() != delta.cols() || delta.rows() % 2 != 0)
    throw ValidationError("site_occupations: expected a square matrix of even dimension");
  const Eigen::Index cells = delta.rows() / 2;
  RVec n(cells);
  for (Eigen::Index c = 0; c < cells; ++c) {
    const cplx v = delta(2 * c, 2 * c) + delta(2 * c + 1, 2 * c + 1);
    if (std::abs(v.imag()) > 1e-8)
      throw ComputationError("site_occupations: occupation of cell " + std::to_string(c) +
                             " has imaginary part " + std::to_string(v.imag()));
    n[c] = v.real();
  }
  return n;
}

std::vector<double> geometric_grid(double tmin, double tmax, int n) {
  if (!(tmin > 0.0) || !(tmax > tmin) || n < 2) throw ValidationError("geometric_grid: need 0 < tmin < tmax, n >= 2");
  std::vector<double> t(n);
  const double r = std::log(tmax / tmin) / (n - 1);
  for (int i = 0; i < n; ++i) t[i] = tmin * std::exp(r * i);
  t.back() = tmax;
  return t;
}

std::vector<double> linear_grid(double t0, double t1, int n) {
  if (!(t1 > t0) || t0 < 0.0 || n < 2) throw ValidationError("linear_grid: need 0 <= t0 < t1, n >= 2");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t0 + (t1 - t0) * i / (n - 1);
  return t;
}

DampingSeries deviation_series(const ModelParams& p, const std::vector<double>& times, const SeriesOptions& opt) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) throw ValidationError("deviation_series: times must be >= 0");
    if (i && !(times[i] > times[i - 1])) throw ValidationError("deviation_series: times must be increasing");
  }
  const LatticeOperator x = real_space_damping_matrix(p);
  const Eigen::Index dim = x.dim();
  const int cells = p.cells();
  const CMat ds = 0.5 * CMat::Identity(dim, dim);
  bool filled = true;
  CMat dev;
  if (opt.initial) {
    if (opt.initial->rows() != dim || opt.initial->cols() != dim)
      throw ValidationError("deviation_series: initial state has the wrong dimension");
    dev = *opt.initial - ds;
    filled = max_abs(dev - ds) == 0.0;
  }
  Propagator prop(x.matrix, opt.condition_threshold);

  auto deviation = [&](double t) -> RVec {
    RVec d(cells);
    if (filled) {
      const RVec diag = prop.half_filled_diagonal(t);
      for (int c = 0; c < cells; ++c) d[c] = diag[2 * c] + diag[2 * c + 1];
    } else {
      d = site_occupations(prop.evolve(dev, t));
    }
    return d;
  };

  DampingSeries s;
  s.nx = p.nx;
  s.ny = p.ny;
  s.times = times;
  s.method = prop.method();
  s.n_inf = RVec::Ones(cells);
  s.Rx.resize(cells, static_cast<Eigen::Index>(times.size()));
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    RVec r;
    if (opt.estimator == Estimator::Deviation) {
      r = deviation(t);
    } else {
      const double h = opt.fd_step;
      if (!(h > 0.0)) throw ValidationError("deviation_series: fd_step must be > 0");
      r = t >= h ? RVec((deviation(t) - deviation(t - h)) / h) : RVec((deviation(t + h) - deviation(t)) / h);
    }
    s.Rx.col(static_cast<Eigen::Index>(i)) = r;
    s.R.push_back(std::sqrt(r.squaredNorm() / cells));
  }
  return s;
}

std::string to_string(DampingLaw law) {
  switch (law) {
    case DampingLaw::Algebraic: return "Algebraic";
    case DampingLaw::Exponential: return "Exponential";
    case DampingLaw::Crossover: return "Crossover";
  }
  return "?";
}

DampingClassification classify_damping(const std::vector<double>& times, const std::vector<double>& values, double lo,
                                       double hi, const ClassifyOptions& opt) {
  if (times.size() != values.size()) throw ValidationError("classify_damping: size mismatch");
  DampingClassification c;
  std::vector<double> t, logt, logr;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < lo || times[i] > hi) continue;
    if (!(values[i] > opt.floor) || !(times[i] > 0.0)) {
      ++c.trimmed;
      continue;
    }
    t.push_back(times[i]);
    logt.push_back(std::log(times[i]));
    logr.push_back(std::log(values[i]));
  }
  c.samples = t.size();
  if (c.samples < 10)
    throw ValidationError("classify_damping: window holds " + std::to_string(c.samples) +
                          " usable samples, need >= 10");
  c.window_lo = t.front();
  c.window_hi = t.back();
  const LineFit alg = fit_line(logt, logr);
  const LineFit ex = fit_line(t, logr);
  c.exponent = alg.slope;
  c.r2_algebraic = alg.r2;
  c.rate = -ex.slope;
  c.r2_exponential = ex.r2;
  c.segmented = fit_power_then_exponential(t, logr, opt.min_segment);

  const double best = std::max(alg.r2, ex.r2);
  const SegmentedFit& s = c.segmented;
  const bool seg_wins = s.valid && s.r2 >= opt.r2_threshold && s.rate > 0.0 &&
                        s.rate * s.breakpoint >= opt.kink_ratio * std::abs(s.exponent) &&
                        (1.0 - s.r2) <= opt.seg_gain * (1.0 - best);
  if (seg_wins || best < opt.r2_threshold) {
    c.law = DampingLaw::Crossover;
    c.breakpoint = s.valid ? s.breakpoint : 0.0;
  } else {
    c.law = alg.r2 >= ex.r2 ? DampingLaw::Algebraic : DampingLaw::Exponential;
  }
  return c;
}

Wavefront wavefront_times(const ModelParams& p, const std::vector<double>& times, const WavefrontOptions& opt) {
  Wavefront w;
  w.nx = p.nx;
  w.ny = p.ny;
  w.series = deviation_series(p, times);
  if (p.boundary == Boundary::Periodic) {
    w.reference = w.series;
  } else {
    ModelParams q = p;
    q.boundary = Boundary::Periodic;
    w.reference = deviation_series(q, times);
  }
  const int cells = p.cells();
  w.t_cross.assign(cells, std::nullopt);
  for (int c = 0; c < cells; ++c) {
    std::vector<double> t, y;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double rx = std::abs(w.series.Rx(c, static_cast<Eigen::Index>(i)));
      const double ref = std::abs(w.reference.Rx(c, static_cast<Eigen::Index>(i)));
      if (rx <= opt.floor || ref <= opt.floor) continue;
      t.push_back(times[i]);
      y.push_back(std::log(rx / ref));
    }
    const HingeFit h = fit_flat_then_linear(t, y, opt.min_tail);
    if (!h.valid) continue;
    if (h.rate * (t.back() - h.breakpoint) < opt.min_drop) continue;
    w.t_cross[c] = h.breakpoint;
  }
  return w;
}

CMat biorthogonal_propagate(const CMat& x, const CMat& d0, double t) {
  if (t < 0.0) throw ValidationError("biorthogonal_propagate: t must be >= 0");
  const SpectrumResult s = spectrum(x);
  CVec coef(s.eigenvalues.size());
  for (Eigen::Index n = 0; n < coef.size(); ++n) coef[n] = std::exp(s.eigenvalues[n] * t) / s.biorth_norms[n];
  // e^{Xt} = sum_n e^{l_n t} uR_n uL_n^H / (uL_n^H uR_n)
  const CMat u = s.right * coef.asDiagonal() * s.left.adjoint();
  return u * d0 * u.adjoint();
}

}  // namespace dchern
