#include "dchern/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dchern/errors.hpp"

namespace dchern {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y, std::size_t begin, std::size_t end) {
  if (x.size() != y.size() || end > x.size() || begin > end) throw ValidationError("fit_line: bad range");
  LineFit f;
  f.n = end - begin;
  if (f.n < 2) return f;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= f.n;
  my /= f.n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = begin; i < end; ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    f.sse += e * e;
  }
  f.r2 = syy > 0.0 ? 1.0 - f.sse / syy : 1.0;
  return f;
}

SegmentedFit fit_power_then_exponential(const std::vector<double>& t, const std::vector<double>& logy,
                                        std::size_t min_segment) {
  SegmentedFit best;
  const std::size_t n = t.size();
  if (logy.size() != n) throw ValidationError("fit_power_then_exponential: size mismatch");
  min_segment = std::max<std::size_t>(min_segment, 2);
  if (n < 2 * min_segment) return best;
  std::vector<double> logt(n);
  for (std::size_t i = 0; i < n; ++i) logt[i] = std::log(t[i]);
  double mean = 0.0, sst = 0.0;
  for (double v : logy) mean += v / n;
  for (double v : logy) sst += (v - mean) * (v - mean);
  best.sse = std::numeric_limits<double>::infinity();
  for (std::size_t b = min_segment; b + min_segment <= n; ++b) {
    const LineFit p = fit_line(logt, logy, 0, b);
    const LineFit e = fit_line(t, logy, b, n);
    const double sse = p.sse + e.sse;
    if (sse < best.sse) {
      best.valid = true;
      best.sse = sse;
      best.split = b;
      best.breakpoint = t[b];
      best.exponent = p.slope;
      best.rate = -e.slope;
    }
  }
  best.r2 = sst > 0.0 ? 1.0 - best.sse / sst : 1.0;
  return best;
}

HingeFit fit_flat_then_linear(const std::vector<double>& t, const std::vector<double>& y, std::size_t min_tail) {
  HingeFit best;
  const std::size_t n = t.size();
  if (y.size() != n) throw ValidationError("fit_flat_then_linear: size mismatch");
  if (n < min_tail + 1) return best;
  best.sse = std::numeric_limits<double>::infinity();
  std::vector<double> u(n);
  for (std::size_t b = 0; b + min_tail < n; ++b) {
    for (std::size_t i = 0; i < n; ++i) u[i] = std::max(t[i] - t[b], 0.0);
    const LineFit f = fit_line(u, y);
    if (f.sse < best.sse) {
      best.valid = true;
      best.sse = f.sse;
      best.split = b;
      best.breakpoint = t[b];
      best.level = f.intercept;
      best.rate = -f.slope;
    }
  }
  return best;
}

}  // namespace dchern
