#pragma once

#include <cstddef>
#include <vector>

namespace dchern {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double sse = 0.0;
  std::size_t n = 0;
};

// Ordinary least squares of y against x on [begin, end).
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y, std::size_t begin, std::size_t end);
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  return fit_line(x, y, 0, x.size());
}

// log y = p log t + a on the early segment, log y = -r t + b on the late one.
struct SegmentedFit {
  bool valid = false;
  std::size_t split = 0;  // first sample of the exponential segment
  double breakpoint = 0.0;
  double exponent = 0.0;  // p
  double rate = 0.0;      // r
  double sse = 0.0;
  double r2 = 0.0;
};

// Exhaustive scan of split points on the sample grid; logy = log of the series.
SegmentedFit fit_power_then_exponential(const std::vector<double>& t, const std::vector<double>& logy,
                                        std::size_t min_segment);

// y = c for t <= tb, y = c - r (t - tb) afterwards, tb scanned over samples.
struct HingeFit {
  bool valid = false;
  std::size_t split = 0;
  double breakpoint = 0.0;
  double level = 0.0;
  double rate = 0.0;
  double sse = 0.0;
};

HingeFit fit_flat_then_linear(const std::vector<double>& t, const std::vector<double>& y, std::size_t min_tail);

}  // namespace dchern
