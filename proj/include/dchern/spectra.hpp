#pragma once

#include <array>
#include <string>
#include <vector>

#include "dchern/model.hpp"

namespace dchern {

struct SpectrumResult {
  CVec eigenvalues;
  CMat right;          // columns uR_n
  CMat left;           // columns uL_n with X^H uL_n = conj(lambda_n) uL_n
  CVec biorth_norms;   // <uL_n | uR_n>
  std::vector<int> cluster;  // eigenvalues within kClusterTol share an id
  int degenerate_clusters = 0;
  double right_residual = 0.0;  // max_n ||X uR - l uR|| / (||X||_1 ||uR||)
  double left_residual = 0.0;
};

inline constexpr double kClusterTol = 1e-9;

SpectrumResult spectrum(const CMat& op);
inline SpectrumResult spectrum(const LatticeOperator& op) { return spectrum(op.matrix); }

// Largest |<uL_m|uR_n>| / sqrt(|<uL_m|uL_m>| |<uR_n|uR_n>|) over pairs in
// different clusters.
double biorthogonality_defect(const SpectrumResult& s);

struct GapReport {
  double gap = 0.0;
  Momentum argmin{};         // Bloch scans
  Eigen::Index argmin_index = -1;  // real-space spectra
  cplx argmin_eigenvalue{};
  int grid = 0;
  double residual = 0.0;     // eigensolver residual, real-space only
};

// Liouvillian gap min 2 Re(-lambda) of X(k) over a grid x grid mesh of
// [-pi, pi)^2, refined by a Nelder-Mead search around the grid minimum.
GapReport liouvillian_gap_bloch(const ModelParams& p, int grid);
GapReport liouvillian_gap_real(const LatticeOperator& op);
GapReport liouvillian_gap_real(const SpectrumResult& s);

struct BlochPoint {
  Momentum k;
  cplx value;
};

// Both branches of X(k) on the grid x grid mesh, ordered by (jy, jx, branch).
std::vector<BlochPoint> bloch_spectrum_scan(const ModelParams& p, int grid);

// Both branches at the nx x ny allowed momenta 2 pi (jx/nx, jy/ny).
CVec bloch_union(const ModelParams& p);

enum class Corner { LowerLeft = 0, LowerRight = 1, UpperLeft = 2, UpperRight = 3 };
std::string to_string(Corner c);

struct LocalizationReport {
  std::vector<double> mean_ix;  // 0-based cell coordinates
  std::vector<double> mean_iy;
  // Fraction of modes whose mean position lies strictly inside each quadrant
  // relative to the lattice centre ((nx-1)/2, (ny-1)/2).
  std::array<double, 4> corner_fraction{};
  Corner dominant = Corner::UpperRight;
  double dominant_fraction = 0.0;
};

LocalizationReport skin_localization(const CMat& right_vectors, int nx, int ny);
inline LocalizationReport skin_localization(const SpectrumResult& s, int nx, int ny) {
  return skin_localization(s.right, nx, ny);
}

}  // namespace dchern
