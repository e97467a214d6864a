#include "dchern/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "dchern/errors.hpp"

namespace dchern {

namespace {

std::vector<int> cluster_ids(const CVec& w, double tol, int& degenerate) {
  const Eigen::Index n = w.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return w[a].real() < w[b].real(); });
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      if (w[order[b]].real() - w[order[a]].real() > tol) break;
      if (std::abs(w[order[a]] - w[order[b]]) <= tol) parent[find(order[a])] = find(order[b]);
    }
  }
  std::vector<int> ids(n, -1), remap(n, -1), sizes;
  int next = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    int r = find(static_cast<int>(i));
    if (remap[r] < 0) {
      remap[r] = next++;
      sizes.push_back(0);
    }
    ids[i] = remap[r];
    ++sizes[ids[i]];
  }
  degenerate = static_cast<int>(std::count_if(sizes.begin(), sizes.end(), [](int s) { return s > 1; }));
  return ids;
}

double gap_at(const ModelParams& p, Momentum k) {
  auto ev = bloch_damping_eigenvalues(p, k);
  return std::min(-2.0 * ev[0].real(), -2.0 * ev[1].real());
}

// Nelder-Mead on a 2D function; stops when the simplex diameter drops below xtol.
Momentum nelder_mead(const std::function<double(Momentum)>& f, Momentum x0, double step, double xtol) {
  std::array<Momentum, 3> s{x0, {x0.kx + step, x0.ky}, {x0.kx, x0.ky + step}};
  std::array<double, 3> v{f(s[0]), f(s[1]), f(s[2])};
  auto lerp = [](Momentum a, Momentum b, double t) {
    return Momentum{a.kx + t * (b.kx - a.kx), a.ky + t * (b.ky - a.ky)};
  };
  for (int it = 0; it < 10000; ++it) {
    std::array<int, 3> o{0, 1, 2};
    std::sort(o.begin(), o.end(), [&](int a, int b) { return v[a] < v[b]; });
    s = {s[o[0]], s[o[1]], s[o[2]]};
    v = {v[o[0]], v[o[1]], v[o[2]]};
    double diam = 0.0;
    for (int i = 1; i < 3; ++i) diam = std::max(diam, std::hypot(s[i].kx - s[0].kx, s[i].ky - s[0].ky));
    if (diam < xtol) break;
    const Momentum c{0.5 * (s[0].kx + s[1].kx), 0.5 * (s[0].ky + s[1].ky)};
    const Momentum xr = lerp(c, s[2], -1.0);
    const double fr = f(xr);
    if (fr < v[0]) {
      const Momentum xe = lerp(c, s[2], -2.0);
      const double fe = f(xe);
      if (fe < fr) {
        s[2] = xe;
        v[2] = fe;
      } else {
        s[2] = xr;
        v[2] = fr;
      }
    } else if (fr < v[1]) {
      s[2] = xr;
      v[2] = fr;
    } else {
      const Momentum xc = fr < v[2] ? lerp(c, s[2], -0.5) : lerp(c, s[2], 0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, v[2])) {
        s[2] = xc;
        v[2] = fc;
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i] = lerp(s[0], s[i], 0.5);
          v[i] = f(s[i]);
        }
      }
    }
  }
  int best = static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
  return s[best];
}

double wrap_pi(double k) {
  double w = std::remainder(k, 2.0 * M_PI);
  return w >= M_PI ? w - 2.0 * M_PI : w;
}

}  // namespace

SpectrumResult spectrum(const CMat& op) {
  EigenDecomposition e = eig(op, true, true);
  SpectrumResult s;
  s.eigenvalues = e.values;
  s.right = std::move(e.right);
  s.left = std::move(e.left);
  const Eigen::Index n = s.eigenvalues.size();
  s.biorth_norms.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) s.biorth_norms[i] = s.left.col(i).dot(s.right.col(i));
  s.cluster = cluster_ids(s.eigenvalues, kClusterTol, s.degenerate_clusters);
  if (n > 0) {
    const double scale = std::max(norm1(op), 1e-300);
    CMat rr = op * s.right - s.right * s.eigenvalues.asDiagonal();
    CMat lr = op.adjoint() * s.left - s.left * s.eigenvalues.conjugate().asDiagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
      s.right_residual = std::max(s.right_residual, rr.col(i).norm() / (scale * s.right.col(i).norm()));
      s.left_residual = std::max(s.left_residual, lr.col(i).norm() / (scale * s.left.col(i).norm()));
    }
  }
  return s;
}

double biorthogonality_defect(const SpectrumResult& s) {
  const CMat g = s.left.adjoint() * s.right;
  const Eigen::Index n = g.rows();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (s.cluster[i] == s.cluster[j]) continue;
      worst = std::max(worst, std::abs(g(i, j)) / (s.left.col(i).norm() * s.right.col(j).norm()));
    }
  }
  return worst;
}

GapReport liouvillian_gap_bloch(const ModelParams& p, int grid) {
  if (grid < 2) throw ValidationError("grid must be >= 2");
  GapReport r;
  r.grid = grid;
  r.gap = INFINITY;
  const double dk = 2.0 * M_PI / grid;
  for (int jy = 0; jy < grid; ++jy) {
    for (int jx = 0; jx < grid; ++jx) {
      const Momentum k{-M_PI + jx * dk, -M_PI + jy * dk};
      const double g = gap_at(p, k);
      if (g < r.gap) {
        r.gap = g;
        r.argmin = k;
      }
    }
  }
  const Momentum best = nelder_mead([&](Momentum k) { return gap_at(p, k); }, r.argmin, 0.5 * dk, 1e-10);
  const double g = gap_at(p, best);
  if (g < r.gap) {
    r.gap = g;
    r.argmin = {wrap_pi(best.kx), wrap_pi(best.ky)};
  }
  r.gap += 0.0;  // no -0 in output
  auto ev = bloch_damping_eigenvalues(p, r.argmin);
  r.argmin_eigenvalue = ev[0].real() > ev[1].real() ? ev[0] : ev[1];
  return r;
}

GapReport liouvillian_gap_real(const SpectrumResult& s) {
  GapReport r;
  r.gap = INFINITY;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double g = -2.0 * s.eigenvalues[i].real();
    if (g < r.gap) {
      r.gap = g;
      r.argmin_index = i;
      r.argmin_eigenvalue = s.eigenvalues[i];
    }
  }
  r.gap += 0.0;
  r.residual = std::max(s.right_residual, s.left_residual);
  return r;
}

GapReport liouvillian_gap_real(const LatticeOperator& op) { return liouvillian_gap_real(spectrum(op)); }

std::vector<BlochPoint> bloch_spectrum_scan(const ModelParams& p, int grid) {
  if (grid < 2) throw ValidationError("grid must be >= 2");
  std::vector<BlochPoint> out;
  out.reserve(2 * static_cast<std::size_t>(grid) * grid);
  const double dk = 2.0 * M_PI / grid;
  for (int jy = 0; jy < grid; ++jy) {
    for (int jx = 0; jx < grid; ++jx) {
      const Momentum k{-M_PI + jx * dk, -M_PI + jy * dk};
      for (const cplx& v : bloch_damping_eigenvalues(p, k)) out.push_back({k, v});
    }
  }
  return out;
}

CVec bloch_union(const ModelParams& p) {
  p.validate();
  CVec out(2 * p.cells());
  Eigen::Index i = 0;
  for (int jy = 0; jy < p.ny; ++jy) {
    for (int jx = 0; jx < p.nx; ++jx) {
      const Momentum k{2.0 * M_PI * jx / p.nx, 2.0 * M_PI * jy / p.ny};
      for (const cplx& v : bloch_damping_eigenvalues(p, k)) out[i++] = v;
    }
  }
  return out;
}

std::string to_string(Corner c) {
  switch (c) {
    case Corner::LowerLeft: return "lower-left";
    case Corner::LowerRight: return "lower-right";
    case Corner::UpperLeft: return "upper-left";
    case Corner::UpperRight: return "upper-right";
  }
  return "?";
}

LocalizationReport skin_localization(const CMat& right_vectors, int nx, int ny) {
  if (right_vectors.rows() != 2 * static_cast<Eigen::Index>(nx) * ny)
    throw ValidationError("skin_localization: vector length does not match the lattice");
  LocalizationReport rep;
  const Eigen::Index modes = right_vectors.cols();
  const double cx = 0.5 * (nx - 1), cy = 0.5 * (ny - 1);
  std::array<int, 4> counts{};
  for (Eigen::Index n = 0; n < modes; ++n) {
    double w = 0.0, sx = 0.0, sy = 0.0;
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        const Eigen::Index r = 2 * (static_cast<Eigen::Index>(iy) * nx + ix);
        const double a = std::norm(right_vectors(r, n)) + std::norm(right_vectors(r + 1, n));
        w += a;
        sx += a * ix;
        sy += a * iy;
      }
    }
    const double mx = sx / w, my = sy / w;
    rep.mean_ix.push_back(mx);
    rep.mean_iy.push_back(my);
    if (mx < cx && my < cy) ++counts[0];
    if (mx > cx && my < cy) ++counts[1];
    if (mx < cx && my > cy) ++counts[2];
    if (mx > cx && my > cy) ++counts[3];
  }
  for (int c = 0; c < 4; ++c) {
    rep.corner_fraction[c] = modes ? static_cast<double>(counts[c]) / modes : 0.0;
    if (rep.corner_fraction[c] > rep.dominant_fraction) {
      rep.dominant_fraction = rep.corner_fraction[c];
      rep.dominant = static_cast<Corner>(c);
    }
  }
  return rep;
}

}  // namespace dchern
