#include "floqspread/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace floqspread {

namespace {

double sample_std(const RealVector& v) {
  const Index n = v.size();
  if (n < 2) throw std::invalid_argument("dispersion: need at least two coefficients");
  const double mean = v.mean();
  return std::sqrt((v.array() - mean).square().sum() / static_cast<double>(n - 1));
}

}  // namespace

RealVector spread_complexity(const AmplitudeTrajectory& traj) {
  const Index dk = traj.psi.rows();
  RealVector weights(dk);
  for (Index n = 0; n < dk; ++n) weights(n) = static_cast<double>(n);
  return (traj.psi.cwiseAbs2().transpose() * weights).eval();
}

RealVector spread_entropy(const AmplitudeTrajectory& traj) {
  const int steps = traj.steps();
  RealVector s(steps + 1);
  for (int j = 0; j <= steps; ++j) {
    double acc = 0.0;
    for (Index n = 0; n < traj.psi.rows(); ++n) {
      const double p = std::norm(traj.psi(n, j));
      if (p > 0) acc -= p * std::log(p);
    }
    s(j) = acc;
  }
  return s;
}

double saturation_value(const AmplitudeTrajectory& traj, int burn_in, int window) {
  if (burn_in < 0 || window < 1)
    throw std::invalid_argument("saturation_value: need burn_in >= 0 and window >= 1");
  if (traj.steps() + 1 < burn_in + window)
    throw std::invalid_argument("saturation_value: trajectory shorter than burn_in + window");
  const Index dk = traj.psi.rows();
  RealVector avg = RealVector::Zero(dk);
  for (int j = burn_in; j < burn_in + window; ++j) avg += traj.psi.col(j).cwiseAbs2();
  avg /= static_cast<double>(window);
  double out = 0.0;
  for (Index n = 0; n < dk; ++n) out += static_cast<double>(n) * avg(n);
  return out;
}

DispersionStats dispersion(const ArnoldiData& data) {
  if (data.dim_krylov() < 2)
    throw std::invalid_argument("dispersion: Krylov dimension must be >= 2");
  const RealVector sub = data.subdiagonal();
  const Index dk = data.dim_krylov();
  RealVector diag_re(dk), diag_im(dk);
  for (Index n = 0; n < dk; ++n) {
    diag_re(n) = data.hessenberg(n, n).real();
    diag_im(n) = data.hessenberg(n, n).imag();
  }
  return {sample_std(sub), sample_std(diag_re), sample_std(diag_im)};
}

std::vector<double> rescale(const std::vector<double>& values) {
  if (values.size() < 2)
    throw std::invalid_argument("rescale: need at least two values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi == *lo)
    throw std::invalid_argument("rescale: constant sequence has no range");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    out[i] = (values[i] - *lo) / (*hi - *lo);
  return out;
}

double slope_fit(const RealVector& c, int window) {
  if (window < 2) throw std::invalid_argument("slope_fit: window must be >= 2");
  if (c.size() < window)
    throw std::invalid_argument("slope_fit: series shorter than window");
  // least squares on j = 0..window-1 with free intercept
  const double n = window;
  double sj = 0, sjj = 0, sc = 0, sjc = 0;
  for (int j = 0; j < window; ++j) {
    sj += j;
    sjj += static_cast<double>(j) * j;
    sc += c(j);
    sjc += j * c(j);
  }
  return (n * sjc - sj * sc) / (n * sjj - sj * sj);
}

MagnetizationResult magnetization_series(const Matrix& u, const Vector& psi0,
                                         const Matrix& jz, int steps,
                                         int burn_in, int window) {
  if (u.rows() != u.cols() || jz.rows() != jz.cols() || u.rows() != jz.rows() ||
      psi0.size() != u.rows())
    throw std::invalid_argument("magnetization_series: dimension mismatch");
  if (steps < 0) throw std::invalid_argument("magnetization_series: steps must be >= 0");
  MagnetizationResult out;
  out.series.resize(steps + 1);
  Vector state = psi0;
  for (int j = 0;; ++j) {
    out.series(j) = state.dot(jz * state).real();
    if (j == steps) break;
    state = u * state;
  }
  if (window > 0) {
    if (steps + 1 < burn_in + window)
      throw std::invalid_argument("magnetization_series: series shorter than burn_in + window");
    out.average = out.series.segment(burn_in, window).mean();
  } else {
    out.average = out.series.mean();
  }
  return out;
}

}  // namespace floqspread
