#pragma once

#include <vector>

#include "floqspread/krylov.hpp"
#include "floqspread/types.hpp"

namespace floqspread {

// C_j = sum_n n |psi_n^j|^2
RealVector spread_complexity(const AmplitudeTrajectory& traj);

// S_j = -sum_n |psi_n^j|^2 ln |psi_n^j|^2, with 0 ln 0 = 0
RealVector spread_entropy(const AmplitudeTrajectory& traj);

// Time-averaged complexity sum_n n avg|psi_n|^2 over j in
// [burn_in, burn_in + window). Throws if the trajectory is shorter.
double saturation_value(const AmplitudeTrajectory& traj, int burn_in, int window);

struct DispersionStats {
  double sigma_sub;      // std dev of h_{n,n-1}
  double sigma_diag_re;  // std dev of Re h_{n,n}
  double sigma_diag_im;  // std dev of Im h_{n,n}
};

// sample standard deviations (ddof = 1)
DispersionStats dispersion(const ArnoldiData& data);

// affine map to [0,1]: min -> 0, max -> 1; throws on a constant sequence
std::vector<double> rescale(const std::vector<double>& values);

// least-squares slope of C_j vs j over j in [0, window)
double slope_fit(const RealVector& c, int window);

struct MagnetizationResult {
  RealVector series;  // <psi_j| Jz |psi_j>, j = 0..steps
  double average;
};

// burn_in/window = 0 averages the whole series
MagnetizationResult magnetization_series(const Matrix& u, const Vector& psi0,
                                         const Matrix& jz, int steps,
                                         int burn_in = 0, int window = 0);

}  // namespace floqspread
