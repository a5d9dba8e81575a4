#pragma once

#include <cstdint>

#include "floqspread/types.hpp"

namespace floqspread {

// RMT anchors for the consecutive-spacing ratio statistic
inline constexpr double kPoissonRMean = 0.38629;
inline constexpr double kGoeRMean = 0.53590;

struct SpectralStats {
  RealVector phases;    // sorted quasi-energies in [0, 2pi)
  RealVector spacings;  // normalized to mean 1; D entries including the wrap-around
  double r_mean;
  double eta;
  Index degeneracies;   // raw spacings below 1e-12
};

// eigenphases of a unitary, mapped to [0, 2pi) and sorted ascending
RealVector quasienergies(const Matrix& u);

// <r~> over all D circular positions; exact-zero spacings contribute 0 terms
double r_statistic(const RealVector& sorted_phases);

// (r - r_P) / (r_GOE - r_P), not clamped
double eta(double r_mean);

SpectralStats spectral_stats(const Matrix& u);

struct SpacingHistogram {
  RealVector edges;        // bins + 1 edges over [0, max spacing]
  RealVector density;      // area-normalized
  RealVector poisson_ref;  // e^{-s} at bin centers
  RealVector wigner_ref;   // (pi s / 2) e^{-pi s^2 / 4} at bin centers
};

SpacingHistogram spacing_histogram(const RealVector& sorted_phases, int bins);

// L1 distances of the histogram density to the two reference curves
double histogram_l1_poisson(const SpacingHistogram& h);
double histogram_l1_wigner(const SpacingHistogram& h);

// Monte Carlo anchors: <r~> of i.i.d. uniform phases (circular convention)
// and of real-symmetric-matrix spectra restricted to the middle 50%.
double sample_poisson_r(std::size_t num_phases, std::uint64_t seed);
double sample_goe_r(int num_matrices, int dim, std::uint64_t seed);

}  // namespace floqspread
