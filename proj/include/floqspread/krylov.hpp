#pragma once

#include <cstdint>

#include "floqspread/floquet.hpp"
#include "floqspread/types.hpp"

namespace floqspread {

struct LanczosData {
  RealVector a;       // diagonal coefficients, size D_K
  RealVector b;       // off-diagonal coefficients, size D_K - 1, all > 0
  Matrix basis;       // dim x D_K, orthonormal columns
  bool halted_early;  // residual fell below tolerance before exhausting the space

  Index dim_krylov() const { return a.size(); }
  Matrix tridiagonal() const;
};

struct ArnoldiData {
  Matrix hessenberg;  // D_K x D_K, subdiagonal real >= 0
  Matrix basis;       // dim x D_K, orthonormal columns
  bool halted_early;

  Index dim_krylov() const { return hessenberg.rows(); }
  RealVector subdiagonal() const;
};

// Krylov-basis amplitudes psi_n^j; column j is the state after j kicks.
struct AmplitudeTrajectory {
  Matrix psi;               // D_K x (steps+1)
  RealVector residual_prob; // 1 - sum_n |psi_n^j|^2 per step (nonzero only if halted_early)

  int steps() const { return static_cast<int>(psi.cols()) - 1; }
};

// Three-term recursion with full reorthogonalization. Halts when the residual
// drops below tol * ||H||_F or the space is exhausted.
LanczosData lanczos(const Matrix& h, const Vector& psi0, double tol = 1e-12);

// Classical Gram-Schmidt with one full re-pass per step. The new basis
// vector's phase is fixed by h_{n,n-1} real positive.
ArnoldiData arnoldi(const Matrix& u, const Vector& psi0, double tol = 1e-12);
ArnoldiData arnoldi(const FloquetOperator& u, const Vector& psi0, double tol = 1e-12);

// psi_n^j = <K_n| U^j |psi0> by repeated matvec and projection
AmplitudeTrajectory amplitudes_direct(const Matrix& u, const ArnoldiData& data,
                                      const Vector& psi0, int steps);

// Hessenberg difference equations psi^{j+1} = h psi^j, psi_n^0 = delta_n0.
// Never touches Hilbert-space vectors.
AmplitudeTrajectory amplitudes_chain(const ArnoldiData& data, int steps);

struct HighFreqComparison {
  RealVector subdiag_rel_dev;  // |h_{n,n-1}/T - b_n| / b_n
  RealVector diag_dev;         // |(1 - h_{n,n}) / (iT) - a_n|
  double median_subdiag_rel;
  Index compared;
};

// Arnoldi on exp(-i H0 T) exp(-i V T) vs Lanczos on H0 + V from the same
// state; compares the first min(D_K, 50) coefficients.
HighFreqComparison highfreq_comparison(const Matrix& h0, const Matrix& v,
                                       const Vector& psi0, double T);

Vector uniform_state(Index dim);
Vector haar_random_state(Index dim, std::uint64_t seed);

}  // namespace floqspread
