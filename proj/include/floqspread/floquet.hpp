#pragma once

#include <string>
#include <variant>
#include <vector>

#include "floqspread/statespace.hpp"
#include "floqspread/types.hpp"

namespace floqspread {

// Kicked Ising chain drive: J sigma^z sigma^z coupling, field of magnitude b
// tilted by phi from the z axis, all-to-all z coupling gamma, kick period T.
struct DriveParams {
  double J = 1.0;
  double b = 1.0;
  double phi = 1.0471975511965976;  // pi/3
  double gamma = 0.0;
  double T = 1.0;
};

// Kicked Bose-Hubbard dimer in the spin-j representation (N = 2j bosons).
struct DimerParams {
  double j = 100.0;
  double k = 3.0;
  double mu = 3.0;
  double T = 1.0;
};

struct SelfDualParams {
  int num_sites = 8;
};

struct FloquetOperator {
  Matrix matrix;
  std::string space;  // "full" | "positive-parity" | "spin-j"
  std::variant<DriveParams, DimerParams, SelfDualParams> params;

  Index dim() const { return matrix.rows(); }
};

// Tensor product of per-site rotations exp(-i T b (sin phi sx + cos phi sz)).
Matrix kick_unitary(const SpinBasis& basis, double b, double phi, double T);

// Diagonal phases exp(-i T [J sum z_i z_{i+1} + gamma sum_{i<j} z_i z_j]),
// open boundary (coupling sum runs over i = 1..N-1).
Matrix ising_diagonal_unitary(const SpinBasis& basis, double J, double gamma, double T);

FloquetOperator build_kicked_ising(const DriveParams& params, const SpinBasis& basis);
FloquetOperator build_kicked_ising(const DriveParams& params, const SectorBasis& sector);

// Self-dual point h_x = h_z = J = pi/4, x-kick applied after the diagonal factor.
FloquetOperator build_self_dual(int num_sites);
FloquetOperator build_self_dual(int num_sites, const SectorBasis& sector);

FloquetOperator build_dimer_floquet(const DimerParams& params);

// exp(-i t H) for Hermitian H via eigendecomposition
Matrix hermitian_expm(const Matrix& h, double t);

// {psi_0, U psi_0, ..., U^steps psi_0}
std::vector<Vector> evolve(const FloquetOperator& op, const Vector& psi0, int steps);

}  // namespace floqspread
