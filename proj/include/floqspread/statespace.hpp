#pragma once

#include <utility>
#include <vector>

#include "floqspread/types.hpp"

namespace floqspread {

enum class Axis { X, Y, Z };

// Computational basis of an N-site spin-1/2 chain. Site i (1-based) is the
// i-th tensor factor, so site 1 maps to the most significant bit of the basis
// index; bit value 0 is spin up (sigma^z = +1).
struct SpinBasis {
  int num_sites;
  Index dim;

  explicit SpinBasis(int n);
};

// index of the site-reflected basis state (i -> N+1-i, i.e. bit reversal)
Index reflect_bits(Index state, int num_sites);

// Positive-parity subspace of the chain reflection symmetry. Columns of the
// isometry are one normalized symmetric vector per reflection orbit, ordered
// by the smaller basis index of the orbit.
struct SectorBasis {
  SpinBasis parent;
  std::vector<std::pair<Index, Index>> orbits;  // (s, reflect(s)) with s <= reflect(s)

  Index dim() const { return static_cast<Index>(orbits.size()); }
  Matrix isometry() const;
};

Matrix pauli_site_operator(const SpinBasis& basis, int site, Axis axis);
Matrix total_spin_operator(const SpinBasis& basis, Axis axis);
Matrix reflection_operator(const SpinBasis& basis);
SectorBasis parity_sector(const SpinBasis& basis);

// V^dag M V restricted to the sector. Checks [M, R] = 0 (max element 1e-10)
// unless skip_symmetry_check is set.
Matrix project_operator(const Matrix& op, const SectorBasis& sector,
                        bool skip_symmetry_check = false);

struct AngularMomentum {
  Matrix jx, jy, jz;
};

// spin-j matrices in the J_z eigenbasis, J_z = diag(j, j-1, ..., -j)
AngularMomentum angular_momentum_operators(double j);

}  // namespace floqspread
