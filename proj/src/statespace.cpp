#include "floqspread/statespace.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace floqspread {

namespace {

Matrix pauli_matrix(Axis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case Axis::X:
      m << 0, 1, 1, 0;
      break;
    case Axis::Y:
      m << 0, cplx(0, -1), cplx(0, 1), 0;
      break;
    case Axis::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

}  // namespace

SpinBasis::SpinBasis(int n) : num_sites(n) {
  if (n < 1 || n > 24)
    throw std::invalid_argument("SpinBasis: num_sites must be in [1, 24], got " +
                                std::to_string(n));
  dim = Index{1} << n;
}

Index reflect_bits(Index state, int num_sites) {
  Index r = 0;
  for (int i = 0; i < num_sites; ++i)
    r |= ((state >> i) & 1) << (num_sites - 1 - i);
  return r;
}

Matrix pauli_site_operator(const SpinBasis& basis, int site, Axis axis) {
  if (site < 1 || site > basis.num_sites)
    throw std::invalid_argument("pauli_site_operator: site " + std::to_string(site) +
                                " out of range 1.." + std::to_string(basis.num_sites));
  const Matrix sigma = pauli_matrix(axis);
  const Index left = Index{1} << (site - 1);
  const Index right = Index{1} << (basis.num_sites - site);
  Matrix op = Matrix::Zero(basis.dim, basis.dim);
  // kron(I_left, sigma, I_right) assembled block-wise
  for (Index a = 0; a < left; ++a)
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) {
        const cplx v = sigma(p, q);
        if (v == cplx(0, 0)) continue;
        const Index row0 = (a * 2 + p) * right;
        const Index col0 = (a * 2 + q) * right;
        for (Index c = 0; c < right; ++c) op(row0 + c, col0 + c) = v;
      }
  return op;
}

Matrix total_spin_operator(const SpinBasis& basis, Axis axis) {
  Matrix sum = Matrix::Zero(basis.dim, basis.dim);
  for (int site = 1; site <= basis.num_sites; ++site)
    sum += pauli_site_operator(basis, site, axis);
  return sum;
}

Matrix reflection_operator(const SpinBasis& basis) {
  Matrix r = Matrix::Zero(basis.dim, basis.dim);
  for (Index s = 0; s < basis.dim; ++s) r(reflect_bits(s, basis.num_sites), s) = 1.0;
  return r;
}

SectorBasis parity_sector(const SpinBasis& basis) {
  SectorBasis sector{basis, {}};
  for (Index s = 0; s < basis.dim; ++s) {
    const Index r = reflect_bits(s, basis.num_sites);
    if (s <= r) sector.orbits.emplace_back(s, r);
  }
  return sector;
}

Matrix SectorBasis::isometry() const {
  Matrix v = Matrix::Zero(parent.dim, dim());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index c = 0; c < dim(); ++c) {
    const auto [s, r] = orbits[c];
    if (s == r) {
      v(s, c) = 1.0;
    } else {
      v(s, c) = inv_sqrt2;
      v(r, c) = inv_sqrt2;
    }
  }
  return v;
}

Matrix project_operator(const Matrix& op, const SectorBasis& sector,
                        bool skip_symmetry_check) {
  if (op.rows() != sector.parent.dim || op.cols() != sector.parent.dim)
    throw std::invalid_argument("project_operator: operator dimension " +
                                std::to_string(op.rows()) + " does not match parent space " +
                                std::to_string(sector.parent.dim));
  if (!skip_symmetry_check) {
    // [M, R] via index permutation, no matrix product needed
    double comm = 0.0;
    const int n = sector.parent.num_sites;
    for (Index j = 0; j < op.cols(); ++j) {
      const Index rj = reflect_bits(j, n);
      for (Index i = 0; i < op.rows(); ++i)
        comm = std::max(comm, std::abs(op(i, j) - op(reflect_bits(i, n), rj)));
    }
    if (comm > 1e-10)
      throw std::invalid_argument(
          "project_operator: operator does not commute with reflection (max deviation " +
          std::to_string(comm) + "); pass skip_symmetry_check to override");
  }
  // contract through the <=2 nonzeros per isometry column
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Index d = sector.dim();
  auto weight = [&](Index c) { return sector.orbits[c].first == sector.orbits[c].second ? 1.0 : inv_sqrt2; };
  Matrix out(d, d);
  for (Index cc = 0; cc < d; ++cc) {
    const auto [t, rt] = sector.orbits[cc];
    const double wc = weight(cc);
    for (Index cr = 0; cr < d; ++cr) {
      const auto [s, rs] = sector.orbits[cr];
      const double wr = weight(cr);
      cplx acc = op(s, t);
      if (rs != s) acc += op(rs, t);
      if (rt != t) acc += op(s, rt);
      if (rs != s && rt != t) acc += op(rs, rt);
      out(cr, cc) = wr * wc * acc;
    }
  }
  return out;
}

AngularMomentum angular_momentum_operators(double j) {
  const double two_j = 2.0 * j;
  if (j < 0 || std::abs(two_j - std::round(two_j)) > 1e-9)
    throw std::invalid_argument("angular_momentum_operators: 2j must be a non-negative integer");
  const Index dim = static_cast<Index>(std::llround(two_j)) + 1;
  Matrix jz = Matrix::Zero(dim, dim);
  Matrix jplus = Matrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const double m = j - static_cast<double>(i);
    jz(i, i) = m;
    if (i > 0) jplus(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const Matrix jminus = jplus.adjoint();
  AngularMomentum out;
  out.jx = (jplus + jminus) / 2.0;
  out.jy = (jplus - jminus) / cplx(0, 2);
  out.jz = jz;
  return out;
}

}  // namespace floqspread
