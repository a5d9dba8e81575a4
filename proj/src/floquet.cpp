#include "floqspread/floquet.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace floqspread {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

Matrix single_site_kick(double b, double phi, double T) {
  // exp(-i theta n.sigma) = cos(theta) I - i sin(theta) n.sigma
  const double theta = T * b;
  const cplx c = std::cos(theta);
  const cplx is = cplx(0, std::sin(theta));
  Matrix k(2, 2);
  k(0, 0) = c - is * std::cos(phi);
  k(0, 1) = -is * std::sin(phi);
  k(1, 0) = -is * std::sin(phi);
  k(1, 1) = c + is * std::cos(phi);
  return k;
}

int popcount(Index v) { return std::popcount(static_cast<std::uint64_t>(v)); }

// adjacent-pair Ising energy sum_{i=1}^{N-1} z_i z_{i+1} of a bitstring
double bond_energy(Index s, int num_sites) {
  // z z' = +1 when adjacent bits agree; count disagreements in s ^ (s >> 1)
  const Index adjacent_flips = (s ^ (s >> 1)) & ((Index{1} << (num_sites - 1)) - 1);
  const int flips = popcount(adjacent_flips);
  return static_cast<double>((num_sites - 1) - 2 * flips);
}

double pair_energy(Index s, int num_sites) {
  // sum_{i<j} z_i z_j = ((sum_i z_i)^2 - N) / 2
  const double total_z = static_cast<double>(num_sites - 2 * popcount(s));
  return (total_z * total_z - num_sites) / 2.0;
}

RealVector ising_phase_angles(const SpinBasis& basis, double J, double gamma, double T) {
  RealVector angles(basis.dim);
  for (Index s = 0; s < basis.dim; ++s) {
    double e = J * bond_energy(s, basis.num_sites);
    if (gamma != 0.0) e += gamma * pair_energy(s, basis.num_sites);
    angles(s) = T * e;
  }
  return angles;
}

// <s| kron_i k2 |t> = k00^n00 * k11^n11 * k01^hamming(s,t); k2 must be symmetric
struct KickEntry {
  std::vector<cplx> pow00, pow11, pow01;
  Index mask;
  int num_sites;

  KickEntry(const Matrix& k2, int n) : num_sites(n) {
    mask = (Index{1} << n) - 1;
    pow00.resize(n + 1);
    pow11.resize(n + 1);
    pow01.resize(n + 1);
    pow00[0] = pow11[0] = pow01[0] = 1.0;
    for (int i = 1; i <= n; ++i) {
      pow00[i] = pow00[i - 1] * k2(0, 0);
      pow11[i] = pow11[i - 1] * k2(1, 1);
      pow01[i] = pow01[i - 1] * k2(0, 1);
    }
  }

  cplx operator()(Index s, Index t) const {
    const int n11 = popcount(s & t);
    const int nflip = popcount(s ^ t);
    const int n00 = num_sites - n11 - nflip;
    return pow00[n00] * pow11[n11] * pow01[nflip];
  }
};

// sector-restricted U = diag(exp(-i angles)) * kron_i k2 without forming the
// full-space matrix
Matrix sector_kicked_product(const SectorBasis& sector, const RealVector& angles,
                             const Matrix& k2) {
  const KickEntry kick(k2, sector.parent.num_sites);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Index d = sector.dim();
  Matrix out(d, d);
  for (Index cc = 0; cc < d; ++cc) {
    const auto [t, rt] = sector.orbits[cc];
    const double wc = (t == rt) ? 1.0 : inv_sqrt2;
    for (Index cr = 0; cr < d; ++cr) {
      const auto [s, rs] = sector.orbits[cr];
      const double wr = (s == rs) ? 1.0 : inv_sqrt2;
      cplx acc = std::exp(cplx(0, -angles(s))) * kick(s, t);
      if (rs != s) acc += std::exp(cplx(0, -angles(rs))) * kick(rs, t);
      if (rt != t) acc += std::exp(cplx(0, -angles(s))) * kick(s, rt);
      if (rs != s && rt != t) acc += std::exp(cplx(0, -angles(rs))) * kick(rs, rt);
      out(cr, cc) = wr * wc * acc;
    }
  }
  return out;
}

void check_drive(const DriveParams& p) {
  if (p.T <= 0) throw std::invalid_argument("DriveParams: T must be > 0");
  if (p.phi < 0 || p.phi > std::numbers::pi / 2 + 1e-12)
    throw std::invalid_argument("DriveParams: phi must lie in [0, pi/2]");
}

}  // namespace

Matrix kick_unitary(const SpinBasis& basis, double b, double phi, double T) {
  const Matrix k2 = single_site_kick(b, phi, T);
  Matrix k = Matrix::Ones(1, 1);
  for (int i = 0; i < basis.num_sites; ++i) {
    Matrix next(k.rows() * 2, k.cols() * 2);
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        next.block(p * k.rows(), q * k.cols(), k.rows(), k.cols()) = k2(p, q) * k;
    k = std::move(next);
  }
  return k;
}

Matrix ising_diagonal_unitary(const SpinBasis& basis, double J, double gamma, double T) {
  const RealVector angles = ising_phase_angles(basis, J, gamma, T);
  Matrix d = Matrix::Zero(basis.dim, basis.dim);
  for (Index s = 0; s < basis.dim; ++s) d(s, s) = std::exp(cplx(0, -angles(s)));
  return d;
}

FloquetOperator build_kicked_ising(const DriveParams& params, const SpinBasis& basis) {
  check_drive(params);
  const RealVector angles = ising_phase_angles(basis, params.J, params.gamma, params.T);
  Matrix u = kick_unitary(basis, params.b, params.phi, params.T);
  for (Index s = 0; s < basis.dim; ++s) u.row(s) *= std::exp(cplx(0, -angles(s)));
  return {std::move(u), "full", params};
}

FloquetOperator build_kicked_ising(const DriveParams& params, const SectorBasis& sector) {
  check_drive(params);
  const RealVector angles =
      ising_phase_angles(sector.parent, params.J, params.gamma, params.T);
  const Matrix k2 = single_site_kick(params.b, params.phi, params.T);
  return {sector_kicked_product(sector, angles, k2), "positive-parity", params};
}

FloquetOperator build_self_dual(int num_sites) {
  if (num_sites < 2) throw std::invalid_argument("build_self_dual: need num_sites >= 2");
  const SpinBasis basis(num_sites);
  // diagonal factor carries both the coupling and the z field
  RealVector angles(basis.dim);
  for (Index s = 0; s < basis.dim; ++s) {
    const double mz = static_cast<double>(num_sites - 2 * popcount(s));
    angles(s) = kQuarterPi * (bond_energy(s, num_sites) + mz);
  }
  Matrix u = kick_unitary(basis, kQuarterPi, std::numbers::pi / 2, 1.0);
  for (Index s = 0; s < basis.dim; ++s) u.col(s) *= std::exp(cplx(0, -angles(s)));
  return {std::move(u), "full", SelfDualParams{num_sites}};
}

FloquetOperator build_self_dual(int num_sites, const SectorBasis& sector) {
  if (sector.parent.num_sites != num_sites)
    throw std::invalid_argument("build_self_dual: sector built over a different N");
  FloquetOperator full = build_self_dual(num_sites);
  Matrix projected = project_operator(full.matrix, sector);
  return {std::move(projected), "positive-parity", SelfDualParams{num_sites}};
}

FloquetOperator build_dimer_floquet(const DimerParams& params) {
  const double two_j = 2.0 * params.j;
  if (two_j < 1 || std::abs(two_j - std::round(two_j)) > 1e-9)
    throw std::invalid_argument("build_dimer_floquet: 2j must be a positive integer");
  if (params.T <= 0) throw std::invalid_argument("build_dimer_floquet: T must be > 0");
  const auto [jx, jy, jz] = angular_momentum_operators(params.j);
  const double num_bosons = two_j;
  const Matrix h = 2.0 * jx + (params.k / num_bosons) * (jz * jz).eval();
  Matrix u = hermitian_expm(h, params.T);
  for (Index i = 0; i < u.rows(); ++i)
    u.row(i) *= std::exp(cplx(0, -params.T * params.mu * jz(i, i).real()));
  return {std::move(u), "spin-j", params};
}

Matrix hermitian_expm(const Matrix& h, double t) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_expm: matrix not square");
  const double scale = std::max(1.0, max_abs(h));
  if (max_abs(h - h.adjoint()) > 1e-12 * scale)
    throw std::invalid_argument("hermitian_expm: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_expm: eigendecomposition failed");
  const Index n = h.rows();
  Vector phases(n);
  for (Index i = 0; i < n; ++i) phases(i) = std::exp(cplx(0, -t * es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<Vector> evolve(const FloquetOperator& op, const Vector& psi0, int steps) {
  if (psi0.size() != op.dim())
    throw std::invalid_argument("evolve: state dimension " + std::to_string(psi0.size()) +
                                " does not match operator dimension " +
                                std::to_string(op.dim()));
  if (std::abs(psi0.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("evolve: initial state is not normalized");
  if (steps < 0) throw std::invalid_argument("evolve: steps must be >= 0");
  std::vector<Vector> out;
  out.reserve(steps + 1);
  out.push_back(psi0);
  for (int j = 0; j < steps; ++j) out.push_back(op.matrix * out.back());
  return out;
}

}  // namespace floqspread
