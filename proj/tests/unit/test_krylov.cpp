#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "floqspread/krylov.hpp"
#include "floqspread/spectral.hpp"

using namespace floqspread;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix random_hermitian(Index dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) a(i, j) = cplx(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

Matrix cyclic_shift(Index dim) {
  Matrix u = Matrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) u((i + 1) % dim, i) = 1.0;
  return u;
}

Vector basis_state(Index dim, Index which) {
  Vector v = Vector::Zero(dim);
  v(which) = 1.0;
  return v;
}

FloquetOperator sector_kicked_ising(int n, double phi) {
  return build_kicked_ising({1.0, 1.0, phi, 0.0, 1.0}, parity_sector(SpinBasis(n)));
}

}  // namespace

TEST_SUITE("krylov") {

TEST_CASE("lanczos halts immediately on an eigenvector") {
  Matrix h = Matrix::Zero(4, 4);
  h.diagonal() << 2.0, -1.0, 0.5, 3.0;
  const auto data = lanczos(h, basis_state(4, 1));
  CHECK(data.dim_krylov() == 1);
  CHECK(data.a(0) == doctest::Approx(-1.0));
  CHECK(data.b.size() == 0);
  CHECK(data.halted_early);
}

TEST_CASE("lanczos on sigma_x from |0>") {
  Matrix sx(2, 2);
  sx << 0, 1, 1, 0;
  const auto data = lanczos(sx, basis_state(2, 0));
  CHECK(data.dim_krylov() == 2);
  CHECK(data.a(0) == doctest::Approx(0.0));
  CHECK(data.a(1) == doctest::Approx(0.0));
  CHECK(data.b(0) == doctest::Approx(1.0));
  CHECK_FALSE(data.halted_early);
}

TEST_CASE("lanczos tridiagonalizes a random hermitian") {
  const Matrix h = random_hermitian(50, 11);
  const Vector psi0 = haar_random_state(50, 5);
  const auto data = lanczos(h, psi0);
  CHECK(data.dim_krylov() == 50);
  const Matrix gram = data.basis.adjoint() * data.basis;
  CHECK(max_abs(gram - Matrix::Identity(50, 50)) < 1e-10);
  const Matrix reduced = data.basis.adjoint() * h * data.basis;
  CHECK(max_abs(reduced - data.tridiagonal()) < 1e-8);
  for (Index i = 0; i < data.b.size(); ++i) CHECK(data.b(i) > 0);

  // eigenvalues of the tridiagonal match the dense spectrum
  Eigen::SelfAdjointEigenSolver<Matrix> dense(h);
  Eigen::SelfAdjointEigenSolver<Matrix> tri(data.tridiagonal());
  CHECK((dense.eigenvalues() - tri.eigenvalues()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("lanczos validates inputs") {
  Matrix notherm(3, 3);
  notherm.setZero();
  notherm(0, 1) = cplx(0, 1);
  CHECK_THROWS_AS(lanczos(notherm, basis_state(3, 0)), std::invalid_argument);
  Matrix h = random_hermitian(3, 2);
  CHECK_THROWS_AS(lanczos(h, 2.0 * basis_state(3, 0)), std::invalid_argument);
}

TEST_CASE("arnoldi halts immediately on an eigenvector") {
  Matrix u = Matrix::Zero(3, 3);
  u.diagonal() << std::exp(cplx(0, 0.3)), std::exp(cplx(0, -1.2)), std::exp(cplx(0, 2.0));
  const auto data = arnoldi(u, basis_state(3, 2));
  CHECK(data.dim_krylov() == 1);
  CHECK(data.halted_early);
  CHECK(std::abs(data.hessenberg(0, 0) - std::exp(cplx(0, 2.0))) < 1e-12);
  CHECK(std::abs(std::abs(data.hessenberg(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("arnoldi on a cyclic shift reproduces the maximal-growth chain") {
  const Index dim = 9;
  const auto data = arnoldi(cyclic_shift(dim), basis_state(dim, 0));
  CHECK(data.dim_krylov() == dim);
  CHECK_FALSE(data.halted_early);
  const RealVector sub = data.subdiagonal();
  for (Index i = 0; i < sub.size(); ++i) CHECK(sub(i) == doctest::Approx(1.0));
  CHECK(max_abs(data.hessenberg - cyclic_shift(dim)) < 1e-12);
}

TEST_CASE("arnoldi reconstructs the kicked ising sector operator") {
  const auto op = sector_kicked_ising(8, kPi / 3);
  const Vector psi0 = basis_state(op.dim(), 0);  // all-up orbit
  const auto data = arnoldi(op, psi0);
  CHECK(data.dim_krylov() == op.dim());
  CHECK_FALSE(data.halted_early);
  const Matrix gram = data.basis.adjoint() * data.basis;
  CHECK(max_abs(gram - Matrix::Identity(op.dim(), op.dim())) < 1e-10);
  const Matrix reduced = data.basis.adjoint() * op.matrix * data.basis;
  CHECK(max_abs(reduced - data.hessenberg) < 1e-8);
  // entries below the subdiagonal vanish, subdiagonal is real positive
  for (Index j = 0; j < data.dim_krylov(); ++j)
    for (Index i = j + 2; i < data.dim_krylov(); ++i)
      CHECK(std::abs(data.hessenberg(i, j)) < 1e-10);
  const RealVector sub = data.subdiagonal();
  for (Index i = 0; i < sub.size(); ++i) CHECK(sub(i) > 0);
}

TEST_CASE("arnoldi rejects a non-unitary operator") {
  Matrix m = Matrix::Identity(4, 4);
  m(0, 0) = 1.5;
  CHECK_THROWS_AS(arnoldi(m, basis_state(4, 0)), std::invalid_argument);
}

TEST_CASE("hessenberg eigenphases match the quasienergies when the space is exhausted") {
  const auto op = sector_kicked_ising(6, kPi / 3);
  const auto data = arnoldi(op, basis_state(op.dim(), 0));
  REQUIRE(data.dim_krylov() == op.dim());
  Eigen::ComplexEigenSolver<Matrix> es(data.hessenberg, false);
  RealVector from_h(op.dim());
  for (Index i = 0; i < op.dim(); ++i) {
    double p = std::arg(es.eigenvalues()(i));
    if (p < 0) p += 2 * kPi;
    from_h(i) = p;
  }
  std::sort(from_h.data(), from_h.data() + from_h.size());
  const RealVector direct = quasienergies(op.matrix);
  CHECK((from_h - direct).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("direct amplitudes start at delta and stay normalized") {
  const auto op = sector_kicked_ising(6, kPi / 3);
  const Vector psi0 = basis_state(op.dim(), 0);
  const auto data = arnoldi(op, psi0);
  const auto traj = amplitudes_direct(op.matrix, data, psi0, 50);
  CHECK(std::abs(traj.psi(0, 0) - cplx(1, 0)) < 1e-12);
  for (Index n = 1; n < traj.psi.rows(); ++n) CHECK(std::abs(traj.psi(n, 0)) < 1e-12);
  for (int j = 0; j <= 50; ++j) {
    CHECK(std::abs(traj.psi.col(j).squaredNorm() - 1.0) < 1e-9);
    CHECK(std::abs(traj.residual_prob(j)) < 1e-9);
  }
}

TEST_CASE("one-dimensional krylov space gives a pure phase") {
  Matrix u = Matrix::Zero(2, 2);
  u.diagonal() << std::exp(cplx(0, 0.4)), std::exp(cplx(0, 1.9));
  const Vector psi0 = basis_state(2, 0);
  const auto data = arnoldi(u, psi0);
  REQUIRE(data.dim_krylov() == 1);
  const auto traj = amplitudes_direct(u, data, psi0, 10);
  for (int j = 0; j <= 10; ++j) CHECK(std::abs(std::abs(traj.psi(0, j)) - 1.0) < 1e-12);

  const auto chain = amplitudes_chain(data, 10);
  for (int j = 0; j <= 10; ++j)
    CHECK(std::abs(chain.psi(0, j) - std::exp(cplx(0, 0.4 * j))) < 1e-12);
}

TEST_CASE("chain on the pure shift gives psi_n^j = delta_nj") {
  const auto data = arnoldi(cyclic_shift(12), basis_state(12, 0));
  const auto traj = amplitudes_chain(data, 11);
  for (int j = 0; j <= 11; ++j)
    for (Index n = 0; n < 12; ++n) {
      const double expect = (n == j) ? 1.0 : 0.0;
      CHECK(std::abs(traj.psi(n, j) - expect) < 1e-12);
    }
}

TEST_CASE("chain and direct propagation agree over 200 steps") {
  for (double phi : {kPi / 30, kPi / 3}) {
    const auto op = sector_kicked_ising(8, phi);
    const Vector psi0 = basis_state(op.dim(), 0);
    const auto data = arnoldi(op, psi0);
    const auto direct = amplitudes_direct(op.matrix, data, psi0, 200);
    const auto chain = amplitudes_chain(data, 200);
    CHECK(max_abs(direct.psi - chain.psi) < 1e-8);
  }
}

TEST_CASE("high-frequency limit reduces arnoldi to lanczos") {
  const SpinBasis basis(8);
  const auto sector = parity_sector(basis);
  Matrix h0 = Matrix::Zero(basis.dim, basis.dim);
  for (int i = 1; i < 8; ++i)
    h0 += pauli_site_operator(basis, i, Axis::Z) * pauli_site_operator(basis, i + 1, Axis::Z);
  const Matrix v = std::sin(kPi / 3) * total_spin_operator(basis, Axis::X) +
                   std::cos(kPi / 3) * total_spin_operator(basis, Axis::Z);
  const Matrix h0s = project_operator(h0, sector);
  const Matrix vs = project_operator(v, sector);
  const Vector psi0 = basis_state(sector.dim(), 0);

  const auto cmp3 = highfreq_comparison(h0s, vs, psi0, 1e-3);
  REQUIRE(cmp3.compared >= 20);
  std::vector<double> first20(cmp3.subdiag_rel_dev.data(), cmp3.subdiag_rel_dev.data() + 20);
  std::sort(first20.begin(), first20.end());
  const double median3 = 0.5 * (first20[9] + first20[10]);
  CHECK(median3 < 1e-2);

  const auto cmp4 = highfreq_comparison(h0s, vs, psi0, 1e-4);
  std::vector<double> first20b(cmp4.subdiag_rel_dev.data(), cmp4.subdiag_rel_dev.data() + 20);
  std::sort(first20b.begin(), first20b.end());
  const double median4 = 0.5 * (first20b[9] + first20b[10]);
  CHECK(median3 / median4 > 5.0);

  // diagonal deviations shrink linearly in T
  CHECK(cmp3.diag_dev.head(20).mean() / cmp4.diag_dev.head(20).mean() > 5.0);
}

TEST_CASE("degenerate high-frequency input stays honest") {
  const Matrix h0 = random_hermitian(6, 21);
  const Matrix v = random_hermitian(6, 22);
  const Vector psi0 = haar_random_state(6, 3);
  const auto cmp = highfreq_comparison(h0, v, psi0, 1e-15);
  CHECK(cmp.compared == 0);  // U is the identity to machine precision
}

TEST_CASE("state helpers") {
  const Vector u = uniform_state(8);
  CHECK(std::abs(u.norm() - 1.0) < 1e-14);
  CHECK(std::abs(u(3) - u(5)) < 1e-15);

  const Vector a = haar_random_state(32, 7);
  const Vector b = haar_random_state(32, 7);
  const Vector c = haar_random_state(32, 8);
  CHECK(max_abs(a - b) == 0.0);
  CHECK(max_abs(a - c) > 1e-3);
  CHECK(std::abs(a.norm() - 1.0) < 1e-12);
}

}  // TEST_SUITE
