#include "floqspread/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace floqspread {

namespace {

void check_start_state(const Vector& psi0, Index dim, const char* who) {
  if (psi0.size() != dim)
    throw std::invalid_argument(std::string(who) + ": state dimension does not match operator");
  if (std::abs(psi0.norm() - 1.0) > 1e-10)
    throw std::invalid_argument(std::string(who) + ": initial state is not normalized");
}

// two classical Gram-Schmidt passes against the first n columns of basis;
// accumulates the removed components into coeffs when given
void orthogonalize(const Matrix& basis, Index n, Vector& w, Vector* coeffs) {
  for (int pass = 0; pass < 2; ++pass) {
    Vector overlap = basis.leftCols(n).adjoint() * w;
    w.noalias() -= basis.leftCols(n) * overlap;
    if (coeffs) *coeffs += overlap;
  }
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

Matrix LanczosData::tridiagonal() const {
  const Index n = dim_krylov();
  Matrix t = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    t(i, i) = a(i);
    if (i + 1 < n) {
      t(i + 1, i) = b(i);
      t(i, i + 1) = b(i);
    }
  }
  return t;
}

RealVector ArnoldiData::subdiagonal() const {
  const Index n = dim_krylov();
  RealVector sub(std::max<Index>(n - 1, 0));
  for (Index i = 1; i < n; ++i) sub(i - 1) = hessenberg(i, i - 1).real();
  return sub;
}

LanczosData lanczos(const Matrix& h, const Vector& psi0, double tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("lanczos: matrix not square");
  if (max_abs(h - h.adjoint()) > 1e-12 * std::max(1.0, max_abs(h)))
    throw std::invalid_argument("lanczos: matrix is not Hermitian");
  check_start_state(psi0, h.rows(), "lanczos");
  if (tol <= 0) throw std::invalid_argument("lanczos: tol must be > 0");

  const Index dim = h.rows();
  const double threshold = tol * h.norm();  // Frobenius scale
  Matrix basis(dim, std::min<Index>(dim, 128));
  basis.col(0) = psi0;
  std::vector<double> as, bs;
  bool halted_early = false;

  Vector w = h * psi0;
  as.push_back(psi0.dot(w).real());
  w -= as.back() * psi0;
  orthogonalize(basis, 1, w, nullptr);

  Index n = 1;
  while (true) {
    const double beta = w.norm();
    if (beta < threshold) {
      halted_early = n < dim;
      break;
    }
    if (n == dim) break;
    if (n == basis.cols())
      basis.conservativeResize(Eigen::NoChange, std::min(dim, basis.cols() * 2));
    bs.push_back(beta);
    basis.col(n) = w / beta;
    w.noalias() = h * basis.col(n);
    as.push_back(basis.col(n).dot(w).real());
    w -= as.back() * basis.col(n) + bs.back() * basis.col(n - 1);
    orthogonalize(basis, n + 1, w, nullptr);
    ++n;
  }

  LanczosData out;
  out.a = Eigen::Map<const RealVector>(as.data(), as.size());
  out.b = Eigen::Map<const RealVector>(bs.data(), bs.size());
  out.basis = basis.leftCols(n);
  out.halted_early = halted_early;
  return out;
}

ArnoldiData arnoldi(const Matrix& u, const Vector& psi0, double tol) {
  if (u.rows() != u.cols()) throw std::invalid_argument("arnoldi: matrix not square");
  if (!is_unitary(u, 1e-8))
    throw std::invalid_argument("arnoldi: operator is not unitary");
  check_start_state(psi0, u.rows(), "arnoldi");
  if (tol <= 0) throw std::invalid_argument("arnoldi: tol must be > 0");

  const Index dim = u.rows();
  Matrix basis(dim, std::min<Index>(dim, 128));
  basis.col(0) = psi0;
  std::vector<Vector> columns;  // column n-1 holds h_{0..n-1, n-1}
  bool halted_early = false;

  Index n = 1;
  while (true) {
    Vector w = u * basis.col(n - 1);
    Vector coeffs = Vector::Zero(n);
    orthogonalize(basis, n, w, &coeffs);
    columns.push_back(std::move(coeffs));
    const double residual = w.norm();
    if (residual < tol) {
      halted_early = n < dim;
      break;
    }
    if (n == dim) break;
    if (n == basis.cols())
      basis.conservativeResize(Eigen::NoChange, std::min(dim, basis.cols() * 2));
    basis.col(n) = w / residual;  // fixes the phase: h_{n,n-1} real positive
    columns.back().conservativeResize(n + 1);
    columns.back()(n) = residual;
    ++n;
  }

  ArnoldiData out;
  out.hessenberg = Matrix::Zero(n, n);
  for (Index j = 0; j < static_cast<Index>(columns.size()); ++j)
    out.hessenberg.col(j).head(columns[j].size()) = columns[j];
  out.basis = basis.leftCols(n);
  out.halted_early = halted_early;
  return out;
}

ArnoldiData arnoldi(const FloquetOperator& u, const Vector& psi0, double tol) {
  return arnoldi(u.matrix, psi0, tol);
}

AmplitudeTrajectory amplitudes_direct(const Matrix& u, const ArnoldiData& data,
                                      const Vector& psi0, int steps) {
  if (u.rows() != data.basis.rows() || psi0.size() != u.rows())
    throw std::invalid_argument("amplitudes_direct: mismatched inputs");
  if (steps < 0) throw std::invalid_argument("amplitudes_direct: steps must be >= 0");
  const Index dk = data.dim_krylov();
  AmplitudeTrajectory traj;
  traj.psi.resize(dk, steps + 1);
  traj.residual_prob.resize(steps + 1);
  Vector state = psi0;
  for (int j = 0;; ++j) {
    traj.psi.col(j).noalias() = data.basis.adjoint() * state;
    traj.residual_prob(j) = 1.0 - traj.psi.col(j).squaredNorm();
    if (j == steps) break;
    state = u * state;
  }
  return traj;
}

AmplitudeTrajectory amplitudes_chain(const ArnoldiData& data, int steps) {
  if (steps < 0) throw std::invalid_argument("amplitudes_chain: steps must be >= 0");
  const Index dk = data.dim_krylov();
  AmplitudeTrajectory traj;
  traj.psi.resize(dk, steps + 1);
  traj.residual_prob = RealVector::Zero(steps + 1);
  traj.psi.col(0).setZero();
  traj.psi(0, 0) = 1.0;
  for (int j = 0; j < steps; ++j)
    traj.psi.col(j + 1).noalias() = data.hessenberg * traj.psi.col(j);
  return traj;
}

HighFreqComparison highfreq_comparison(const Matrix& h0, const Matrix& v,
                                       const Vector& psi0, double T) {
  if (T <= 0) throw std::invalid_argument("highfreq_comparison: T must be > 0");
  const Matrix u = hermitian_expm(h0, T) * hermitian_expm(v, T);
  const ArnoldiData arn = arnoldi(u, psi0);
  const LanczosData lan = lanczos(h0 + v, psi0);

  const RealVector sub = arn.subdiagonal();
  const Index count = std::min<Index>({50, sub.size(), lan.b.size()});
  HighFreqComparison cmp;
  cmp.compared = count;
  cmp.subdiag_rel_dev.resize(count);
  for (Index i = 0; i < count; ++i)
    cmp.subdiag_rel_dev(i) = std::abs(sub(i) / T - lan.b(i)) / lan.b(i);

  const Index dcount = std::min<Index>({50, arn.dim_krylov(), lan.a.size()});
  cmp.diag_dev.resize(dcount);
  for (Index i = 0; i < dcount; ++i) {
    const cplx implied = (1.0 - arn.hessenberg(i, i)) / cplx(0, T);
    cmp.diag_dev(i) = std::abs(implied - cplx(lan.a(i), 0));
  }
  cmp.median_subdiag_rel = median(std::vector<double>(
      cmp.subdiag_rel_dev.data(), cmp.subdiag_rel_dev.data() + count));
  return cmp;
}

Vector uniform_state(Index dim) {
  if (dim < 1) throw std::invalid_argument("uniform_state: dim must be >= 1");
  return Vector::Constant(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0));
}

Vector haar_random_state(Index dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("haar_random_state: dim must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = cplx(re, im);
  }
  v /= v.norm();
  return v;
}

}  // namespace floqspread
