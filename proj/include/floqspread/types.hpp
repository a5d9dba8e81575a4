#pragma once

#include <Eigen/Dense>
#include <complex>

namespace floqspread {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_unitary(const Matrix& m, double tol = 1e-10) {
  return max_abs(Matrix(m.adjoint() * m) - Matrix::Identity(m.rows(), m.cols())) < tol;
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
  return max_abs(m - m.adjoint()) < tol;
}

}  // namespace floqspread
