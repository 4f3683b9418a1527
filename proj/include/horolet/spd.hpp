#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>

#include "horolet/special.hpp"
#include "horolet/types.hpp"

namespace horolet {

inline void require_spd(const MatD& x, double sym_tol = 1e-12) {
  if (x.rows() != x.cols()) throw DomainError("spd: matrix must be square");
  if ((x - x.transpose()).cwiseAbs().maxCoeff() > sym_tol * std::max(1.0, x.cwiseAbs().maxCoeff()))
    throw DomainError("spd: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<MatD> es(x);
  if (es.eigenvalues().minCoeff() <= 0.0) throw DomainError("spd: matrix not positive definite");
}

inline MatD group_action(const MatD& g, const MatD& x) {
  if (std::abs(g.determinant()) < 1e-300) throw DomainError("group_action: singular g");
  return g * x * g.transpose();
}

struct CholeskyNA {
  MatD nu;   // unit upper-triangular
  VecD lam;  // positive diagonal
};

// x = nu diag(lam) nu^T solved from the bottom-right corner up
inline CholeskyNA cholesky_na(const MatD& x) {
  int m = static_cast<int>(x.rows());
  CholeskyNA d;
  d.nu = MatD::Identity(m, m);
  d.lam = VecD::Zero(m);
  for (int j = m - 1; j >= 0; --j) {
    double s = x(j, j);
    for (int k = j + 1; k < m; ++k) s -= d.nu(j, k) * d.nu(j, k) * d.lam[k];
    if (s <= 0.0) throw DomainError("cholesky_na: input not positive definite");
    d.lam[j] = s;
    for (int i = 0; i < j; ++i) {
      double t = x(i, j);
      for (int k = j + 1; k < m; ++k) t -= d.nu(i, k) * d.nu(j, k) * d.lam[k];
      d.nu(i, j) = t / s;
    }
  }
  return d;
}

// <x, kM> = (1/2) log lam(k^T x k); invariant under k -> k d, d in D+-1
inline VecD spd_composite_distance(const MatD& x, const MatD& k) {
  CholeskyNA d = cholesky_na(k.transpose() * x * k);
  return d.lam.array().log().matrix() * 0.5;
}

// brute-force route: -H(g^-1 k) with g the symmetric square root of x and H
// the log of the diagonal Iwasawa A-factor from Gram-Schmidt QR
inline VecD spd_iwasawa_oracle(const MatD& x, const MatD& k) {
  Eigen::SelfAdjointEigenSolver<MatD> es(x);
  MatD g = es.eigenvectors() *
           es.eigenvalues().array().sqrt().matrix().asDiagonal() *
           es.eigenvectors().transpose();
  MatD h = g.partialPivLu().solve(k);
  Eigen::HouseholderQR<MatD> qr(h);
  MatD r = qr.matrixQR().triangularView<Eigen::Upper>();
  VecD out(x.rows());
  for (int i = 0; i < x.rows(); ++i) out[i] = -std::log(std::abs(r(i, i)));
  return out;
}

inline double spd_measure_density(const MatD& x) {
  require_spd(x);
  int m = static_cast<int>(x.rows());
  return std::pow(std::abs(x.determinant()), -(m + 1) / 2.0);
}

// c(s) = prod_{1<=i<=j<m} B(1/2, s_i+...+s_j + (j-i+1)/2) / B(1/2, (j-i+1)/2)
inline Complex spd_c_function(const VecC& s) {
  int m = static_cast<int>(s.size());
  Complex acc = 0.0;
  for (int i = 1; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      Complex arg = Complex((j - i + 1) / 2.0, 0.0);
      for (int t = i; t <= j; ++t) arg += s[t - 1];
      // negative-even-integer-free check: Gamma poles at 0, -1, -2, ...
      if (std::abs(arg.imag()) < 1e-14 &&
          std::abs(arg.real() - std::round(arg.real())) < 1e-14 && arg.real() < 0.5)
        throw NumericalError("spd_c_function: beta argument at a Gamma pole");
      acc += log_beta(0.5, arg) - log_beta(0.5, (j - i + 1) / 2.0);
    }
  }
  return std::exp(acc);
}

inline VecD spd_rho_vector(int m) {
  VecD r = VecD::Constant(m, -0.5);
  r[m - 1] = (m - 1) / 4.0;
  return r;
}

// |c(i lambda + rho)|^-2; the walls where a beta argument hits the Gamma pole
// are the zero set of the weight (|c| diverges), so return the 0 limit there
inline double spd_plancherel_weight(const VecD& lambda) {
  int m = static_cast<int>(lambda.size());
  if (m == 1) return 1.0;
  VecD rr = spd_rho_vector(m);
  VecC s(m);
  for (int i = 0; i < m; ++i) s[i] = Complex(rr[i], lambda[i]);
  try {
    Complex c = spd_c_function(s);
    double a2 = std::norm(c);
    if (!std::isfinite(a2) || a2 > 1e300) return 0.0;
    return 1.0 / a2;
  } catch (const NumericalError&) {
    return 0.0;
  }
}

inline MatD random_spd(Rng& rng, int m) {
  MatD a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = rng.normal();
  return a * a.transpose() + 0.3 * MatD::Identity(m, m);
}

inline MatD random_orthogonal(Rng& rng, int m) {
  MatD a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = rng.normal();
  Eigen::HouseholderQR<MatD> qr(a);
  MatD q = qr.householderQ();
  MatD r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < m; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

}  // namespace horolet
