#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace horolet {

using Complex = std::complex<double>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VecD = Vec<double>;
using MatD = Mat<double>;
using VecC = Vec<Complex>;
using MatC = Mat<Complex>;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// degenerate (sigma, rho) pair or quadrature divergence detected at runtime
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SpaceModel { euclidean, poincare_ball, poincare_disk_su11, spd };

struct SpaceDescriptor {
  SpaceModel model{};
  int m = 0;         // ambient dimension (matrix size for spd)
  int rank = 0;      // r: length of scale/frequency vectors
  VecD rho;          // weight-exponent vector, length rank
  int weyl_order = 1;
  // constant in front of the inverse-transform quadrature sum; for spd it is
  // self-calibrated per grid (see helgason.hpp) and this field stays 0
  double inv_normalization = 0.0;
  bool curved() const { return model != SpaceModel::euclidean; }
  std::string tag() const;
};

inline std::string SpaceDescriptor::tag() const {
  switch (model) {
    case SpaceModel::euclidean: return "euclidean_" + std::to_string(m);
    case SpaceModel::poincare_ball: return "poincare_ball_" + std::to_string(m);
    case SpaceModel::poincare_disk_su11: return "poincare_disk_su11";
    case SpaceModel::spd: return "spd_" + std::to_string(m);
  }
  return "unknown";
}

// 1-d quadrature rule; measure_tag documents which measure the weights carry
struct Grid1 {
  VecD nodes;
  VecD weights;
  std::string measure_tag;
  int size() const { return static_cast<int>(nodes.size()); }
};

// boundary nodes: column j is one representative (ball: unit vector;
// spd: orthogonal matrix flattened column-major); weights are a probability
struct BoundaryGrid {
  MatD points;
  VecD weights;
  int point_dim = 0;  // rows per node before flattening (spd: m, points m*m)
  int size() const { return static_cast<int>(points.cols()); }
};

// generic integration grid over the model space; column j is one point
// (ball/euclid: length m; spd: m*m flattened column-major), weights carry
// the full measure including any volume density
struct PointGrid {
  MatD points;
  VecD weights;
  int size() const { return static_cast<int>(points.cols()); }
};

struct ScalarField {
  std::function<double(const VecD&)> eval;
  double support_radius = 0.0;  // 0 = unknown / not compactly supported
  bool radial = false;          // K-invariant about the origin
  double operator()(const VecD& x) const { return eval(x); }
};

}  // namespace horolet
