#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "horolet/hyperbolic.hpp"
#include "horolet/types.hpp"

namespace horolet {

// bump profile exp(1 - 1/(1 - (t/r0)^2)) on |t| < r0, identically 0 outside
inline double mollifier(double t, double r0) {
  double s = t / r0;
  double q = 1.0 - s * s;
  if (q <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / q);
}

inline ScalarField euclidean_gaussian(int m) {
  ScalarField f;
  f.eval = [m](const VecD& x) { return std::exp(-0.5 * x.squaredNorm()); };
  f.radial = true;
  return f;
}

// radial value as a function of |z| on the unit disk; geodesic width wd is
// measured with the metric whose distance to the origin is 2 atanh|z|
inline double disk_bump_radial_value(double r, double width, double cutoff) {
  if (r >= cutoff) return 0.0;
  double d = 2.0 * std::atanh(std::min(r, 0.999999));
  return std::exp(-(d / width) * (d / width)) * mollifier(r, cutoff);
}

inline ScalarField disk_radial_bump(double width = 0.9, double cutoff = 0.6) {
  ScalarField f;
  f.eval = [width, cutoff](const VecD& z) {
    return disk_bump_radial_value(z.norm(), width, cutoff);
  };
  f.radial = true;
  f.support_radius = cutoff;
  return f;
}

inline ScalarField disk_plain_bump(double cutoff = 0.6) {
  ScalarField f;
  f.eval = [cutoff](const VecD& z) { return mollifier(z.norm(), cutoff); };
  f.radial = true;
  f.support_radius = cutoff;
  return f;
}

// radial bump translated to center z0 by the disk automorphism
// z -> (z - z0)/(1 - conj(z0) z)
inline ScalarField disk_offcenter_bump(const Complex& z0, double width = 0.9,
                                       double cutoff = 0.6) {
  ScalarField f;
  f.eval = [z0, width, cutoff](const VecD& zv) {
    Complex z(zv[0], zv[1]);
    Complex w = (z - z0) / (1.0 - std::conj(z0) * z);
    return disk_bump_radial_value(std::abs(w), width, cutoff);
  };
  f.radial = false;
  double s = std::abs(z0);
  f.support_radius = (cutoff + s) / (1.0 + cutoff * s);
  return f;
}

inline ScalarField disk_two_bump() {
  ScalarField a = disk_offcenter_bump(Complex(0.3, 0.0), 0.9, 0.55);
  ScalarField b = disk_offcenter_bump(Complex(-0.25, 0.15), 0.8, 0.5);
  ScalarField f;
  auto ae = a.eval, be = b.eval;
  f.eval = [ae, be](const VecD& z) { return ae(z) + 0.7 * be(z); };
  f.radial = false;
  f.support_radius = std::max(a.support_radius, b.support_radius);
  return f;
}

// geodesic-distance bump about the identity matrix; x arrives flattened
// column-major m x m
inline ScalarField spd_bump(int m, double cutoff = 1.15) {
  ScalarField f;
  f.eval = [m, cutoff](const VecD& xf) {
    MatD x = Eigen::Map<const MatD>(xf.data(), m, m);
    Eigen::SelfAdjointEigenSolver<MatD> es(x);
    double d2 = 0.0;
    for (int i = 0; i < m; ++i) {
      double e = es.eigenvalues()[i];
      if (e <= 0.0) return 0.0;
      double l = std::log(e);
      d2 += l * l;
    }
    double d = std::sqrt(d2);
    if (d >= cutoff) return 0.0;
    return std::exp(-2.0 * d2) * mollifier(d, cutoff);
  };
  f.radial = true;
  return f;
}

inline ScalarField make_target(const SpaceDescriptor& sp, const std::string& kind) {
  if (sp.model == SpaceModel::euclidean) {
    if (kind == "gaussian") return euclidean_gaussian(sp.m);
    throw ConfigError("unknown euclidean target: " + kind);
  }
  if (sp.model == SpaceModel::spd) {
    if (kind == "bump") return spd_bump(sp.m);
    throw ConfigError("unknown spd target: " + kind);
  }
  if (kind == "radial_bump") return disk_radial_bump();
  if (kind == "bump") return disk_plain_bump();
  if (kind == "offcenter_bump") return disk_offcenter_bump(Complex(0.3, 0.0));
  if (kind == "two_bump") return disk_two_bump();
  throw ConfigError("unknown target: " + kind);
}

}  // namespace horolet
