#include <cmath>

#include "doctest.h"
#include "horolet/hyperbolic.hpp"
#include "horolet/space.hpp"

using namespace horolet;

namespace {
VecD v2(double a, double b) {
  VecD v(2);
  v << a, b;
  return v;
}
VecD v3(double a, double b, double c) {
  VecD v(3);
  v << a, b, c;
  return v;
}
}  // namespace

TEST_SUITE("hyperbolic") {

TEST_CASE("ball distance from the origin has a closed form") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  CHECK(poincare_distance(sp, v2(0, 0), v2(0.5, 0)) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-14));
  // rotation invariance about the origin
  CHECK(poincare_distance(sp, v2(0, 0), v2(0, 0.5)) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("su11 disk distance is half the ball distance") {
  auto ball = space_descriptor(SpaceModel::poincare_ball, 2);
  auto disk = space_descriptor(SpaceModel::poincare_disk_su11, 2);
  VecD x = v2(0.3, -0.2), y = v2(-0.1, 0.55);
  CHECK(poincare_distance(disk, x, y) ==
        doctest::Approx(0.5 * poincare_distance(ball, x, y)).epsilon(1e-13));
  CHECK(poincare_disk_distance(Complex(0, 0), Complex(0.5, 0)) ==
        doctest::Approx(std::atanh(0.5)).epsilon(1e-14));
}

TEST_CASE("triangle inequality holds for random triples") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  Rng rng(11);
  for (int k = 0; k < 50; ++k) {
    VecD x = v2(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9));
    VecD y = v2(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9));
    VecD z = v2(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9));
    if (x.norm() >= 0.99 || y.norm() >= 0.99 || z.norm() >= 0.99) continue;
    CHECK(poincare_distance(sp, x, z) <=
          poincare_distance(sp, x, y) + poincare_distance(sp, y, z) + 1e-12);
  }
}

TEST_CASE("composite distance closed forms on the axis") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  // log((1-|x|^2)/|x-u|^2) at x = (1/2, 0)
  CHECK(composite_distance(sp, v2(0.5, 0), v2(1, 0)) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-13));
  CHECK(composite_distance(sp, v2(0.5, 0), v2(-1, 0)) ==
        doctest::Approx(-std::log(3.0)).epsilon(1e-13));
  CHECK(composite_distance(sp, v2(0, 0), v2(0, 1)) == doctest::Approx(0.0).epsilon(1e-14));
  auto disk = space_descriptor(SpaceModel::poincare_disk_su11, 2);
  CHECK(composite_distance(disk, v2(0.5, 0), v2(1, 0)) ==
        doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-13));
}

TEST_CASE("poisson weight exponentiates the composite distance") {
  auto b2 = space_descriptor(SpaceModel::poincare_ball, 2);
  auto b3 = space_descriptor(SpaceModel::poincare_ball, 3);
  CHECK(poisson_weight(b2, v2(0.5, 0), v2(1, 0)) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
  CHECK(poisson_weight(b3, v3(0.5, 0, 0), v3(1, 0, 0)) ==
        doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("volume densities match the metric factor") {
  auto b2 = space_descriptor(SpaceModel::poincare_ball, 2);
  auto b3 = space_descriptor(SpaceModel::poincare_ball, 3);
  auto disk = space_descriptor(SpaceModel::poincare_disk_su11, 2);
  CHECK(model_volume_density(b2, v2(0, 0)) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(model_volume_density(b2, v2(0.5, 0)) ==
        doctest::Approx(64.0 / 9.0).epsilon(1e-13));
  CHECK(model_volume_density(b3, v3(0.5, 0, 0)) ==
        doctest::Approx(std::pow(8.0 / 3.0, 3)).epsilon(1e-13));
  // su11 metric is half the ball metric, so the area density is quartered
  CHECK(model_volume_density(disk, v2(0.5, 0)) ==
        doctest::Approx(16.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("plancherel densities match closed forms") {
  auto b2 = space_descriptor(SpaceModel::poincare_ball, 2);
  auto b3 = space_descriptor(SpaceModel::poincare_ball, 3);
  auto disk = space_descriptor(SpaceModel::poincare_disk_su11, 2);
  CHECK(plancherel_density(b2, 1.0) ==
        doctest::Approx(M_PI * std::tanh(M_PI)).epsilon(1e-12));
  // odd ambient dimension: polynomial density, lambda^2 at m = 3
  CHECK(plancherel_density(b3, 2.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(plancherel_density(disk, 1.0) ==
        doctest::Approx(0.5 * M_PI * std::tanh(0.5 * M_PI)).epsilon(1e-12));
  CHECK(plancherel_density(disk, 1.0) == doctest::Approx(1.4407).epsilon(1e-4));
}

TEST_CASE("plancherel densities are even and nonnegative") {
  auto b2 = space_descriptor(SpaceModel::poincare_ball, 2);
  auto b3 = space_descriptor(SpaceModel::poincare_ball, 3);
  auto disk = space_descriptor(SpaceModel::poincare_disk_su11, 2);
  for (double lam = 0.25; lam <= 40.0; lam += 0.75) {
    for (const auto& sp : {b2, b3, disk}) {
      double p = plancherel_density(sp, lam);
      CHECK(p >= 0.0);
      CHECK(p == doctest::Approx(plancherel_density(sp, -lam)).epsilon(1e-12));
    }
  }
  CHECK(plancherel_density(b2, 1e-3) > 0.0);
}

TEST_CASE("horosphere membership is a level set of the composite distance") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  VecD u = v2(1, 0);
  // both points sit on the euclidean circle tangent at u through (1/3, 0)
  Horosphere h1{v2(1.0 / 3.0, 0), u};
  Horosphere h2{v2(2.0 / 3.0, 1.0 / 3.0), u};
  CHECK(composite_distance(sp, h2.through, u) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(same_horosphere(sp, h1, h2, 1e-9));
  CHECK_FALSE(same_horosphere(sp, h1, Horosphere{v2(0.5, 0), u}, 1e-9));
  CHECK_FALSE(same_horosphere(sp, h1, Horosphere{v2(1.0 / 3.0, 0), v2(0, 1)}, 1e-9));
}

TEST_CASE("mobius boosts move the origin along the axis") {
  MobiusElement at{std::cosh(0.8), std::sinh(0.8)};
  CHECK(at.valid());
  Complex img = mobius_apply(at, Complex(0, 0));
  CHECK(img.real() == doctest::Approx(std::tanh(0.8)).epsilon(1e-13));
  CHECK(img.imag() == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("mobius rotations double the phase") {
  double phi = 0.7;
  MobiusElement k{Complex(std::cos(phi), std::sin(phi)), 0.0};
  Complex z(0.2, -0.3);
  Complex img = mobius_apply(k, z);
  Complex expect = std::exp(Complex(0, 2 * phi)) * z;
  CHECK(std::abs(img - expect) < 1e-13);
}

TEST_CASE("mobius elements form a group acting on the disk") {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    MobiusElement g1 = random_mobius(rng), g2 = random_mobius(rng);
    CHECK(g1.valid(1e-9));
    Complex z(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7));
    Complex lhs = mobius_apply(g1 * g2, z);
    Complex rhs = mobius_apply(g1, mobius_apply(g2, z));
    CHECK(std::abs(lhs - rhs) < 1e-12);
    Complex back = mobius_apply(g1.inverse(), mobius_apply(g1, z));
    CHECK(std::abs(back - z) < 1e-12);
  }
}

TEST_CASE("mobius maps are isometries of the su11 disk") {
  auto disk = space_descriptor(SpaceModel::poincare_disk_su11, 2);
  Rng rng(17);
  for (int k = 0; k < 20; ++k) {
    MobiusElement g = random_mobius(rng);
    double r1 = rng.uniform(0.0, 0.85), t1 = rng.uniform(0.0, 2 * M_PI);
    double r2 = rng.uniform(0.0, 0.85), t2 = rng.uniform(0.0, 2 * M_PI);
    Complex z = r1 * std::exp(Complex(0, t1));
    Complex w = r2 * std::exp(Complex(0, t2));
    double before = poincare_disk_distance(z, w);
    double after = poincare_disk_distance(mobius_apply(g, z), mobius_apply(g, w));
    CHECK(std::abs(after - before) < 1e-10);
  }
}

}
