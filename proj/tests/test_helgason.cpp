#include <cmath>

#include "doctest.h"
#include "horolet/field.hpp"
#include "horolet/helgason.hpp"
#include "horolet/space.hpp"

using namespace horolet;

namespace {
VecD v2(double a, double b) {
  VecD v(2);
  v << a, b;
  return v;
}
VecD v1(double a) {
  VecD v(1);
  v << a;
  return v;
}
}  // namespace

TEST_SUITE("helgason") {

TEST_CASE("tensor frequency grid enumerates with the last axis fastest") {
  Grid1 a;
  a.nodes = VecD(2);
  a.nodes << 1.0, 2.0;
  a.weights = VecD(2);
  a.weights << 0.5, 0.5;
  Grid1 b;
  b.nodes = VecD(3);
  b.nodes << 10.0, 20.0, 30.0;
  b.weights = VecD(3);
  b.weights << 1.0, 2.0, 3.0;
  FrequencyGrid g = tensor_frequency_grid({a, b});
  REQUIRE(g.size() == 6);
  CHECK(g.nodes(0, 0) == 1.0);
  CHECK(g.nodes(1, 0) == 10.0);
  CHECK(g.nodes(1, 1) == 20.0);
  CHECK(g.nodes(0, 3) == 2.0);
  CHECK(g.nodes(1, 3) == 10.0);
  CHECK(g.weights[4] == doctest::Approx(1.0));
  CHECK_THROWS_AS(tensor_frequency_grid({}), ConfigError);
}

TEST_CASE("symmetric frequency grid mirrors about zero") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  FrequencyGrid g = symmetric_frequency_grid(sp, 5.0, 16);
  REQUIRE(g.size() == 16);
  for (int k = 0; k < 16; ++k)
    CHECK(g.nodes(0, k) == doctest::Approx(-g.nodes(0, 15 - k)).epsilon(1e-13));
}

TEST_CASE("spectral weight dispatches per model") {
  auto e2 = space_descriptor(SpaceModel::euclidean, 2);
  CHECK(spectral_weight(e2, v2(1.0, 2.0)) == 1.0);
  auto b2 = space_descriptor(SpaceModel::poincare_ball, 2);
  CHECK(spectral_weight(b2, v1(1.0)) == doctest::Approx(M_PI * std::tanh(M_PI)).epsilon(1e-12));
  auto s2 = space_descriptor(SpaceModel::spd, 2);
  CHECK(spectral_weight(s2, v2(1.0, 0.3)) ==
        doctest::Approx(M_PI * std::tanh(M_PI)).epsilon(1e-10));
}

TEST_CASE("composite field stacks horospherical coordinates") {
  auto e2 = space_descriptor(SpaceModel::euclidean, 2);
  MatD X(2, 3);
  X << 0.1, 0.2, 0.3, -0.1, 0.0, 0.4;
  CHECK((composite_field(e2, X, v2(1, 0)) - X).norm() == 0.0);

  auto b2 = space_descriptor(SpaceModel::poincare_ball, 2);
  MatD C = composite_field(b2, X, v2(1, 0));
  REQUIRE(C.rows() == 1);
  for (int i = 0; i < 3; ++i)
    CHECK(C(0, i) == doctest::Approx(composite_distance(b2, X.col(i), v2(1, 0))).epsilon(1e-14));
}

TEST_CASE("scalar forward transform is the classical fourier integral") {
  auto sp = space_descriptor(SpaceModel::euclidean, 1);
  PointGrid X = euclid_grid(sp, 8.0, 257);
  BoundaryGrid bnd = boundary_grid(sp, 8);
  FrequencyGrid freq = symmetric_frequency_grid(sp, 4.0, 33);
  SpectralFunction F = hf_forward(euclidean_gaussian(1), sp, freq, bnd, X);
  for (int k = 0; k < freq.size(); k += 5) {
    double lam = freq.nodes(0, k);
    Complex expect(std::sqrt(2.0 * M_PI) * std::exp(-0.5 * lam * lam), 0.0);
    CHECK(std::abs(F.values(k, 0) - expect) < 1e-10);
  }
}

TEST_CASE("translation twists the scalar spectrum by a phase") {
  auto sp = space_descriptor(SpaceModel::euclidean, 1);
  PointGrid X = euclid_grid(sp, 9.0, 257);
  BoundaryGrid bnd = boundary_grid(sp, 8);
  FrequencyGrid freq = symmetric_frequency_grid(sp, 3.0, 17);
  ScalarField shifted;
  shifted.eval = [](const VecD& x) { return std::exp(-0.5 * (x[0] - 1.0) * (x[0] - 1.0)); };
  SpectralFunction F = hf_forward(shifted, sp, freq, bnd, X);
  for (int k = 0; k < freq.size(); k += 4) {
    double lam = freq.nodes(0, k);
    Complex expect = std::sqrt(2.0 * M_PI) * std::exp(-0.5 * lam * lam) *
                     std::exp(Complex(0.0, -lam));
    CHECK(std::abs(F.values(k, 0) - expect) < 1e-10);
  }
}

TEST_CASE("forward transform is linear") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  BallGrid ball = ball_grid(sp, 0.9, 48, 64);
  PointGrid X = as_points(ball);
  BoundaryGrid bnd = boundary_grid(sp, 16);
  FrequencyGrid freq = symmetric_frequency_grid(sp, 10.0, 24);
  ScalarField fa = disk_offcenter_bump(Complex(0.2, 0.1), 0.9, 0.5);
  ScalarField fb = disk_offcenter_bump(Complex(-0.1, 0.25), 0.8, 0.45);
  ScalarField combo;
  auto ae = fa.eval, be = fb.eval;
  combo.eval = [ae, be](const VecD& x) { return ae(x) + 2.0 * be(x); };
  SpectralFunction FA = hf_forward(fa, sp, freq, bnd, X);
  SpectralFunction FB = hf_forward(fb, sp, freq, bnd, X);
  SpectralFunction FC = hf_forward(combo, sp, freq, bnd, X);
  double defect = (FC.values - FA.values - 2.0 * FB.values).cwiseAbs().maxCoeff();
  CHECK(defect < 1e-12 * FC.values.cwiseAbs().maxCoeff());
}

TEST_CASE("rank mismatch between space and frequency grid is rejected") {
  auto b2 = space_descriptor(SpaceModel::poincare_ball, 2);
  auto e2 = space_descriptor(SpaceModel::euclidean, 2);
  FrequencyGrid freq2 = symmetric_frequency_grid(e2, 3.0, 4);
  BallGrid ball = ball_grid(b2, 0.5, 8, 8);
  PointGrid X = as_points(ball);
  BoundaryGrid bnd = boundary_grid(b2, 4);
  CHECK_THROWS_AS(hf_forward(disk_radial_bump(), b2, freq2, bnd, X), ConfigError);
}

TEST_CASE("su11 disk transform round trips a radial bump") {
  auto sp = space_descriptor(SpaceModel::poincare_disk_su11, 2);
  BallGrid ball = ball_grid(sp, 0.95, 128, 128);
  PointGrid X = as_points(ball);
  BoundaryGrid bnd = boundary_grid(sp, 128);
  FrequencyGrid freq = symmetric_frequency_grid(sp, 20.0, 128);
  ScalarField f = disk_radial_bump();
  SpectralFunction F = hf_forward(f, sp, freq, bnd, X);
  double sup_f = 0.0, sup_err = 0.0;
  for (double r : {0.0, 0.12, 0.25, 0.38, 0.5}) {
    VecD x = v2(r, 0.0);
    Complex back = hf_inverse(F, x);
    sup_f = std::max(sup_f, std::abs(f(x)));
    sup_err = std::max(sup_err, std::abs(back - Complex(f(x), 0.0)));
  }
  CHECK(sup_err / sup_f < 0.02);
}

TEST_CASE("ball transform round trips a radial bump") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  BallGrid ball = ball_grid(sp, 0.95, 96, 128);
  PointGrid X = as_points(ball);
  BoundaryGrid bnd = boundary_grid(sp, 64);
  FrequencyGrid freq = symmetric_frequency_grid(sp, 40.0, 160);
  ScalarField f = disk_radial_bump();
  SpectralFunction F = hf_forward(f, sp, freq, bnd, X);
  double sup_f = 0.0, sup_err = 0.0;
  for (double r : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    VecD x = v2(r, 0.0);
    Complex back = hf_inverse(F, x);
    sup_f = std::max(sup_f, std::abs(f(x)));
    sup_err = std::max(sup_err, std::abs(back - Complex(f(x), 0.0)));
  }
  CHECK(sup_err / sup_f < 0.02);
}

TEST_CASE("real targets give a conjugate-symmetric spectrum") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  BallGrid ball = ball_grid(sp, 0.9, 64, 96);
  PointGrid X = as_points(ball);
  BoundaryGrid bnd = boundary_grid(sp, 32);
  FrequencyGrid freq = symmetric_frequency_grid(sp, 20.0, 64);
  SpectralFunction F = hf_forward(disk_radial_bump(), sp, freq, bnd, X);
  CHECK(spectrum_conj_symmetry_defect(F) < 1e-10);

  auto e1 = space_descriptor(SpaceModel::euclidean, 1);
  SpectralFunction G = hf_forward(euclidean_gaussian(1), e1,
                                  symmetric_frequency_grid(e1, 4.0, 32),
                                  boundary_grid(e1, 4), euclid_grid(e1, 8.0, 129));
  CHECK(spectrum_conj_symmetry_defect(G) < 1e-12);
}

TEST_CASE("plancherel identity holds for a radial bump") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  BallGrid ball = ball_grid(sp, 0.95, 128, 128);
  PointGrid X = as_points(ball);
  BoundaryGrid bnd = boundary_grid(sp, 64);
  FrequencyGrid freq = symmetric_frequency_grid(sp, 40.0, 320);
  auto [lhs, rhs] = plancherel_check(disk_radial_bump(), sp, freq, bnd, X);
  CHECK(lhs > 0.0);
  CHECK(std::abs(rhs - lhs) / lhs < 1e-3);
}

TEST_CASE("plancherel identity holds for a mildly translated bump") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  BallGrid ball = ball_grid(sp, 0.95, 112, 144);
  PointGrid X = as_points(ball);
  BoundaryGrid bnd = boundary_grid(sp, 48);
  FrequencyGrid freq = symmetric_frequency_grid(sp, 35.0, 256);
  auto [lhs, rhs] = plancherel_check(disk_offcenter_bump(Complex(0.3, 0.0)), sp, freq, bnd, X);
  CHECK(lhs > 0.0);
  CHECK(std::abs(rhs - lhs) / lhs < 1e-3);
}

TEST_CASE("spd transform round trips a bump after identity calibration") {
  auto sp = space_descriptor(SpaceModel::spd, 2);
  // the error is dominated by the frequency-box truncation of the slowly
  // decaying bump spectrum; lambda_max 12 lands the round trip near 0.26
  PointGrid X = spd2_grid(sp, 60);
  BoundaryGrid bnd = boundary_grid(sp, 96);
  FrequencyGrid freq = symmetric_frequency_grid(sp, 12.0, 56);
  ScalarField f = spd_bump(2);
  SpectralFunction F = hf_forward(f, sp, freq, bnd, X);
  VecD id(4);
  id << 1.0, 0.0, 0.0, 1.0;
  double raw = hf_inverse(F, id, 1.0).real();
  REQUIRE(std::abs(raw) > 1e-12);
  double cal = f(id) / raw;
  double sup_f = 0.0, sup_err = 0.0;
  for (double s : {0.0, 0.15, 0.3, 0.45, 0.6}) {
    VecD x(4);
    x << std::exp(s), 0.0, 0.0, std::exp(-s);
    Complex back = cal * hf_inverse(F, x, 1.0);
    sup_f = std::max(sup_f, std::abs(f(x)));
    sup_err = std::max(sup_err, std::abs(back - Complex(f(x), 0.0)));
  }
  MESSAGE("spd round trip rel sup ", sup_err / sup_f);
  CHECK(sup_err / sup_f < 0.30);
}

TEST_CASE("lambda multiplier scales rows by the spectral weight") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  BallGrid ball = ball_grid(sp, 0.8, 24, 32);
  PointGrid X = as_points(ball);
  BoundaryGrid bnd = boundary_grid(sp, 8);
  FrequencyGrid freq = symmetric_frequency_grid(sp, 8.0, 12);
  SpectralFunction F = hf_forward(disk_radial_bump(), sp, freq, bnd, X);
  SpectralFunction G = lambda_multiplier(F);
  for (int k = 0; k < freq.size(); k += 3) {
    double w = spectral_weight(sp, freq.nodes.col(k));
    CHECK(std::abs(G.values(k, 0) - w * F.values(k, 0)) < 1e-14);
  }
}

TEST_CASE("inverse constant precedence") {
  auto b2 = space_descriptor(SpaceModel::poincare_ball, 2);
  CHECK(inverse_constant(b2, 0.0) == b2.inv_normalization);
  CHECK(inverse_constant(b2, 5.0) == 5.0);
  auto s2 = space_descriptor(SpaceModel::spd, 2);
  CHECK(inverse_constant(s2, 0.0) == 1.0);
}

TEST_CASE("inverse scales linearly in the normalization override") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  BallGrid ball = ball_grid(sp, 0.8, 32, 48);
  PointGrid X = as_points(ball);
  BoundaryGrid bnd = boundary_grid(sp, 16);
  FrequencyGrid freq = symmetric_frequency_grid(sp, 12.0, 32);
  SpectralFunction F = hf_forward(disk_radial_bump(), sp, freq, bnd, X);
  VecD x = v2(0.2, 0.1);
  Complex base = hf_inverse(F, x);
  CHECK(std::abs(hf_inverse(F, x, sp.inv_normalization) - base) < 1e-15);
  CHECK(std::abs(hf_inverse(F, x, 2.0 * sp.inv_normalization) - 2.0 * base) < 1e-14);
}

TEST_CASE("radial and full lambda caches agree") {
  auto sp = space_descriptor(SpaceModel::poincare_ball, 2);
  // the slow route's boundary rule must resolve phases of angular bandwidth
  // about lambda_eff 2r/(1-r^2) at the rim, hence 128 nodes for radius 0.8
  BallGrid ball = ball_grid(sp, 0.8, 64, 128);
  BoundaryGrid bnd = boundary_grid(sp, 128);
  FrequencyGrid freq = symmetric_frequency_grid(sp, 20.0, 96);
  ScalarField f = disk_radial_bump();
  LambdaCache fast = build_lambda_cache(f, sp, freq, bnd, ball);
  ScalarField slow_f = f;
  slow_f.radial = false;  // forces the per-boundary-column transform
  LambdaCache slow = build_lambda_cache(slow_f, sp, freq, bnd, ball);
  REQUIRE(fast.radial);
  REQUIRE_FALSE(slow.radial);
  double sup = 0.0, ref = 0.0;
  for (int i = 0; i < fast.pts.size(); ++i) {
    sup = std::max(sup, std::abs(fast.values[i] - slow.values[i]));
    ref = std::max(ref, std::abs(fast.values[i]));
  }
  MESSAGE("cache route disagreement ", sup / ref);
  CHECK(sup / ref < 1e-6);
  // off-grid evaluation: the radial path interpolates along the axis, the
  // full path interpolates in polar coordinates
  for (double r : {0.2, 0.45, 0.7}) {
    VecD x = v2(r * std::cos(1.1), r * std::sin(1.1));
    CHECK(std::abs(fast.eval(x) - slow.eval(x)) < 1e-4 * ref);
  }
}

TEST_CASE("euclid cache stores the target itself") {
  auto sp = space_descriptor(SpaceModel::euclidean, 1);
  PointGrid X = euclid_grid(sp, 5.0, 65);
  LambdaCache cache = build_euclid_cache(euclidean_gaussian(1), sp, X);
  for (int i = 0; i < X.size(); i += 7)
    CHECK(cache.values[i].real() == doctest::Approx(std::exp(-0.5 * X.points(0, i) * X.points(0, i))));
}

}
