#include <cmath>

#include "doctest.h"
#include "horolet/quadrature.hpp"
#include "horolet/reduction.hpp"

using namespace horolet;

TEST_SUITE("quadrature") {

TEST_CASE("gauss legendre integrates low polynomials exactly") {
  Grid1 g = gauss_legendre(2, 0.0, 1.0);
  double s3 = 0.0, s1 = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    s3 += g.weights[i] * std::pow(g.nodes[i], 3);
    s1 += g.weights[i];
  }
  CHECK(s3 == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(s1 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gauss legendre converges on smooth integrands") {
  Grid1 g = gauss_legendre(24, 0.0, 1.0);
  double s = 0.0;
  for (int i = 0; i < g.size(); ++i) s += g.weights[i] * std::exp(g.nodes[i]);
  CHECK(s == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("gauss legendre nodes are symmetric about the midpoint") {
  Grid1 g = gauss_legendre(17, -3.0, 5.0);
  for (int i = 0; i < g.size(); ++i) {
    CHECK(g.nodes[i] + g.nodes[g.size() - 1 - i] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(g.weights[i] == doctest::Approx(g.weights[g.size() - 1 - i]).epsilon(1e-13));
  }
}

TEST_CASE("midpoint rule hits smooth periodic integrals hard") {
  Grid1 g = midpoint(64, 0.0, M_PI);
  double s = 0.0;
  for (int i = 0; i < g.size(); ++i) s += g.weights[i] * std::sin(g.nodes[i]);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(g.nodes[0] == doctest::Approx(0.5 * M_PI / 64).epsilon(1e-14));
}

TEST_CASE("trapezoid endpoints carry half weight") {
  Grid1 g = trapezoid(5, 0.0, 4.0);
  CHECK(g.nodes[0] == 0.0);
  CHECK(g.nodes[4] == 4.0);
  CHECK(g.weights[0] == doctest::Approx(0.5));
  CHECK(g.weights[2] == doctest::Approx(1.0));
  double s = 0.0;
  for (int i = 0; i < g.size(); ++i) s += g.weights[i] * (2.0 * g.nodes[i] + 1.0);
  CHECK(s == doctest::Approx(20.0).epsilon(1e-14));
}

TEST_CASE("mirrored scale grid covers both signs away from zero") {
  Grid1 g = mirrored_scale_grid(24, 0.05, 8.0);
  REQUIRE(g.size() == 48);
  double total = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    CHECK(std::abs(g.nodes[i]) >= 0.05);
    CHECK(std::abs(g.nodes[i]) <= 8.0);
    CHECK(g.weights[i] > 0.0);
    total += g.weights[i];
  }
  CHECK(total == doctest::Approx(2.0 * (8.0 - 0.05)).epsilon(1e-12));
  for (int i = 0; i < 24; ++i)
    CHECK(g.nodes[i] == doctest::Approx(-g.nodes[g.size() - 1 - i]).epsilon(1e-13));
}

TEST_CASE("linear interpolation is exact on lines and zero outside") {
  VecD xs(4), ys(4);
  for (int i = 0; i < 4; ++i) {
    xs[i] = i;
    ys[i] = 2.0 * i + 1.0;
  }
  CHECK(interp_linear(xs, ys, 1.5) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(interp_linear(xs, ys, -0.5) == 0.0);
  CHECK(interp_linear(xs, ys, 3.5) == 0.0);
}

TEST_CASE("pairwise sum matches a compensated reference") {
  std::vector<double> v(1000);
  double x = 0.1;
  for (auto& t : v) {
    t = std::sin(x) * 1e3;
    x += 0.37;
  }
  double kahan = 0.0, comp = 0.0;
  for (double t : v) {
    double y = t - comp;
    double s = kahan + y;
    comp = (s - kahan) - y;
    kahan = s;
  }
  CHECK(pairwise_sum(v) == doctest::Approx(kahan).epsilon(1e-12));
}

TEST_CASE("parallel reduce is independent of the worker count") {
  auto term = [](std::size_t i) { return std::cos(0.01 * static_cast<double>(i)); };
  double s1 = parallel_reduce<double>(5000, 1, term);
  double s4 = parallel_reduce<double>(5000, 4, term);
  CHECK(s1 == s4);  // bitwise: the reduction tree ignores the thread count
}

}
