#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "novikov/numerics.hpp"
#include "novikov/parallel.hpp"

using namespace novikov;

TEST_CASE("dp5 integrates exponential decay") {
  RealRhs rhs = [](double, std::span<const double> y, std::span<double> d) { d[0] = -y[0]; };
  const Trajectory t = integrate_ode(rhs, 0.0, {1.0}, 5.0, {});
  CHECK(t.final_state()[0] == doctest::Approx(std::exp(-5.0)).epsilon(1e-9));
}

TEST_CASE("dp5 dense output and output points") {
  RealRhs rhs = [](double, std::span<const double> y, std::span<double> d) {
    d[0] = y[1];
    d[1] = -y[0];
  };
  OdeOptions o;
  o.output_points = {0.3, 1.7, 2.9};
  const Trajectory t = integrate_ode(rhs, 0.0, {0.0, 1.0}, 3.0, {}, o);
  REQUIRE(t.outputs().size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(t.outputs()[i][0] == doctest::Approx(std::sin(o.output_points[i])).epsilon(1e-9));
  const auto mid = t.state_at(1.234);
  CHECK(mid[0] == doctest::Approx(std::sin(1.234)).epsilon(1e-7));
  CHECK(mid[1] == doctest::Approx(std::cos(1.234)).epsilon(1e-7));
}

TEST_CASE("dp5 integrates backwards") {
  RealRhs rhs = [](double, std::span<const double> y, std::span<double> d) { d[0] = y[0]; };
  const Trajectory t = integrate_ode(rhs, 2.0, {1.0}, 0.0, {});
  CHECK(t.final_state()[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
}

TEST_CASE("dp5 reports blow-up") {
  RealRhs rhs = [](double, std::span<const double> y, std::span<double> d) { d[0] = y[0] * y[0]; };
  CHECK_THROWS_AS(integrate_ode(rhs, 0.0, {1.0}, 2.0, {}), IntegrationError);
}

TEST_CASE("complex integration") {
  const cplx w(0.5, 2.0);
  ComplexRhs rhs = [&](double, std::span<const cplx> y, std::span<cplx> d) { d[0] = w * y[0]; };
  const ComplexSolution s = integrate_ode_complex(rhs, 0.0, {cplx(1.0)}, 1.5, {});
  CHECK(std::abs(s.final_state[0] - std::exp(1.5 * w)) < 1e-8 * std::abs(std::exp(1.5 * w)));
}

TEST_CASE("tolerance validation") {
  Tolerances t;
  t.ode_rel = -1.0;
  CHECK_THROWS(t.validate());
  CHECK_NOTHROW(Tolerances{}.validate());
}

TEST_CASE("root finding") {
  CHECK(find_root([](double x) { return std::cos(x); }, 0.0, 2.0, 1e-14) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-13));
  CHECK(find_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0, 1e-15,
                  [](double x) { return 3.0 * x * x; }) ==
        doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                  std::invalid_argument);
}

TEST_CASE("adaptive quadrature") {
  const QuadResult r = quad_adaptive([](double x) { return x * x * x * x * x; }, 0.0, 1.0, 1e-12);
  CHECK(r.value == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(quad_adaptive([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 1e-12).value ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-11));
}

TEST_CASE("square-root endpoint quadrature") {
  CHECK(quad_singular([](double x) { return 1.0 / std::sqrt(1.0 - x); }, 0.0, 1.0,
                      QuadMode::sqrt_upper, 1e-12) == doctest::Approx(2.0).epsilon(1e-11));
  GapIntegrand g = [](double x, double gap) { return 1.0 / std::sqrt(gap * (1.0 + x)); };
  CHECK(quad_singular(g, 0.0, 1.0, QuadMode::sqrt_upper, 1e-12) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-11));
}

TEST_CASE("biquadratic roots") {
  const double C = 0.7;
  const auto r = biquadratic_roots(4.0 + C * C, -4.0 * C * C);
  CHECK(r[0].real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r[1].real() == doctest::Approx(C).epsilon(1e-14));
  CHECK(r[2].real() == doctest::Approx(-C).epsilon(1e-14));
  CHECK(r[3].real() == doctest::Approx(-2.0).epsilon(1e-14));

  const cplx a2(1.5, -0.3), a0(-2.0, 0.7);
  const auto z = biquadratic_roots(a2, a0);
  for (const cplx& m : z) CHECK(std::abs(m * m * m * m - a2 * m * m - a0) < 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(z[i].real() >= z[i + 1].real());

  const std::array<cplx, 4> prev = {z[2], z[0], z[3], z[1]};
  const auto c = biquadratic_roots_continued(a2 * 1.001, a0, prev);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(c[i] - prev[i]) < 1e-2);
}

TEST_CASE("parallel map keeps order and propagates errors") {
  const auto v = parallel_map<int>(100, [](std::size_t i) { return int(i * i); }, 3);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == int(i * i));
  CHECK_THROWS_AS(parallel_for(
                      10,
                      [](std::size_t i) {
                        if (i == 7) throw std::runtime_error("boom");
                      },
                      2),
                  std::runtime_error);
  CHECK(worker_count() >= 1);
}
