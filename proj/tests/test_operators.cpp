#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "novikov/operators.hpp"

using namespace novikov;

namespace {

const double kRefA = 3.0 * std::sqrt(3.0) / 32.0;

std::shared_ptr<const CoefficientField> field_for(double a, double c = 1.0, GridSpec g = {}) {
  auto w = std::make_shared<WaveProfile>(shoot_profile(params_from_a(a, c), g));
  return std::make_shared<CoefficientField>(coefficient_fields(w));
}

const CoefficientField& reference() {
  static const auto f = field_for(kRefA);
  return *f;
}

}  // namespace

TEST_CASE("Lagrange multipliers") {
  const WaveParams p = params_from_a(kRefA, 1.0);
  const auto [w0, w1] = lagrange_multipliers(p);
  CHECK(w0 == doctest::Approx(-9.0 / std::pow(kRefA, 2.0 / 3.0)).epsilon(1e-14));
  CHECK(w0 == doctest::Approx(-30.238105).epsilon(1e-7));
  CHECK(w1 == doctest::Approx(9.0 * (2.0 * p.E + 1.0) / std::pow(kRefA, 4.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("asymptotic constants and essential spectrum edge") {
  for (int j = 3; j <= 15; j += 3) {
    const WaveParams p = params_from_a(j * a_supremum(1.0) / 16.0, 1.0);
    const FieldConstants fc = field_constants(p);
    const double k = p.k, c = p.c;
    const double sigma0 = 8 * (c - 4 * k * k) / (std::pow(k, 8.0 / 3.0) * (c - k * k));
    CHECK(fc.sigma0 > 0);
    CHECK(fc.sigma0 == doctest::Approx(sigma0).epsilon(1e-14));
    CHECK(dispersion(0.0, fc) == doctest::Approx(fc.sigma0).epsilon(1e-12));
    CHECK(fc.G_inf + 2 * fc.omega0 * fc.f_inf == doctest::Approx(fc.sigma0 / 4).epsilon(1e-10));
    // The dispersion curve is increasing in r, so sigma0 is its minimum.
    for (double r : {0.1, 1.0, 5.0}) CHECK(dispersion(r, fc) > fc.sigma0);
    // Bounds on the weight f.
    CHECK(fc.f0 > 0);
    CHECK(fc.f0 < 1);
    CHECK(fc.f_inf > 1);
  }
}

TEST_CASE("coefficient fields approach their limits") {
  const CoefficientField& f = reference();
  CHECK(f.Fx.front() == doctest::Approx(f.F_inf).epsilon(1e-8));
  CHECK(f.Gx.front() == doctest::Approx(f.G_inf).epsilon(1e-7));
  CHECK(f.fx.front() == doctest::Approx(f.f_inf).epsilon(1e-8));
  const std::size_t m = f.profile->center();
  CHECK(f.fx[m] == doctest::Approx(f.f0).epsilon(1e-10));
  CHECK(f.sigma0 == doctest::Approx(826.3625).epsilon(1e-6));
  CHECK(f.G_inf == doctest::Approx(886.8388).epsilon(1e-6));
}

TEST_CASE("coefficient derivatives match differences of the fields") {
  const CoefficientField& f = reference();
  const double h = f.profile->h;
  const auto dF = diff1(f.Fx, h), dG = diff1(f.Gx, h), d2F = diff1(f.dFx, h),
             d3F = diff1(f.d2Fx, h), d2G = diff1(f.dGx, h);
  double e1 = 0, e2 = 0, e3 = 0, e4 = 0, e5 = 0, sF = 0, sG = 0;
  for (std::size_t i = 10; i + 10 < f.Fx.size(); ++i) {
    e1 = std::max(e1, std::abs(dF[i] - f.dFx[i]));
    e2 = std::max(e2, std::abs(dG[i] - f.dGx[i]));
    e3 = std::max(e3, std::abs(d2F[i] - f.d2Fx[i]));
    e4 = std::max(e4, std::abs(d3F[i] - f.d3Fx[i]));
    e5 = std::max(e5, std::abs(d2G[i] - f.d2Gx[i]));
    sF = std::max({sF, std::abs(f.dFx[i]), std::abs(f.d2Fx[i]), std::abs(f.d3Fx[i])});
    sG = std::max({sG, std::abs(f.dGx[i]), std::abs(f.d2Gx[i])});
  }
  CHECK(e1 < 1e-6 * sF);
  CHECK(e3 < 1e-6 * sF);
  CHECK(e4 < 1e-5 * sF);
  CHECK(e2 < 1e-6 * sG);
  CHECK(e5 < 1e-5 * sG);
}

TEST_CASE("weight and S-operator interval") {
  const CoefficientField& f = reference();
  const WaveParams& p = f.params();
  for (std::size_t i = 0; i < f.fx.size(); i += 101) {
    const double phi = f.profile->phi[i];
    CHECK(f.fx[i] == doctest::Approx(std::cbrt(p.a * p.a) /
                                     (3 * phi * std::pow(f.profile->mu0[i], 5.0 / 3.0)))
                         .epsilon(1e-12));
  }
  const Interval s = s_operator_bounds(f);
  CHECK(s.lo < 0);
  CHECK(s.hi > 1);
  CHECK(s.lo == doctest::Approx(f.f0 - 1));
}

TEST_CASE("centred differences are exact on polynomials") {
  std::vector<double> v(40);
  const double h = 0.1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = double(i) * h;
    v[i] = x * x * x;
  }
  for (int order : {4, 6, 8}) {
    const auto d1 = central_diff(v, h, 1, order), d2 = central_diff(v, h, 2, order);
    for (std::size_t i = std::size_t(order); i + order < v.size(); ++i) {
      const double x = double(i) * h;
      CHECK(d1[i] == doctest::Approx(3 * x * x).epsilon(1e-10));
      CHECK(d2[i] == doctest::Approx(6 * x).epsilon(1e-9));
    }
  }
  CHECK_THROWS(central_diff(v, h, 3, 4));
  CHECK_THROWS(central_diff(v, h, 1, 5));
}

TEST_CASE("translation mode is in the kernel of the discrete eigenvalue operator") {
  GridSpec g;
  g.crest_points = 48;
  const auto f = field_for(kRefA, 1.0, g);
  const DiscreteOptions o{8, 32.0};
  const DiscreteResidual r = apply_eigensystem_discrete(f->profile->mu1, 0.0, *f, o);
  double sup = 0.0;
  for (double v : r.residual) sup = std::max(sup, std::abs(v));
  CHECK(r.scale > 0);
  CHECK(sup <= 1e-4 * r.scale);

  // A function outside the kernel is not annihilated.
  const DiscreteResidual q = apply_eigensystem_discrete(f->profile->mu0, 0.0, *f, o);
  double supq = 0.0;
  for (double v : q.residual) supq = std::max(supq, std::abs(v));
  CHECK(supq > 1e-2 * q.scale);
}
