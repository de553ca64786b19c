#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "novikov/spectrum.hpp"

using namespace novikov;

namespace {

const double kRefA = 3.0 * std::sqrt(3.0) / 32.0;

struct Reference {
  std::shared_ptr<const CoefficientField> field;
  std::unique_ptr<EvansSystem> sys;
  SpectralReport report;
};

const Reference& reference() {
  static const Reference r = [] {
    Reference r;
    auto w = std::make_shared<WaveProfile>(shoot_profile(params_from_a(kRefA, 1.0)));
    r.field = std::make_shared<CoefficientField>(coefficient_fields(w));
    r.sys = std::make_unique<EvansSystem>(r.field);
    r.report = verify_H1(params_from_a(kRefA, 1.0));
    return r;
  }();
  return r;
}

cplx D(cplx lam) { return evans_eval(lam, *reference().sys).value; }

}  // namespace

TEST_CASE("perimeter runs counter-clockwise from the lower-left corner") {
  const Rect r{-1.0, 3.0, 2.0};
  CHECK(perimeter_point(r, 0.0) == cplx(-1.0, -2.0));
  CHECK(perimeter_point(r, 0.25) == cplx(3.0, -2.0));
  CHECK(perimeter_point(r, 0.5) == cplx(3.0, 2.0));
  CHECK(perimeter_point(r, 0.75) == cplx(-1.0, 2.0));
  CHECK(contains(r, 0.0));
  CHECK_FALSE(contains(r, cplx(3.5, 0.0)));
}

TEST_CASE("winding numbers of elementary functions") {
  const Rect unit{-0.5, 0.5, 0.5};
  CHECK(winding_number(unit, [](cplx z) { return z; }).winding == 1);
  CHECK(winding_number(unit, [](cplx z) { return z * z; }).winding == 2);
  CHECK(winding_number(unit, [](cplx) { return cplx(1.0); }).winding == 0);
  CHECK(winding_number(unit, [](cplx z) { return 1.0 / z; }).winding == -1);
  CHECK(winding_number(unit, [](cplx z) { return z - 2.0; }).winding == 0);
  const auto w = winding_number(unit, [](cplx z) { return std::pow(z, 20); });
  CHECK(w.winding == 20);
  CHECK(w.contour.refined);
  CHECK_THROWS_AS(winding_number(unit, [](cplx z) { return z - 0.5; }), ContourError);
}

TEST_CASE("default contours") {
  const ContourPair cp = default_contours(826.0, -68.0);
  CHECK(cp.delta == doctest::Approx(68.0 / 20));
  CHECK(cp.gamma2.re_max < cp.gamma1.re_max);
  CHECK(cp.gamma2.im_half <= cp.gamma1.im_half);
  CHECK(contains(cp.gamma1, 0.0));
  CHECK(contains(cp.gamma2, 0.0));
  CHECK(cp.gamma2.re_min < -68.0);
  CHECK(cp.gamma1.re_max < 826.0);
}

TEST_CASE("bounds for the reference wave") {
  const SpectralReport& r = reference().report;
  CHECK(r.sigma1 == doctest::Approx(-68.266).epsilon(0.01));
  CHECK(r.energy_bound == doctest::Approx(-947.25).epsilon(0.01));
  CHECK(r.sigma1 < 0);
  CHECK(r.sigma1 < r.lambda_minus_SL);
  CHECK(r.energy_bound <= r.sigma1);
  CHECK(r.energy_bound <= 2 * r.constants.omega0);
  CHECK(bound_sigma1(r.constants, r.lambda_minus_SL) == r.sigma1);
  CHECK(std::abs(r.constants.G_inf) <= 2 * r.constants.omega0 - r.energy_bound);
}

TEST_CASE("Assumption H1 for the reference wave") {
  const SpectralReport& r = reference().report;
  CHECK(r.winding_gamma1 == 1);
  CHECK(r.winding_gamma2 == 2);
  CHECK(r.h1_verdict);
  CHECK(r.gamma1.re_max < r.sigma0);
  CHECK(r.gamma2.re_max < r.sigma0);
  CHECK(r.diagnostics.d0_ratio <= 1e-6);
  CHECK(r.diagnostics.sl_zero_ratio <= 1e-6);
  CHECK(r.diagnostics.sl_winding_small == 1);
  CHECK(r.diagnostics.sl_winding_expanded == 2);
}

TEST_CASE("negative eigenvalue of the Sturm-Liouville operator") {
  const Reference& ref = reference();
  const LambdaMinusResult lm = locate_lambda_minus(*ref.sys);
  CHECK(lm.lambda_minus < lm.scan_start);
  CHECK(lm.bracket_lo <= lm.lambda_minus);
  CHECK(lm.lambda_minus <= lm.bracket_hi);
  const double dm = evans_eval_SL(lm.lambda_minus, *ref.sys).value.real();
  CHECK(std::abs(dm) < 1e-6 * lm.scale);
  CHECK(lm.winding_small == 1);
  CHECK(lm.winding_expanded == 2);
}

TEST_CASE("winding counts are robust and localise the negative eigenvalue") {
  const SpectralReport& r = reference().report;
  const double d = r.diagnostics.delta;
  // No spectrum between 0 and the essential spectrum near the origin.
  CHECK(winding_number(Rect{d / 4, d / 2, d / 4}, D).winding == 0);
  // Halving the height of Gamma2 keeps the count.
  Rect g2 = r.gamma2;
  g2.im_half *= 0.5;
  CHECK(winding_number(g2, D).winding == 2);
  // The negative eigenvalue lies in exactly one half of (sigma1, 0).
  const double eps = 1e-3 * d;
  const int left = winding_number(Rect{r.sigma1, r.sigma1 / 2, d}, D).winding;
  const int right = winding_number(Rect{r.sigma1 / 2, -eps, d}, D).winding;
  CHECK(left + right == 1);
}

TEST_CASE("standard family and parameter errors") {
  CHECK(standard_wave(8).a == doctest::Approx(kRefA).epsilon(1e-15));
  CHECK_THROWS_AS(standard_wave(16), ParameterError);
  CHECK_THROWS_AS(verify_H1(WaveParams{}), PipelineError);
}
