#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "novikov/operators.hpp"
#include "novikov/profile.hpp"

using namespace novikov;

namespace {

const double kRefA = 3.0 * std::sqrt(3.0) / 32.0;

// Plain bisection for k (c - k^2)^(3/2) = a on (0, sqrt(c)/2).
double k_oracle(double a, double c) {
  double lo = 0.0, hi = 0.5 * std::sqrt(c);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (m * std::pow(c - m * m, 1.5) < a ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

const WaveProfile& reference() {
  static const WaveProfile w = shoot_profile(params_from_a(kRefA, 1.0));
  return w;
}

}  // namespace

TEST_CASE("admissible range") {
  CHECK(a_supremum(1.0) == doctest::Approx(3.0 * std::sqrt(3.0) / 16.0).epsilon(1e-15));
  CHECK(a_supremum(2.0) == doctest::Approx(4.0 * a_supremum(1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(params_from_a(0.9, 1.0), ParameterError);
  CHECK_THROWS_AS(params_from_a(-0.1, 1.0), ParameterError);
  CHECK_THROWS_AS(params_from_k(0.5, 1.0), ParameterError);
  CHECK_THROWS_AS(params_from_k(0.1, 0.0), ParameterError);
}

TEST_CASE("k from a matches bisection oracle") {
  const double k = k_from_a(kRefA, 1.0);
  CHECK(k == doctest::Approx(k_oracle(kRefA, 1.0)).epsilon(1e-13));
  CHECK(k == doctest::Approx(0.169651015).epsilon(1e-8));
  for (double c : {0.5, 1.0, 3.0})
    for (double frac : {0.1, 0.5, 0.9}) {
      const double a = frac * a_supremum(c);
      CHECK(k_from_a(a, c) == doctest::Approx(k_oracle(a, c)).epsilon(1e-12));
    }
}

TEST_CASE("closed-form wave parameters") {
  const double k = 0.25;
  const WaveParams p = params_from_k(k, 1.0);
  CHECK(p.a == doctest::Approx(0.25 * std::pow(0.9375, 1.5)).epsilon(1e-15));
  CHECK(p.E == doctest::Approx(k * k * (1 - 2 * k * k) / 2).epsilon(1e-15));
  CHECK(p.phi_max == doctest::Approx(1.0 - 2 * k * k).epsilon(1e-13));
  CHECK(p.decay_rate == doctest::Approx(std::sqrt((1 - 4 * k * k) / (1 - k * k))).epsilon(1e-15));
  CHECK(dpotential(p.phi_plus, p.a, 1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  CHECK(potential(p.phi_max, p.a, 1.0) == doctest::Approx(p.E).epsilon(1e-13));
  CHECK(potential(k, p.a, 1.0) == doctest::Approx(p.E).epsilon(1e-14));

  const WaveParams q = params_from_k(0.3, 2.5);
  CHECK(q.phi_max == doctest::Approx((2.5 - 2 * 0.09) / std::sqrt(2.5)).epsilon(1e-13));
}

TEST_CASE("potential derivative and energy gap") {
  const WaveParams p = params_from_a(kRefA, 1.0);
  for (double phi : {0.2, 0.5, 0.8, 0.93}) {
    const double h = 1e-6;
    const double fd = (potential(phi + h, p.a, 1.0) - potential(phi - h, p.a, 1.0)) / (2 * h);
    CHECK(dpotential(phi, p.a, 1.0) == doctest::Approx(fd).epsilon(1e-8));
    CHECK(energy_gap(p, phi) == doctest::Approx(p.E - potential(phi, p.a, 1.0)).epsilon(1e-10));
  }
  CHECK(energy_gap(p, 0.0, p.phi_max - p.k) == 0.0);
  CHECK(energy_gap(p, p.phi_max - p.k, 0.0) == 0.0);
}

TEST_CASE("reference profile invariants") {
  const WaveProfile& w = reference();
  const WaveParams& p = w.params;
  const std::size_t n = w.size(), m = w.center();
  REQUIRE(n % 2 == 1);
  CHECK(w.x[m] == 0.0);
  CHECK(w.phi[m] == doctest::Approx(p.phi_max).epsilon(1e-11));
  double worst_energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(w.phi[i] == w.phi[n - 1 - i]);
    CHECK(w.phi[i] <= w.phi[m]);
    CHECK(w.dev[i] > 0.0);
    const double lhs = 0.5 * w.dphi[i] * w.dphi[i];
    const double rhs = energy_gap(p, w.dev[i], p.phi_max - w.phi[i]);
    worst_energy = std::max(worst_energy, std::abs(lhs - rhs));
  }
  CHECK(worst_energy < 1e-8);
  CHECK(w.dev.front() < 1e-10);
  CHECK(w.dphi[m] == 0.0);
  for (std::size_t i = 1; i < m; ++i) CHECK(w.dphi[i] > 0.0);
}

TEST_CASE("profile agrees with the quadrature x(phi)") {
  const WaveProfile& w = reference();
  const WaveParams& p = w.params;
  double worst = 0.0;
  for (std::size_t i = w.center() - 1; i > 0; i -= 97) {
    if (w.dev[i] < 1e-3 * (p.phi_max - p.k)) break;
    worst = std::max(worst, std::abs(x_of_phi(p, w.phi[i]) + w.x[i]));
  }
  CHECK(worst < 1e-7);
  CHECK(x_of_phi(p, p.phi_max) == 0.0);
  CHECK_THROWS_AS(x_of_phi(p, p.k), DomainError);
}

TEST_CASE("tail decays at the predicted rate") {
  const WaveProfile& w = reference();
  const double C = w.params.decay_rate;
  const std::size_t i = 50, j = 450;
  const double rate = std::log(w.dev[j] / w.dev[i]) / (w.x[j] - w.x[i]);
  CHECK(rate == doctest::Approx(C).epsilon(1e-4));
}

TEST_CASE("scaling covariance phi_{c,a} = sqrt(c) phi_{1,a/c^2}") {
  GridSpec g;
  g.L = 28.0;
  g.n_half = 4096;
  for (double c : {0.25, 4.0}) {
    const WaveProfile w1 = shoot_profile(params_from_a(kRefA, 1.0), g);
    const WaveProfile wc = shoot_profile(params_from_a(kRefA * c * c, c), g);
    REQUIRE(w1.size() == wc.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < w1.size(); ++i)
      worst = std::max(worst, std::abs(wc.phi[i] - std::sqrt(c) * w1.phi[i]));
    CHECK(worst < 1e-8 * std::sqrt(c));
  }
}

TEST_CASE("mu derivatives from the Taylor recursion") {
  const WaveProfile& w = reference();
  const double h = w.h;
  double worst = 0.0;
  const std::vector<double> d1 = central_diff(w.mu0, h, 1, 8);
  for (std::size_t i = 100; i + 100 < w.size(); i += 211) {
    worst = std::max(worst, std::abs(d1[i] - w.mu1[i]) / (std::abs(w.mu1[i]) + 1e-3));
  }
  CHECK(worst < 1e-6);
  // mu = phi - phi'' and mu = a (c - phi^2)^(-3/2).
  const WaveParams& p = w.params;
  for (std::size_t i : {std::size_t(10), w.center() / 2, w.center()}) {
    const double phi = w.phi[i];
    CHECK(w.mu0[i] == doctest::Approx(p.a / std::pow(p.c - phi * phi, 1.5)).epsilon(1e-12));
    const auto d = derivatives_closed_form(phi, w.dphi[i], p);
    CHECK(d[0] == doctest::Approx(w.mu0[i]).epsilon(1e-13));
    CHECK(d[2] == doctest::Approx(w.mu2[i]).epsilon(1e-12));
  }
}

TEST_CASE("Taylor series satisfies the profile equation") {
  const WaveParams p = params_from_a(kRefA, 1.0);
  Jet<6> Y, Mu;
  const double y0 = 0.3, v0 = 0.1;
  profile_series<6>(p, y0, v0, Y, Mu);
  const double phi = p.k + y0;
  CHECK(Y.derivative(2) == doctest::Approx(phi - p.a / std::pow(1 - phi * phi, 1.5)).epsilon(1e-13));
  // mu = phi - phi'' holds order by order.
  for (int n = 0; n + 2 <= 6; ++n) {
    const double phi_n = Y.derivative(n) + (n == 0 ? p.k : 0.0);
    CHECK(Mu.derivative(n) == doctest::Approx(phi_n - Y.derivative(n + 2)).epsilon(1e-10));
  }
}

TEST_CASE("crest resolution rule and truncation") {
  const WaveProfile w = shoot_profile(params_from_a(3 * a_supremum(1.0) / 16, 1.0));
  const double ell = std::sqrt(w.mu0[w.center()] / std::abs(w.mu2[w.center()]));
  CHECK(ell / w.h >= 16.0 - 1e-9);
  CHECK(w.L >= 25.0);
  CHECK(w.dev.front() < 1e-10);
}

TEST_CASE("orbits with independent energy") {
  const WaveParams p = params_from_a(kRefA, 1.0);
  const WaveProfile& w = reference();
  const std::size_t m = w.center();
  const std::vector<double> x = {0.0, w.x[m + 100], w.x[m + 500], w.x[m + 1500]};
  const auto s = orbit_from_crest(p, p.phi_max - p.k, x);
  CHECK(s[0][0] == doctest::Approx(w.dev[m]).epsilon(1e-14));
  CHECK(s[1][0] == doctest::Approx(w.dev[m + 100]).epsilon(1e-10));
  CHECK(s[2][0] == doctest::Approx(w.dev[m + 500]).epsilon(1e-10));
  CHECK(s[3][0] == doctest::Approx(w.dev[m + 1500]).epsilon(1e-9));
  CHECK(mu_excess(p, 0.0) == 0.0);
}
