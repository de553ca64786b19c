#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "novikov/vk.hpp"

using namespace novikov;

namespace {

const double kRefA = 3.0 * std::sqrt(3.0) / 32.0;

const WaveProfile& reference() {
  static const WaveProfile w = shoot_profile(params_from_a(kRefA, 1.0));
  return w;
}

}  // namespace

TEST_CASE("integrands vanish at the end state") {
  const WaveParams p = params_from_a(kRefA, 1.0);
  const double k = p.k;
  CHECK(p.a * k / std::pow(1 - k * k, 1.5) - k * k == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(std::cbrt(p.a * p.a) / (1 - k * k) == doctest::Approx(std::cbrt(k * k)).epsilon(1e-14));
}

TEST_CASE("functionals: quadrature against grid sums") {
  const WaveProfile& w = reference();
  const double E = functional_E(w.params), F1 = functional_F1(w.params);
  CHECK(E > 0);
  CHECK(F1 > 0);
  CHECK(functional_E_grid(w) == doctest::Approx(E).epsilon(1e-5));
  CHECK(functional_F1_grid(w) == doctest::Approx(F1).epsilon(1e-5));
  const double F = calF(w.params);
  CHECK(std::abs(F - (E - 3 * std::pow(w.params.k, 4.0 / 3.0) * F1)) < 1e-8 * std::abs(F));
  CHECK(F > 0);
}

TEST_CASE("F2 is finite, its integrand decays, and it scales with c") {
  const WaveProfile& w = reference();
  const double F2 = functional_F2(w);
  CHECK(std::isfinite(F2));
  const WaveParams& p = w.params;
  auto integrand = [&](std::size_t i) {
    return std::pow(w.mu0[i], -8.0 / 3.0) * w.mu1[i] * w.mu1[i] +
           9 * (std::pow(w.mu0[i], -2.0 / 3.0) - std::pow(p.k, -2.0 / 3.0));
  };
  CHECK(std::abs(integrand(0)) < 1e-10 * std::abs(integrand(w.center())));
  for (double c : {0.5, 2.0}) {
    const WaveProfile wc = shoot_profile(params_from_a(kRefA * c * c, c));
    CHECK(functional_F2(wc) == doctest::Approx(std::pow(c, -1.0 / 3.0) * F2).epsilon(1e-8));
  }
}

TEST_CASE("pointwise bound on the variational derivative") {
  CHECK(dF_dm_margin(reference()) >= 0.0);
}

TEST_CASE("VK scan on the reference grid") {
  std::vector<double> k;
  for (int i = 1; i <= 24; ++i) k.push_back(0.02 * i);
  const VKScan s = vk_scan(1.0, k);
  CHECK(s.verdict);
  for (std::size_t i = 0; i < k.size(); ++i) {
    CHECK(s.calF_values[i] > 0);
    CHECK(s.dcalF_dk[i] < 0);
    CHECK(s.inner_products[i] < 0);
    CHECK(inner_product_prefactor(k[i], 1.0) > 0);
    if (i) CHECK(s.calF_values[i] < s.calF_values[i - 1]);
  }
  CHECK_THROWS_AS(vk_scan(1.0, {0.1, 0.3}), ParameterError);
  CHECK_THROWS_AS(vk_scan(1.0, {0.3, 0.1, 0.2}), ParameterError);
  CHECK_THROWS_AS(vk_scan(1.0, {0.1, 0.2, 0.5}), ParameterError);
}

TEST_CASE("VK scan is covariant under the speed scaling") {
  std::vector<double> k1, k4;
  for (int i = 1; i <= 8; ++i) {
    k1.push_back(0.05 * i);
    k4.push_back(0.1 * i);
  }
  const VKScan s1 = vk_scan(1.0, k1), s4 = vk_scan(4.0, k4);
  CHECK(s4.verdict);
  // calF has the dimension of phi^2 x length: calF_c(sqrt(c) k) = c calF_1(k).
  for (std::size_t i = 0; i < k1.size(); ++i)
    CHECK(s4.calF_values[i] == doctest::Approx(4.0 * s1.calF_values[i]).epsilon(1e-8));
}

TEST_CASE("quadrature agrees with grid sums across the scan") {
  std::vector<double> k = {0.05, 0.15, 0.25, 0.35, 0.45};
  VKOptions o;
  o.grid_check = true;
  const VKScan s = vk_scan(1.0, k, o);
  for (double g : s.grid_agreement) CHECK(g < 1e-5);
}

TEST_CASE("positivity witness") {
  const double c = 1.0;
  for (double k : {0.05, 0.15, 0.25, 0.35, 0.45}) {
    const WaveParams p = params_from_k(k, c);
    CHECK(positivity_witness(p, k).f == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(positivity_witness(p, 0.5 * (k + 1.0)).f > 0);
    const Witness mid = positivity_witness(p, 0.5);
    CHECK(mid.g == doctest::Approx(mid.g_max).epsilon(1e-14));
    CHECK(mid.lhs > 27.0 * std::pow(c, 5) / 64.0);
    for (double z = k; z < 0.999; z += 0.0371) {
      const Witness w = positivity_witness(p, z);
      CHECK(w.lhs > w.g);
      CHECK(w.g <= w.g_max * (1 + 1e-14));
      if (z > k) CHECK(w.f > 0);
    }
  }
  CHECK_THROWS_AS(positivity_witness(params_from_k(0.2, 1.0), 0.1), DomainError);
}

TEST_CASE("rescaling identity") {
  const WaveParams p = params_from_a(kRefA, 1.0);
  const RescaleResult fine = rescale_identity_check(p, 1e-5);
  CHECK(fine.sup_residual < 1e-3 * fine.sup_mu);
  double route = 0.0;
  for (std::size_t i = 0; i < fine.x.size(); ++i)
    route = std::max(route, std::abs(fine.residual_a_route[i] - fine.residual[i]));
  CHECK(route < 1e-6);
  const RescaleResult r1 = rescale_identity_check(p, 1e-2), r2 = rescale_identity_check(p, 5e-3);
  CHECK(r1.sup_residual / r2.sup_residual == doctest::Approx(4.0).epsilon(0.2));
}
