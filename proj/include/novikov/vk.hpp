#pragma once

#include <vector>

#include "novikov/profile.hpp"

namespace novikov {

/// E(mu) = int (mu phi - k^2) dx, by quadrature in phi.
double functional_E(const WaveParams& p, const Tolerances& tol = {});
/// F1(mu) = int (mu^(2/3) - k^(2/3)) dx, by quadrature in phi.
double functional_F1(const WaveParams& p, const Tolerances& tol = {});
/// calF = E - 3 k^(4/3) F1 as a single quadrature.
double calF(const WaveParams& p, const Tolerances& tol = {});

/// Trapezoid sums of the same integrals on the profile grid.
double functional_E_grid(const WaveProfile& w);
double functional_F1_grid(const WaveProfile& w);
/// F2(mu) = int (mu^(-8/3) mu_x^2 + 9 (mu^(-2/3) - k^(-2/3))) dx on the grid.
double functional_F2(const WaveProfile& w);

/// Smallest value over the grid of dF/dm - 2 (phi - k), where
/// dF/dm = 2 phi - 2 k sqrt((c - phi^2)/(c - k^2)); nonnegative when the
/// pointwise bound holds.
double dF_dm_margin(const WaveProfile& w);

struct VKOptions {
  Tolerances tol;
  /// Also compute E and F1 on shot profiles and record the agreement.
  bool grid_check = false;
  GridSpec grid;
  std::size_t workers = 0;
};

struct VKScan {
  double c = 1.0;
  std::vector<double> k_grid;
  std::vector<double> calF_values;
  std::vector<double> dcalF_dk;
  std::vector<double> inner_products;
  std::vector<double> E_values, F1_values;
  /// Largest relative quadrature-vs-grid difference per k (grid_check only).
  std::vector<double> grid_agreement;
  bool verdict = false;
};

/// calF over an ascending grid in (0, sqrt(c)/2) with at least 3 points.
VKScan vk_scan(double c, const std::vector<double>& k_grid, const VKOptions& opts = {});

/// k^(11/3) (c - k^2)^2 / (18 c).
double inner_product_prefactor(double k, double c);

struct Witness {
  double f = 0.0;
  /// c^2 (c - k^2)^3, 16 k^2 z^2 (c - z^2)^3 and its maximum 27 k^2 c^4 / 16.
  double lhs = 0.0;
  double g = 0.0;
  double g_max = 0.0;
};

/// f(z) = z sqrt((c - k^2)/(c - z^2)) - 3k + 2k (c - z^2)/(c - k^2), z in [k, sqrt(c)).
Witness positivity_witness(const WaveParams& p, double z);

struct RescaleResult {
  double h = 0.0;
  std::vector<double> x;
  std::vector<double> mu;
  /// 2a mu_a + E mu_E + c mu_c - mu/2 from separate central differences.
  std::vector<double> residual;
  /// The same combination taken along the c-scaling and a-scaling orbits.
  std::vector<double> residual_c_route;
  std::vector<double> residual_a_route;
  double sup_residual = 0.0;
  double sup_mu = 0.0;
};

/// Checks 2a mu_a + E mu_E + c mu_c = mu/2 at fixed x on [0, X], where X is the
/// point with phi - k at 10% of its crest value. Relative steps h in each
/// parameter; h is halved if a perturbed orbit is inadmissible.
RescaleResult rescale_identity_check(const WaveParams& p, double h, std::size_t n = 200);

/// mu(x) on the crest-aligned orbit of the profile ODE with independent
/// (a, E, c), at ascending x >= 0.
std::vector<double> orbit_mu(double a, double E, double c, const std::vector<double>& x);

}  // namespace novikov
