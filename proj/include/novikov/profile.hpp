#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "novikov/jet.hpp"
#include "novikov/numerics.hpp"

namespace novikov {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ShootingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WaveParams {
  double c = 1.0;
  double a = 0.0;
  double k = 0.0;
  double E = 0.0;
  double phi_minus = 0.0;
  double phi_plus = 0.0;
  double phi_max = 0.0;
  double decay_rate = 0.0;
};

/// Supremum of admissible a for speed c: 3 sqrt(3) c^2 / 16.
double a_supremum(double c);

WaveParams params_from_k(double k, double c);
WaveParams params_from_a(double a, double c);
double k_from_a(double a, double c);

double potential(double phi, double a, double c);
double dpotential(double phi, double a, double c);

/// E - V(phi) written as c (phi^2 - k^2)^2 (phi_M^2 - phi^2) / (2 s (s P + Q)).
/// Both distances are passed explicitly so that callers can supply them without
/// cancellation.
double energy_gap(const WaveParams& p, double dist_to_k, double dist_to_max);
double energy_gap(const WaveParams& p, double phi);

struct GridSpec {
  /// Points per half line; 0 selects max(4096, crest resolution).
  std::size_t n_half = 0;
  /// Half-length; 0 selects the tail rule.
  double L = 0.0;
  double min_L = 25.0;
  double tail_tol = 1e-10;
  /// Grid points per crest width sqrt(mu(0)/|mu''(0)|).
  double crest_points = 16.0;
};

struct WaveProfile {
  WaveParams params;
  double L = 0.0;
  double h = 0.0;
  double eps0 = 0.0;
  /// Amplitude A of the tail phi - k ~ A exp(-C |x|).
  double tail_amplitude = 0.0;
  std::vector<double> x;
  std::vector<double> phi;
  std::vector<double> dphi;
  /// phi - k, carried separately so tails keep full relative precision.
  std::vector<double> dev;
  std::vector<double> mu0, mu1, mu2, mu3, mu4;
  /// (phi - k, phi') at x = -L.
  std::array<double, 2> tail_state{};

  std::size_t size() const { return x.size(); }
  std::size_t center() const { return x.size() / 2; }
};

WaveProfile shoot_profile(const WaveParams& p, const GridSpec& grid = {},
                          const Tolerances& tol = {});

/// States (phi - k, phi') at ascending abscissae nodes >= 0 of the orbit that
/// starts at rest at phi - k = y_crest for x = 0. Only p.a, p.c and p.k are used.
std::vector<std::array<double, 2>> orbit_from_crest(const WaveParams& p, double y_crest,
                                                    const std::vector<double>& nodes);

/// (mu - k) / k at the point phi = k + y, without cancellation.
double mu_excess(const WaveParams& p, double y);

/// x(phi) = int_phi^{phi_M} d xi / sqrt(2 (E - V(xi))), phi in (k, phi_M].
double x_of_phi(const WaveParams& p, double phi, const Tolerances& tol = {});

/// (mu, mu', mu'', mu''', mu'''') at a point (phi, phi') of the wave.
std::array<double, 5> derivatives_closed_form(double phi, double dphi, const WaveParams& p);

/// Taylor series in x of the deviation y = phi - k and of mu at a point with
/// state (y, y'), generated from y'' = phi - a (c - phi^2)^(-3/2).
template <int M, class T = double>
void profile_series(const WaveParams& p, T y0, T v0, Jet<M, T>& Y, Jet<M, T>& Mu) {
  const T k = p.k;
  const T ck = T(p.c) - k * k;
  const T ck32 = ck * std::sqrt(ck);
  Jet<M, T> Y2, D, B;
  Y = Jet<M, T>{};
  Y.c[0] = y0;
  if (M >= 1) Y.c[1] = v0;
  const T D0 = ck - y0 * (2 * k + y0);
  const T q0 = y0 * (2 * k + y0) / D0;
  const T excess = std::expm1(T(1.5) * std::log1p(q0));
  D.c[0] = D0;
  B.c[0] = 1 / (D0 * std::sqrt(D0));
  for (int n = 0; n <= M; ++n) {
    T sq = 0;
    for (int i = 0; i <= n; ++i) sq += Y.c[i] * Y.c[n - i];
    Y2.c[n] = sq;
    if (n >= 1) {
      D.c[n] = -(2 * k * Y.c[n] + sq);
      T s = 0;
      for (int i = 1; i <= n; ++i) s += (T(-0.5) * i - n) * D.c[i] * B.c[n - i];
      B.c[n] = s / (n * D0);
    }
    const T r = n == 0 ? y0 - k * excess : Y.c[n] - k * ck32 * B.c[n];
    if (n + 2 <= M) Y.c[n + 2] = r / ((n + 1) * T(n + 2));
  }
  Mu = B * T(p.a);
  Mu.c[0] = k + k * excess;
}

}  // namespace novikov
