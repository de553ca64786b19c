#include "novikov/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace novikov {

namespace {

void check_speed(double c) {
  if (!(c > 0) || !std::isfinite(c)) throw ParameterError("wave speed c must be positive");
}

double phi_plus_root(double a, double c) {
  const double sc = std::sqrt(c);
  auto D = [&](double phi) {
    const double s2 = std::max(0.0, c - phi * phi);
    return a - phi * s2 * std::sqrt(s2);
  };
  return find_root(D, 0.5 * sc, sc, 1e-16);
}

// y'' = y - k((1 + q)^(3/2) - 1), q = y (2k + y) / (c - (k + y)^2).
double deviation_force(double k, double ck, double y) {
  const double w = y * (2.0 * k + y);
  const double D = ck - w;
  if (!(D > 0)) return std::numeric_limits<double>::quiet_NaN();
  return y - k * std::expm1(1.5 * std::log1p(w / D));
}

struct Pass {
  double crest = 0.0;
  Trajectory traj;
};

Pass shoot_pass(const WaveParams& p, double eps, double x0, double span, const Tolerances& tol) {
  const double k = p.k, ck = p.c - p.k * p.k, C = p.decay_rate;
  RealRhs rhs = [k, ck](double, std::span<const double> s, std::span<double> d) {
    d[0] = s[1];
    d[1] = deviation_force(k, ck, s[0]);
  };
  OdeOptions opts;
  opts.abs_per_component = {1e-3 * eps * tol.ode_rel, 1e-3 * eps * C * tol.ode_rel};
  opts.stop = [](double, std::span<const double> s) { return s[1] <= 0.0; };
  Pass out;
  try {
    out.traj = integrate_ode(rhs, x0, {eps, C * eps}, x0 + span, tol, opts);
  } catch (const IntegrationError& e) {
    throw ShootingError(std::string("shooting left the admissible strip: ") + e.what());
  }
  if (!out.traj.stopped_early()) throw ShootingError("shooting: no crest reached");
  const auto& xs = out.traj.step_points();
  const double xa = xs[xs.size() - 2], xb = xs.back();
  auto v = [&](double x) { return out.traj.component_at(x, 1); };
  out.crest = v(xb) == 0.0 ? xb : find_root(v, xa, xb, 1e-15);
  return out;
}

constexpr int kTaylorOrder = 24;

// Advances (y, y') through the given abscissae with truncated Taylor series,
// subdividing any interval whose last series terms are not negligible.
using State = std::array<long double, 2>;

std::vector<State> taylor_pass(const WaveParams& p, State s, long double x0,
                               const std::vector<double>& nodes) {
  std::vector<State> out;
  out.reserve(nodes.size());
  long double x = x0;
  Jet<kTaylorOrder, long double> Y, Mu;
  for (double target : nodes) {
    while (x < target) {
      long double h = target - x;
      while (true) {
        profile_series<kTaylorOrder, long double>(p, s[0], s[1], Y, Mu);
        const long double tail = std::abs(Y.c[kTaylorOrder]) * std::pow(h, kTaylorOrder) +
                                 std::abs(Y.c[kTaylorOrder - 1]) * std::pow(h, kTaylorOrder - 1);
        if (tail <= 1e-19L * std::abs(s[0]) || h < 1e-12L) break;
        h *= 0.5L;
      }
      long double y = 0, v = 0;
      for (int i = kTaylorOrder; i >= 0; --i) {
        y = y * h + Y.c[i];
        if (i >= 1) v = v * h + i * Y.c[i];
      }
      s = {y, v};
      if (!(y > 0) || !((p.k + y) * (p.k + y) < p.c))
        throw ShootingError("shooting: profile left the admissible strip");
      x = (target - x) == h ? (long double)target : x + h;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

double a_supremum(double c) { return 3.0 * std::sqrt(3.0) * c * c / 16.0; }

WaveParams params_from_k(double k, double c) {
  check_speed(c);
  if (!(k > 0) || !(k < 0.5 * std::sqrt(c)))
    throw ParameterError("k must lie in (0, sqrt(c)/2)");
  WaveParams p;
  p.c = c;
  p.k = k;
  const double ck = c - k * k;
  p.a = k * ck * std::sqrt(ck);
  p.E = k * k * (c - 2.0 * k * k) / (2.0 * c);
  p.phi_minus = k;
  p.phi_plus = phi_plus_root(p.a, c);
  p.decay_rate = std::sqrt((c - 4.0 * k * k) / ck);
  const double a = p.a, E = p.E;
  auto gap = [&](double phi) { return E - potential(phi, a, c); };
  auto dgap = [&](double phi) { return -dpotential(phi, a, c); };
  const double hi = std::sqrt(c) * (1.0 - 1e-15);
  p.phi_max = find_root(gap, p.phi_plus, hi, 1e-16, dgap);
  return p;
}

double k_from_a(double a, double c) {
  check_speed(c);
  if (!(a > 0) || !(a < a_supremum(c)))
    throw ParameterError("a must lie in (0, 3 sqrt(3) c^2 / 16)");
  auto g = [&](double k) {
    const double ck = c - k * k;
    return k * ck * std::sqrt(ck) - a;
  };
  auto dg = [&](double k) {
    const double ck = c - k * k;
    return std::sqrt(ck) * (c - 4.0 * k * k);
  };
  return find_root(g, 0.0, 0.5 * std::sqrt(c), 1e-16, dg);
}

WaveParams params_from_a(double a, double c) { return params_from_k(k_from_a(a, c), c); }

double potential(double phi, double a, double c) {
  if (!(phi * phi < c)) throw DomainError("potential: |phi| >= sqrt(c)");
  return -0.5 * phi * phi + a * phi / (c * std::sqrt(c - phi * phi));
}

double dpotential(double phi, double a, double c) {
  if (!(phi * phi < c)) throw DomainError("dpotential: |phi| >= sqrt(c)");
  const double s2 = c - phi * phi;
  return -phi + a / (s2 * std::sqrt(s2));
}

double energy_gap(const WaveParams& p, double dist_to_k, double dist_to_max) {
  const double c = p.c, k = p.k;
  const double phi = dist_to_k <= dist_to_max ? k + dist_to_k : p.phi_max - dist_to_max;
  const double ck = c - k * k;
  const double s = std::sqrt(c - phi * phi);
  const double P = k * k * (c - 2.0 * k * k) + c * phi * phi;
  const double Q = 2.0 * k * phi * ck * std::sqrt(ck);
  const double d2k = dist_to_k * (2.0 * k + dist_to_k);
  const double d2m = dist_to_max * (2.0 * p.phi_max - dist_to_max);
  return c * d2k * d2k * d2m / (2.0 * s * (s * P + Q));
}

double energy_gap(const WaveParams& p, double phi) {
  return energy_gap(p, phi - p.k, p.phi_max - phi);
}

std::vector<std::array<double, 2>> orbit_from_crest(const WaveParams& p, double y_crest,
                                                    const std::vector<double>& nodes) {
  if (!std::is_sorted(nodes.begin(), nodes.end()) || (!nodes.empty() && nodes.front() < 0))
    throw std::invalid_argument("orbit_from_crest: nodes must be ascending and non-negative");
  const auto states = taylor_pass(p, {y_crest, 0.0L}, 0.0, nodes);
  std::vector<std::array<double, 2>> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out[i] = {double(states[i][0]), double(states[i][1])};
  return out;
}

double mu_excess(const WaveParams& p, double y) {
  const double w = y * (2.0 * p.k + y);
  return std::expm1(1.5 * std::log1p(w / (p.c - p.k * p.k - w)));
}

double x_of_phi(const WaveParams& p, double phi, const Tolerances& tol) {
  if (!(phi > p.k) || !(phi <= p.phi_max)) throw DomainError("x_of_phi: phi outside (k, phi_M]");
  if (phi == p.phi_max) return 0.0;
  GapIntegrand g = [&](double xi, double gap) {
    const double dk = xi - p.k;
    return 1.0 / std::sqrt(2.0 * energy_gap(p, dk, gap));
  };
  return quad_singular(g, phi, p.phi_max, QuadMode::sqrt_upper, tol.quad_tol * 1e-2);
}

std::array<double, 5> derivatives_closed_form(double phi, double dphi, const WaveParams& p) {
  if (!(phi * phi < p.c)) throw DomainError("derivatives_closed_form: phi^2 >= c");
  Jet<4> Y, Mu;
  profile_series<4>(p, phi - p.k, dphi, Y, Mu);
  return {Mu.derivative(0), Mu.derivative(1), Mu.derivative(2), Mu.derivative(3),
          Mu.derivative(4)};
}

WaveProfile shoot_profile(const WaveParams& p, const GridSpec& grid, const Tolerances& tol) {
  tol.validate();
  const double C = p.decay_rate, sc = std::sqrt(p.c);
  double L = std::max(grid.min_L, 12.0 / C);

  // First pass measures the tail amplitude A in phi - k ~ A exp(C x).
  double eps = 1e-8 * sc;
  Pass first = shoot_pass(p, eps, -L, 4.0 * L + 50.0, tol);
  const double T1 = first.crest + L;
  const double A = eps * std::exp(C * T1);
  if (grid.L > 0) {
    L = grid.L;
  } else {
    L = std::max(L, (std::log(A / (grid.tail_tol * sc)) + std::log(4.0)) / C);
  }

  double u1 = std::log(eps), t1 = T1;
  double u = std::log(A) - C * L;
  Pass pass = shoot_pass(p, std::exp(u), -L, 4.0 * L + 50.0, tol);
  double T = pass.crest + L;
  for (int it = 0; it < 8 && std::abs(T - L) > 1e-6 * L; ++it) {
    const double slope = (T - t1) / (u - u1);
    u1 = u;
    t1 = T;
    u = u + (L - T) / slope;
    pass = shoot_pass(p, std::exp(u), -L, 4.0 * L + 50.0, tol);
    T = pass.crest + L;
  }
  eps = std::exp(u);
  long double x0 = -T;
  Jet<4> Yc, Muc;
  profile_series<4>(p, p.phi_max - p.k, 0.0, Yc, Muc);
  const double crest_width = std::sqrt(Muc.derivative(0) / std::abs(Muc.derivative(2)));
  std::size_t n = grid.n_half;
  if (n == 0)
    n = std::max<std::size_t>(4096, std::size_t(std::ceil(L * grid.crest_points / crest_width)));

  WaveProfile w;
  w.params = p;
  w.L = L;
  w.h = L / double(n);
  w.eps0 = eps;
  w.tail_amplitude = A;
  const std::size_t N = 2 * n + 1;
  w.x.resize(N);
  w.phi.resize(N);
  w.dphi.resize(N);
  w.dev.resize(N);
  for (auto* v : {&w.mu0, &w.mu1, &w.mu2, &w.mu3, &w.mu4}) v->resize(N);

  // Final pass by Taylor series from node to node, started shifted so that
  // the crest sits at x = 0.
  const double crest_accel = std::abs(deviation_force(p.k, p.c - p.k * p.k, p.phi_max - p.k));
  std::vector<double> nodes;
  std::vector<State> out;
  for (int it = 0; it < 12; ++it) {
    nodes.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const double x = -double(n - i) * w.h;
      if (x > x0) nodes.push_back(x);
    }
    nodes.push_back(0.0);
    out = taylor_pass(p, {eps, (long double)C * eps}, x0, nodes);
    const long double offset = out.back()[1] / crest_accel;
    if (std::abs(offset) <= 1e-18L * L) break;
    x0 -= offset;
  }
  const std::size_t first_node = n + 1 - nodes.size();

  for (std::size_t i = 0; i <= n; ++i) {
    const double x = -double(n - i) * w.h;
    long double y, v;
    if (i < first_node) {
      y = eps * std::exp((long double)C * (x - x0));
      v = C * y;
    } else {
      y = out[i - first_node][0];
      v = out[i - first_node][1];
    }
    if (i == n) v = 0.0;
    if (!(y > 0) || !((p.k + y) * (p.k + y) < p.c))
      throw ShootingError("shooting: profile left the admissible strip");
    Jet<4, long double> Y, Mu;
    profile_series<4, long double>(p, y, v, Y, Mu);
    const std::size_t j = N - 1 - i;
    w.x[i] = x;
    w.x[j] = -x;
    w.dev[i] = w.dev[j] = double(y);
    w.phi[i] = w.phi[j] = double(p.k + y);
    w.dphi[i] = double(v);
    w.dphi[j] = -w.dphi[i];
    w.mu0[i] = w.mu0[j] = double(Mu.derivative(0));
    w.mu1[i] = double(Mu.derivative(1));
    w.mu1[j] = -w.mu1[i];
    w.mu2[i] = w.mu2[j] = double(Mu.derivative(2));
    w.mu3[i] = double(Mu.derivative(3));
    w.mu3[j] = -w.mu3[i];
    w.mu4[i] = w.mu4[j] = double(Mu.derivative(4));
  }
  w.tail_state = {w.dev[0], w.dphi[0]};
  return w;
}

}  // namespace novikov
