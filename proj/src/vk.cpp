#include "novikov/vk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "novikov/parallel.hpp"

namespace novikov {

namespace {

double phi_quad(const WaveParams& p, const Tolerances& tol,
                const std::function<double(double y)>& numerator) {
  GapIntegrand g = [&](double phi, double gap) {
    const double y = phi - p.k;
    return numerator(y) / std::sqrt(2.0 * energy_gap(p, y, gap));
  };
  return 2.0 * quad_singular(g, p.k, p.phi_max, QuadMode::sqrt_upper, tol.quad_tol * 1e-2);
}

double trapezoid(const WaveProfile& w, const std::function<double(std::size_t)>& f) {
  double s = 0.0;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) s += (i == 0 || i + 1 == n ? 0.5 : 1.0) * f(i);
  return s * w.h;
}

}  // namespace

double functional_E(const WaveParams& p, const Tolerances& tol) {
  return phi_quad(p, tol, [&](double y) { return (p.k + y) * p.k * mu_excess(p, y) + p.k * y; });
}

double functional_F1(const WaveParams& p, const Tolerances& tol) {
  const double k23 = std::cbrt(p.k * p.k);
  return phi_quad(p, tol, [&](double y) {
    const double phi = p.k + y;
    return k23 * y * (2.0 * p.k + y) / (p.c - phi * phi);
  });
}

double calF(const WaveParams& p, const Tolerances& tol) {
  const double k43 = std::cbrt(p.k * p.k * p.k * p.k), a23 = std::cbrt(p.a * p.a);
  return phi_quad(p, tol, [&](double y) {
    const double phi = p.k + y, s2 = p.c - phi * phi;
    return p.a * phi / (s2 * std::sqrt(s2)) - 3.0 * k43 * a23 / s2 + 2.0 * p.k * p.k;
  });
}

double functional_E_grid(const WaveProfile& w) {
  const WaveParams& p = w.params;
  return trapezoid(w, [&](std::size_t i) {
    const double y = w.dev[i];
    return (p.k + y) * p.k * mu_excess(p, y) + p.k * y;
  });
}

double functional_F1_grid(const WaveProfile& w) {
  const WaveParams& p = w.params;
  const double k23 = std::cbrt(p.k * p.k);
  return trapezoid(w, [&](std::size_t i) {
    const double y = w.dev[i], phi = p.k + y;
    return k23 * y * (2.0 * p.k + y) / (p.c - phi * phi);
  });
}

double functional_F2(const WaveProfile& w) {
  const WaveParams& p = w.params;
  const double km23 = 1.0 / std::cbrt(p.k * p.k);
  return trapezoid(w, [&](std::size_t i) {
    const double mu = w.mu0[i];
    const double t = 1.0 / std::cbrt(mu);
    const double t2 = t * t, t8 = t2 * t2 * t2 * t2;
    return t8 * w.mu1[i] * w.mu1[i] +
           9.0 * km23 * std::expm1(-2.0 / 3.0 * std::log1p(mu_excess(p, w.dev[i])));
  });
}

double dF_dm_margin(const WaveProfile& w) {
  const WaveParams& p = w.params;
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double phi = p.k + w.dev[i];
    const double d = 2.0 * phi - 2.0 * p.k * std::sqrt((p.c - phi * phi) / (p.c - p.k * p.k));
    m = std::min(m, d - 2.0 * w.dev[i]);
  }
  return m;
}

double inner_product_prefactor(double k, double c) {
  const double ck = c - k * k;
  return std::pow(k, 11.0 / 3.0) * ck * ck / (18.0 * c);
}

VKScan vk_scan(double c, const std::vector<double>& k_grid, const VKOptions& opts) {
  if (!(c > 0) || !std::isfinite(c)) throw ParameterError("wave speed c must be positive");
  const std::size_t n = k_grid.size();
  if (n < 3) throw ParameterError("vk scan needs at least 3 grid points");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(k_grid[i] > 0) || !(k_grid[i] < 0.5 * std::sqrt(c)))
      throw ParameterError("k grid must lie in (0, sqrt(c)/2)");
    if (i > 0 && !(k_grid[i] > k_grid[i - 1]))
      throw ParameterError("k grid must be strictly ascending");
  }
  VKScan s;
  s.c = c;
  s.k_grid = k_grid;
  struct Row {
    double F, E, F1, agree;
  };
  const auto rows = parallel_map<Row>(
      n,
      [&](std::size_t i) {
        const WaveParams p = params_from_k(k_grid[i], c);
        Row r{calF(p, opts.tol), functional_E(p, opts.tol), functional_F1(p, opts.tol), 0.0};
        if (opts.grid_check) {
          const WaveProfile w = shoot_profile(p, opts.grid, opts.tol);
          r.agree = std::max(std::abs(functional_E_grid(w) - r.E) / std::abs(r.E),
                             std::abs(functional_F1_grid(w) - r.F1) / std::abs(r.F1));
        }
        return r;
      },
      opts.workers);
  for (const Row& r : rows) {
    s.calF_values.push_back(r.F);
    s.E_values.push_back(r.E);
    s.F1_values.push_back(r.F1);
    if (opts.grid_check) s.grid_agreement.push_back(r.agree);
  }
  // Second-order differences on the nonuniform grid, one-sided at the ends.
  const auto& k = k_grid;
  const auto& F = s.calF_values;
  auto three_point = [&](std::size_t i0, double at) {
    const double x0 = k[i0], x1 = k[i0 + 1], x2 = k[i0 + 2];
    const double w0 = (2 * at - x1 - x2) / ((x0 - x1) * (x0 - x2));
    const double w1 = (2 * at - x0 - x2) / ((x1 - x0) * (x1 - x2));
    const double w2 = (2 * at - x0 - x1) / ((x2 - x0) * (x2 - x1));
    return w0 * F[i0] + w1 * F[i0 + 1] + w2 * F[i0 + 2];
  };
  s.dcalF_dk.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t i0 = i == 0 ? 0 : (i + 1 == n ? n - 3 : i - 1);
    s.dcalF_dk[i] = three_point(i0, k[i]);
  }
  s.inner_products.resize(n);
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double ki = k[i];
    const double d = s.dcalF_dk[i] / (ki * ki) - 2.0 * F[i] / (ki * ki * ki);
    s.inner_products[i] = inner_product_prefactor(ki, c) * d;
    ok = ok && F[i] > 0 && s.dcalF_dk[i] < 0;
  }
  s.verdict = ok;
  return s;
}

Witness positivity_witness(const WaveParams& p, double z) {
  const double c = p.c, k = p.k, ck = c - k * k;
  if (!(z >= k) || !(z * z < c)) throw DomainError("witness argument outside [k, sqrt(c))");
  const double cz = c - z * z;
  Witness w;
  w.f = z * std::sqrt(ck / cz) - 3.0 * k + 2.0 * k * cz / ck;
  w.lhs = c * c * ck * ck * ck;
  w.g = 16.0 * k * k * z * z * cz * cz * cz;
  w.g_max = 27.0 * k * k * c * c * c * c / 16.0;
  return w;
}

std::vector<double> orbit_mu(double a, double E, double c, const std::vector<double>& x) {
  if (!(c > 0) || !(a > 0) || !(a < a_supremum(c)))
    throw ParameterError("orbit parameters outside the admissible range");
  WaveParams q;
  q.a = a;
  q.c = c;
  q.k = k_from_a(a, c);
  const double sc = std::sqrt(c);
  auto gap = [&](double phi) { return E - potential(phi, a, c); };
  // The crest is the root of E = V above the potential minimum, where V' = 0.
  const double center = find_root([&](double phi) { return dpotential(phi, a, c); },
                                  q.k + 1e-12 * sc, sc * (1.0 - 1e-15), 1e-16 * sc);
  if (!(gap(center) > 0)) throw ParameterError("energy level has no orbit around the centre");
  const double crest =
      find_root(gap, center, sc * (1.0 - 1e-15), 1e-16 * sc,
                [&](double phi) { return -dpotential(phi, a, c); });
  const auto states = orbit_from_crest(q, crest - q.k, x);
  std::vector<double> mu(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mu[i] = q.k * (1.0 + mu_excess(q, states[i][0]));
  return mu;
}

RescaleResult rescale_identity_check(const WaveParams& p, double h, std::size_t n) {
  RescaleResult r;
  const double X = x_of_phi(p, p.k + 0.1 * (p.phi_max - p.k));
  r.x.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) r.x[i] = X * double(i) / double(n);
  const double a = p.a, E = p.E, c = p.c;
  for (int attempt = 0;; ++attempt) {
    try {
      r.h = h;
      r.mu = orbit_mu(a, E, c, r.x);
      auto diff = [&](double ap, double Ep, double cp, double am, double Em, double cm) {
        const auto up = orbit_mu(ap, Ep, cp, r.x), dn = orbit_mu(am, Em, cm, r.x);
        std::vector<double> d(r.x.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = (up[i] - dn[i]) / (2.0 * h);
        return d;
      };
      const auto da = diff(a * (1 + h), E, c, a * (1 - h), E, c);
      const auto dE = diff(a, E * (1 + h), c, a, E * (1 - h), c);
      const auto dc = diff(a, E, c * (1 + h), a, E, c * (1 - h));
      // Along a -> s^2 a, E -> s E, c -> s c the combination is s d/ds.
      const double sp = 1 + h, sm = 1 - h;
      const auto dcs = diff(a * sp * sp, E * sp, c * sp, a * sm * sm, E * sm, c * sm);
      // Along a -> t a, E -> sqrt(t) E, c -> sqrt(t) c it is 2 t d/dt.
      const auto das = diff(a * sp, E * std::sqrt(sp), c * std::sqrt(sp), a * sm,
                            E * std::sqrt(sm), c * std::sqrt(sm));
      r.residual.resize(r.x.size());
      r.residual_c_route.resize(r.x.size());
      r.residual_a_route.resize(r.x.size());
      r.sup_residual = r.sup_mu = 0.0;
      for (std::size_t i = 0; i < r.x.size(); ++i) {
        const double half = 0.5 * r.mu[i];
        r.residual[i] = 2.0 * da[i] + dE[i] + dc[i] - half;
        r.residual_c_route[i] = dcs[i] - half;
        r.residual_a_route[i] = 2.0 * das[i] - half;
        r.sup_residual = std::max(r.sup_residual, std::abs(r.residual[i]));
        r.sup_mu = std::max(r.sup_mu, std::abs(r.mu[i]));
      }
      return r;
    } catch (const ShootingError&) {
      if (attempt >= 8) throw;
    } catch (const ParameterError&) {
      if (attempt >= 8) throw;
    }
    h *= 0.5;
  }
}

}  // namespace novikov
