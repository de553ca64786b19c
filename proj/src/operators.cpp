#include "novikov/operators.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace novikov {

std::pair<double, double> lagrange_multipliers(const WaveParams& p) {
  const double a23 = std::cbrt(p.a * p.a);
  const double omega0 = -9.0 / a23;
  const double omega1 = 9.0 * p.c * (2.0 * p.E + p.c) / (a23 * a23);
  return {omega0, omega1};
}

FieldConstants field_constants(const WaveParams& p) {
  FieldConstants fc;
  std::tie(fc.omega0, fc.omega1) = lagrange_multipliers(p);
  const double c = p.c, k = p.k, ck = c - k * k;
  const double k83 = std::pow(k, 8.0 / 3.0);
  fc.F_inf = -2.0 / k83;
  fc.G_inf = (8.0 * c - 14.0 * k * k) / (ck * k83);
  fc.f_inf = ck / (3.0 * k * k);
  const double sM = c - p.phi_max * p.phi_max;
  fc.f0 = sM * sM * std::sqrt(sM) / (3.0 * p.a * p.phi_max);
  fc.sigma0 = 8.0 * (c - 4.0 * k * k) / (k83 * ck);
  return fc;
}

namespace {

CoefficientPoint coefficients_from_mu(const WaveParams& p, const FieldConstants& fc,
                                      const Jet<4>& Mu, double phi) {
  const double t = 1.0 / std::cbrt(Mu.c[0]);
  const double t2 = t * t, t4 = t2 * t2, t8 = t4 * t4;
  const auto P43 = pow(Mu, -4.0 / 3.0, t4);
  const auto P83 = pow(Mu, -8.0 / 3.0, t8);
  const auto P113 = pow(Mu, -11.0 / 3.0, t8 * t2 * t);
  const auto P143 = pow(Mu, -14.0 / 3.0, t8 * t4 * t2);
  const auto dMu = Mu.diff();
  const auto d2Mu = dMu.diff();
  const auto F = -2.0 * P83;
  const auto G = (2.0 / 9.0) * (24.0 * (d2Mu * P113) - 44.0 * (dMu * dMu * P143) + 45.0 * P83 -
                                fc.omega1 * P43);
  CoefficientPoint cp;
  cp.F = F.derivative(0);
  cp.dF = F.derivative(1);
  cp.d2F = F.derivative(2);
  cp.d3F = F.derivative(3);
  cp.G = G.derivative(0);
  cp.dG = G.derivative(1);
  cp.d2G = G.derivative(2);
  cp.f = std::cbrt(p.a * p.a) * t4 * t / (3.0 * phi);
  return cp;
}

}  // namespace

CoefficientPoint coefficients_at(const WaveParams& p, const FieldConstants& fc, double y,
                                 double v) {
  Jet<4> Y, Mu;
  profile_series<4>(p, y, v, Y, Mu);
  return coefficients_from_mu(p, fc, Mu, p.k + y);
}

CoefficientField coefficient_fields(std::shared_ptr<const WaveProfile> profile) {
  const WaveProfile& w = *profile;
  const WaveParams& p = w.params;
  CoefficientField cf;
  cf.constants = field_constants(p);
  const FieldConstants& fc = cf.constants;
  cf.omega0 = fc.omega0;
  cf.omega1 = fc.omega1;
  cf.F_inf = fc.F_inf;
  cf.G_inf = fc.G_inf;
  cf.f_inf = fc.f_inf;
  cf.f0 = fc.f0;
  cf.sigma0 = fc.sigma0;
  const std::size_t n = w.size();
  for (auto* vec : {&cf.Fx, &cf.dFx, &cf.d2Fx, &cf.d3Fx, &cf.Gx, &cf.dGx, &cf.d2Gx, &cf.fx})
    vec->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(w.mu0[i] > 0)) throw std::logic_error("coefficient_fields: mu <= 0 on the grid");
    const Jet<4> Mu{{w.mu0[i], w.mu1[i], w.mu2[i] / 2.0, w.mu3[i] / 6.0, w.mu4[i] / 24.0}};
    const CoefficientPoint cp = coefficients_from_mu(p, fc, Mu, w.phi[i]);
    cf.Fx[i] = cp.F;
    cf.dFx[i] = cp.dF;
    cf.d2Fx[i] = cp.d2F;
    cf.d3Fx[i] = cp.d3F;
    cf.Gx[i] = cp.G;
    cf.dGx[i] = cp.dG;
    cf.d2Gx[i] = cp.d2G;
    cf.fx[i] = cp.f;
  }
  cf.profile = std::move(profile);
  return cf;
}

double dispersion(double r, const FieldConstants& fc) {
  return fc.G_inf - r * r * fc.F_inf + 2.0 * fc.omega0 / (1.0 + r * r);
}

double dispersion(double r, const CoefficientField& field) {
  return dispersion(r, field.constants);
}

Interval s_operator_bounds(const CoefficientField& field) {
  return {field.f0 - 1.0, field.f_inf};
}

std::vector<double> diff1(const std::vector<double>& v, double h) {
  const std::size_t n = v.size();
  std::vector<double> d(n, 0.0);
  if (n < 5) return d;
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  d[1] = (v[2] - v[0]) / (2.0 * h);
  d[n - 2] = (v[n - 1] - v[n - 3]) / (2.0 * h);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return d;
}

std::vector<double> diff2(const std::vector<double>& v, double h) {
  const std::size_t n = v.size();
  std::vector<double> d(n, 0.0);
  if (n < 5) return d;
  const double h2 = h * h;
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]) / (12.0 * h2);
  d[1] = (v[0] - 2.0 * v[1] + v[2]) / h2;
  d[n - 2] = (v[n - 3] - 2.0 * v[n - 2] + v[n - 1]) / h2;
  d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
  d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
  return d;
}

namespace {

struct Stencil {
  const double* d1;
  const double* d2;
  double n1, n2;
  int m;
};

Stencil stencil_for(int order) {
  static const double d1_4[] = {1, -8, 0, 8, -1};
  static const double d1_6[] = {-1, 9, -45, 0, 45, -9, 1};
  static const double d1_8[] = {3, -32, 168, -672, 0, 672, -168, 32, -3};
  static const double d2_4[] = {-1, 16, -30, 16, -1};
  static const double d2_6[] = {2, -27, 270, -490, 270, -27, 2};
  static const double d2_8[] = {-9, 128, -1008, 8064, -14350, 8064, -1008, 128, -9};
  switch (order) {
    case 4: return {d1_4, d2_4, 12.0, 12.0, 2};
    case 6: return {d1_6, d2_6, 60.0, 180.0, 3};
    case 8: return {d1_8, d2_8, 840.0, 5040.0, 4};
    default: throw std::invalid_argument("unsupported difference order");
  }
}

}  // namespace

std::vector<double> central_diff(const std::vector<double>& v, double h, int derivative,
                                 int order) {
  if (derivative != 1 && derivative != 2)
    throw std::invalid_argument("central_diff: derivative must be 1 or 2");
  const Stencil st = stencil_for(order);
  const double* w = derivative == 1 ? st.d1 : st.d2;
  const double denom = derivative == 1 ? st.n1 * h : st.n2 * h * h;
  const std::size_t m = std::size_t(st.m), n = v.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = m; i + m < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j <= 2 * m; ++j) s += w[j] * v[i + j - m];
    d[i] = s / denom;
  }
  return d;
}

DiscreteResidual apply_eigensystem_discrete(const std::vector<double>& v, double lambda,
                                            const CoefficientField& field,
                                            const DiscreteOptions& opts) {
  const WaveProfile& wave = *field.profile;
  const std::size_t n = wave.size();
  if (v.size() != n) throw std::invalid_argument("apply_eigensystem_discrete: size mismatch");
  const Stencil st = stencil_for(opts.order);
  const int m = st.m;
  const double C2 = wave.params.decay_rate * wave.params.decay_rate;

  DiscreteResidual out;
  out.residual.assign(n, 0.0);
  std::vector<double> flux(4 * m + 1), L0v(2 * m + 1);
  for (std::size_t i = 0; i < n; ++i) {
    long s = 1;
    if (opts.points_per_scale > 0) {
      const double excess = wave.mu0[i] - wave.params.k;
      const double ell = std::min({1.0 / std::sqrt(C2), std::sqrt(excess / std::abs(wave.mu2[i])),
                                   std::sqrt(std::sqrt(excess / std::abs(wave.mu4[i])))});
      s = std::max(1L, long(ell / (opts.points_per_scale * wave.h)));
    }
    const long reach = 3L * m * s;
    if (long(i) < reach || long(i) + reach >= long(n)) continue;
    const double hs = wave.h * double(s);
    auto at = [&](long j) { return std::size_t(long(i) + j * s); };
    for (int j = -2 * m; j <= 2 * m; ++j) {
      double d = 0.0;
      for (int l = -m; l <= m; ++l) d += st.d1[l + m] * v[at(j + l)];
      flux[j + 2 * m] = field.Fx[at(j)] * d / (st.n1 * hs);
    }
    for (int j = -m; j <= m; ++j) {
      double d = 0.0;
      for (int l = -m; l <= m; ++l) d += st.d1[l + m] * flux[j + l + 2 * m];
      L0v[j + m] = d / (st.n1 * hs) + (field.Gx[at(j)] - lambda) * v[at(j)];
    }
    double d2 = 0.0;
    for (int l = -m; l <= m; ++l) d2 += st.d2[l + m] * L0v[l + m];
    d2 /= st.n2 * hs * hs;
    const double op = L0v[m] - d2;
    out.scale = std::max(out.scale, std::abs(op));
    out.residual[i] = op + 2.0 * field.omega0 * v[i];
  }
  // h^order times the sup of the (order + 2)-th difference of v, scaled by sup|F|.
  std::vector<double> dd = v;
  for (int r = 0; r < opts.order + 2 && dd.size() > 1; ++r) {
    for (std::size_t i = 0; i + 1 < dd.size(); ++i) dd[i] = dd[i + 1] - dd[i];
    dd.pop_back();
  }
  double sup_d = 0.0, supF = 0.0;
  for (double d : dd) sup_d = std::max(sup_d, std::abs(d));
  for (double F : field.Fx) supF = std::max(supF, std::abs(F));
  const double h = wave.h;
  out.truncation_estimate = supF * sup_d / (h * h);
  out.coarse = out.scale > 0 && out.truncation_estimate > 1e-4 * out.scale;
  return out;
}

}  // namespace novikov
