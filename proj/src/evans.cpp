#include "novikov/evans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace novikov {

namespace {

constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  return i * (7 - i) / 2 + (j - i - 1);
}

cplx wedge_entry(const Wedge& w, int i, int j) {
  if (i == j) return 0.0;
  return i < j ? w[pair_index(i, j)] : -w[pair_index(i, j)];
}

double deviation_force(double k, double ck, double y) {
  const double w = y * (2.0 * k + y);
  const double D = ck - w;
  if (!(D > 0)) return std::numeric_limits<double>::quiet_NaN();
  return y - k * std::expm1(1.5 * std::log1p(w / D));
}

double max_abs(std::span<const double> s) {
  double m = 0.0;
  for (double v : s) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

EvansSystem::EvansSystem(std::shared_ptr<const CoefficientField> field, double L)
    : field_(std::move(field)) {
  const WaveProfile& w = *field_->profile;
  L_ = L > 0 ? L : w.L;
  if (L_ < w.L * (1.0 - 1e-12))
    throw std::invalid_argument("EvansSystem: L shorter than the profile truncation");
  const double y = w.tail_state[0] * std::exp(-w.params.decay_rate * (L_ - w.L));
  tail_ = {y, L_ == w.L ? w.tail_state[1] : w.params.decay_rate * y};
}

std::array<cplx, 4> EvansSystem::row4(const CoefficientPoint& cp, double omega0, cplx lambda) {
  const double F = cp.F;
  return {(cp.G - cp.d2G + 2.0 * omega0 - lambda) / F,
          cplx((cp.dF - 2.0 * cp.dG - cp.d3F) / F),
          (F - cp.G - 3.0 * cp.d2F + lambda) / F,
          cplx(-3.0 * cp.dF / F)};
}

std::array<cplx, 4> EvansSystem::row4_at(double y, double v, cplx lambda) const {
  return row4(coefficients_at(params(), constants(), y, v), constants().omega0, lambda);
}

std::array<cplx, 4> EvansSystem::row4_at_index(std::size_t i, cplx lambda) const {
  const CoefficientField& f = *field_;
  CoefficientPoint cp;
  cp.F = f.Fx[i];
  cp.dF = f.dFx[i];
  cp.d2F = f.d2Fx[i];
  cp.d3F = f.d3Fx[i];
  cp.G = f.Gx[i];
  cp.dG = f.dGx[i];
  cp.d2G = f.d2Gx[i];
  cp.f = f.fx[i];
  return row4(cp, f.omega0, lambda);
}

cplx EvansSystem::a41_inf(cplx lambda) const {
  const FieldConstants& fc = constants();
  return (fc.G_inf + 2.0 * fc.omega0 - lambda) / fc.F_inf;
}

cplx EvansSystem::a43_inf(cplx lambda) const {
  const FieldConstants& fc = constants();
  return (fc.F_inf - fc.G_inf + lambda) / fc.F_inf;
}

Matrix4 EvansSystem::matrix_inf(cplx lambda) const {
  return companion({a41_inf(lambda), 0.0, a43_inf(lambda), 0.0});
}

Matrix4 companion(const std::array<cplx, 4>& row4) {
  Matrix4 A{};
  A[0][1] = A[1][2] = A[2][3] = 1.0;
  A[3] = row4;
  return A;
}

std::array<cplx, 4> asymptotic_splitting(cplx lambda, const EvansSystem& sys) {
  const auto roots = biquadratic_roots(sys.a43_inf(lambda), sys.a41_inf(lambda));
  for (const cplx& r : roots)
    if (std::abs(r.real()) < 1e-12)
      throw EssentialSpectrumError("lambda on essential spectrum");
  if (!(roots[1].real() > 0 && roots[2].real() < 0))
    throw EssentialSpectrumError("asymptotic roots do not split two and two");
  return roots;
}

std::array<cplx, 4> vandermonde(cplx mu) { return {1.0, mu, mu * mu, mu * mu * mu}; }

Wedge wedge(const std::array<cplx, 4>& u, const std::array<cplx, 4>& v) {
  Wedge w;
  for (int q = 0; q < 6; ++q) {
    const int i = kPairs[q][0], j = kPairs[q][1];
    w[q] = u[i] * v[j] - u[j] * v[i];
  }
  return w;
}

Wedge lift_apply(const Matrix4& M, const Wedge& w) {
  Wedge out;
  for (int q = 0; q < 6; ++q) {
    const int i = kPairs[q][0], j = kPairs[q][1];
    cplx s = 0.0;
    for (int m = 0; m < 4; ++m) {
      if (M[i][m] != 0.0) s += M[i][m] * wedge_entry(w, m, j);
      if (M[j][m] != 0.0) s += M[j][m] * wedge_entry(w, i, m);
    }
    out[q] = s;
  }
  return out;
}

Matrix6 compound_lift(const Matrix4& M) {
  Matrix6 out{};
  for (int b = 0; b < 6; ++b) {
    Wedge e{};
    e[b] = 1.0;
    const Wedge col = lift_apply(M, e);
    for (int a = 0; a < 6; ++a) out[a][b] = col[a];
  }
  return out;
}

cplx wedge_pairing(const Wedge& p, const Wedge& m) {
  return p[0] * m[5] - p[1] * m[4] + p[2] * m[3] + p[3] * m[2] - p[4] * m[1] + p[5] * m[0];
}

std::pair<cplx, cplx> unstable_pair_symmetric(cplx lambda, const EvansSystem& sys) {
  const cplx a2 = sys.a43_inf(lambda), a0 = sys.a41_inf(lambda);
  const cplx disc = std::sqrt(a2 * a2 + 4.0 * a0);
  const cplx zp = 0.5 * (a2 + disc), zm = 0.5 * (a2 - disc);
  cplx zbig = std::abs(zp) >= std::abs(zm) ? zp : zm;
  cplx zsmall = -a0 / zbig;
  const cplx r1 = std::sqrt(zbig), r2 = std::sqrt(zsmall);
  if (std::abs(r1.real()) < 1e-12 || std::abs(r2.real()) < 1e-12)
    throw EssentialSpectrumError("lambda on essential spectrum");
  return {r1 + r2, r1 * r2};
}

Wedge pair_wedge(cplx s, cplx p) { return {1.0, s, s * s - p, p, p * s, p * p}; }

namespace {

// Integrates the profile together with a complex linear system of dimension
// m from x0 to 0 in chunks, renormalizing the linear part after each chunk.
template <class LinearRhs>
bool integrate_augmented(const EvansSystem& sys, double x0, std::array<double, 2> profile_state,
                         std::vector<cplx> z, const LinearRhs& linear, const EvansOptions& opts,
                         std::vector<cplx>& z_end, double& renorm, std::string& message) {
  const std::size_t m = z.size();
  const WaveParams& p = sys.params();
  const double k = p.k, ck = p.c - p.k * p.k;
  std::vector<double> state(2 + 2 * m);
  state[0] = profile_state[0];
  state[1] = profile_state[1];
  double zmax = 0.0;
  for (const cplx& c : z) zmax = std::max(zmax, std::abs(c));
  renorm = std::log(zmax);
  for (std::size_t i = 0; i < m; ++i) {
    state[2 + i] = z[i].real() / zmax;
    state[2 + m + i] = z[i].imag() / zmax;
  }
  std::vector<cplx> zc(m), dz(m);
  RealRhs rhs = [&](double, std::span<const double> s, std::span<double> d) {
    d[0] = s[1];
    d[1] = deviation_force(k, ck, s[0]);
    for (std::size_t i = 0; i < m; ++i) zc[i] = cplx(s[2 + i], s[2 + m + i]);
    linear(s[0], s[1], zc, dz);
    for (std::size_t i = 0; i < m; ++i) {
      d[2 + i] = dz[i].real();
      d[2 + m + i] = dz[i].imag();
    }
  };
  OdeOptions o;
  o.dense = false;
  const double y_scale = std::abs(profile_state[0]);
  o.abs_per_component.assign(2 + 2 * m, opts.tol.ode_abs);
  o.abs_per_component[0] = 1e-3 * y_scale * opts.tol.ode_rel;
  o.abs_per_component[1] = 1e-3 * y_scale * opts.tol.ode_rel;
  const double dir = x0 < 0 ? 1.0 : -1.0;
  double x = x0;
  double h = 0.0;
  while (x != 0.0) {
    double next = x + dir * opts.chunk;
    if ((next - 0.0) * dir >= 0.0 || std::abs(next) < 1e-9 * opts.chunk) next = 0.0;
    o.initial_step = h;
    try {
      const Trajectory t = integrate_ode(rhs, x, state, next, opts.tol, o);
      state = t.final_state();
      h = t.last_step();
    } catch (const IntegrationError& e) {
      message = e.what();
      return false;
    }
    x = next;
    const double s = max_abs(std::span<const double>(state).subspan(2));
    if (!(s > 0) || !std::isfinite(s)) {
      message = "linear part degenerated";
      return false;
    }
    for (std::size_t i = 2; i < state.size(); ++i) state[i] /= s;
    renorm += std::log(s);
  }
  z_end.resize(m);
  for (std::size_t i = 0; i < m; ++i) z_end[i] = cplx(state[2 + i], state[2 + m + i]);
  return true;
}

}  // namespace

EvansEvaluation evans_eval(cplx lambda, const EvansSystem& sys, const EvansOptions& opts) {
  EvansEvaluation ev;
  ev.lambda = lambda;
  const auto [s, p] = unstable_pair_symmetric(lambda, sys);
  const WaveParams& params = sys.params();
  const FieldConstants& fc = sys.constants();
  const double omega0 = fc.omega0;

  auto make_linear = [&](cplx shift) {
    return [&params, &fc, omega0, lambda, shift](double y, double v, const std::vector<cplx>& w,
                                                 std::vector<cplx>& dw) {
      const CoefficientPoint cp = coefficients_at(params, fc, y, v);
      const Matrix4 A = companion(EvansSystem::row4(cp, omega0, lambda));
      Wedge in;
      std::copy(w.begin(), w.end(), in.begin());
      const Wedge out = lift_apply(A, in);
      for (int q = 0; q < 6; ++q) dw[q] = out[q] - shift * in[q];
    };
  };

  const Wedge wp0 = pair_wedge(s, p), wm0 = pair_wedge(-s, p);
  std::vector<cplx> wp_end, wm_end;
  double rp = 0.0, rm = 0.0;
  const auto tail = sys.tail_state();
  if (!integrate_augmented(sys, -sys.L(), tail, std::vector<cplx>(wp0.begin(), wp0.end()),
                           make_linear(s), opts, wp_end, rp, ev.message) ||
      !integrate_augmented(sys, sys.L(), {tail[0], -tail[1]},
                           std::vector<cplx>(wm0.begin(), wm0.end()), make_linear(-s), opts,
                           wm_end, rm, ev.message)) {
    ev.value = ev.pairing = cplx(std::numeric_limits<double>::quiet_NaN());
    return ev;
  }
  Wedge wp, wm;
  std::copy(wp_end.begin(), wp_end.end(), wp.begin());
  std::copy(wm_end.begin(), wm_end.end(), wm.begin());
  ev.pairing = wedge_pairing(wp, wm);
  ev.renorm_log = rp + rm;
  ev.value = ev.pairing * std::exp(ev.renorm_log);
  ev.ok = std::isfinite(ev.value.real()) && std::isfinite(ev.value.imag());
  return ev;
}

double sl_essential_edge(const FieldConstants& fc) { return fc.sigma0 / 4.0; }

EvansEvaluation evans_eval_SL(cplx lambda, const EvansSystem& sys, const EvansOptions& opts) {
  EvansEvaluation ev;
  ev.lambda = lambda;
  const FieldConstants& fc = sys.constants();
  const double edge = sl_essential_edge(fc);
  if (lambda.imag() == 0.0 && lambda.real() >= edge)
    throw EssentialSpectrumError("lambda on essential spectrum of the Sturm-Liouville operator");
  const double k83 = std::pow(sys.params().k, 8.0 / 3.0);
  const cplx nu = std::sqrt((edge - lambda) * k83 / 2.0);
  if (std::abs(nu.real()) < 1e-12)
    throw EssentialSpectrumError("lambda on essential spectrum of the Sturm-Liouville operator");
  const WaveParams& params = sys.params();
  const double omega0 = fc.omega0;

  auto make_linear = [&](cplx shift) {
    return [&params, &fc, omega0, lambda, shift](double y, double v, const std::vector<cplx>& u,
                                                 std::vector<cplx>& du) {
      const CoefficientPoint cp = coefficients_at(params, fc, y, v);
      const cplx a21 = (lambda - cp.G - 2.0 * omega0 * cp.f) / cp.F;
      const double a22 = -cp.dF / cp.F;
      du[0] = u[1] - shift * u[0];
      du[1] = a21 * u[0] + (a22 - shift) * u[1];
    };
  };
  std::vector<cplx> up_end, um_end;
  double rp = 0.0, rm = 0.0;
  const auto tail = sys.tail_state();
  if (!integrate_augmented(sys, -sys.L(), tail, {1.0, nu}, make_linear(nu), opts, up_end, rp,
                           ev.message) ||
      !integrate_augmented(sys, sys.L(), {tail[0], -tail[1]}, {1.0, -nu}, make_linear(-nu), opts,
                           um_end, rm, ev.message)) {
    ev.value = ev.pairing = cplx(std::numeric_limits<double>::quiet_NaN());
    return ev;
  }
  ev.pairing = up_end[0] * um_end[1] - up_end[1] * um_end[0];
  ev.renorm_log = rp + rm;
  ev.value = ev.pairing * std::exp(ev.renorm_log);
  ev.ok = std::isfinite(ev.value.real()) && std::isfinite(ev.value.imag());
  return ev;
}

}  // namespace novikov
