#include "novikov/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace novikov {

void Tolerances::validate() const {
  if (!(ode_rel > 0) || !(ode_abs > 0) || !(root_tol > 0) || !(quad_tol > 0))
    throw std::invalid_argument("tolerances must be strictly positive");
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)

namespace {

namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace dp

double sign_of(double v) { return v < 0 ? -1.0 : 1.0; }

}  // namespace

Trajectory integrate_ode(const RealRhs& rhs, double x0, std::vector<double> y0, double x1,
                         const Tolerances& tol, const OdeOptions& opts) {
  const std::size_t n = y0.size();
  Trajectory traj;
  traj.dim_ = n;
  traj.has_dense_ = opts.dense;
  traj.xs_.push_back(x0);

  std::vector<double> atol(n, tol.ode_abs);
  if (!opts.abs_per_component.empty()) {
    if (opts.abs_per_component.size() != n)
      throw std::invalid_argument("abs_per_component size mismatch");
    atol = opts.abs_per_component;
  }
  const double rtol = tol.ode_rel;

  if (x1 == x0 || n == 0) {
    traj.y_end_ = std::move(y0);
    return traj;
  }
  const double dir = sign_of(x1 - x0);
  const double span_len = std::abs(x1 - x0);

  std::vector<double> y = std::move(y0), ynew(n), ytmp(n), err(n);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  auto f = [&](double x, const std::vector<double>& in, std::vector<double>& out) {
    rhs(x, std::span<const double>(in), std::span<double>(out));
    ++traj.nfev_;
  };

  auto scaled_norm = [&](const std::vector<double>& v, const std::vector<double>& ref) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = atol[i] + rtol * std::abs(ref[i]);
      s += (v[i] / sc) * (v[i] / sc);
    }
    return std::sqrt(s / double(n));
  };

  double x = x0;
  f(x, y, k1);

  double h = opts.initial_step;
  if (h <= 0.0) {
    const double d0 = scaled_norm(y, y), d1v = scaled_norm(k1, y);
    double h0 = (d0 < 1e-5 || d1v < 1e-5) ? 1e-6 : 0.01 * d0 / d1v;
    h0 = std::min(h0, span_len);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + dir * h0 * k1[i];
    f(x + dir * h0, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i) err[i] = (k2[i] - k1[i]);
    const double d2 = scaled_norm(err, y) / h0;
    const double dm = std::max(d1v, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    h = std::min(100 * h0, h1);
  }
  if (opts.max_step > 0) h = std::min(h, opts.max_step);
  h = std::min(h, span_len);

  const double uround = std::numeric_limits<double>::epsilon();
  double facold = 1e-4;
  bool reject = false;
  std::size_t nsteps = 0;
  std::size_t next_out = 0;

  while (true) {
    if (nsteps++ > opts.max_steps)
      throw IntegrationError("integrate_ode: step count exhausted at x = " + std::to_string(x), x);
    if (h < 10.0 * uround * std::max(1.0, std::abs(x)))
      throw IntegrationError("integrate_ode: step size underflow at x = " + std::to_string(x), x);

    bool last = false, hit_output = false;
    const double h_free = h;
    if ((x + dir * h - x1) * dir >= 0.0) {
      h = std::abs(x1 - x);
      last = true;
    }
    while (next_out < opts.output_points.size() &&
           (opts.output_points[next_out] - x) * dir <= 0.0) {
      traj.outputs_.push_back(y);
      ++next_out;
    }
    if (next_out < opts.output_points.size() &&
        (x + dir * h - opts.output_points[next_out]) * dir >= 0.0) {
      h = std::abs(opts.output_points[next_out] - x);
      hit_output = true;
      if (opts.output_points[next_out] != x1) last = false;
    }
    const double hs = dir * h;

    using namespace dp;
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + hs * a21 * k1[i];
    f(x + c2 * hs, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    f(x + c3 * hs, ytmp, k3);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(x + c4 * hs, ytmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(x + c5 * hs, ytmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const double xph = hit_output ? opts.output_points[next_out] : last ? x1 : x + hs;
    f(xph, ytmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    f(xph, ynew, k7);

    double errsq = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                             e7 * k7[i]);
      const double sc = atol[i] + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      errsq += (e / sc) * (e / sc);
      if (!std::isfinite(ynew[i])) finite = false;
    }
    const double errn = finite ? std::sqrt(errsq / double(n)) : 1e10;

    // PI step control.
    const double fac11 = std::pow(std::max(errn, 1e-300), 0.17);
    double fac = fac11 / std::pow(facold, 0.04) / 0.9;
    fac = std::clamp(fac, 0.1, 5.0);
    double hnew = h / fac;

    if (errn <= 1.0) {
      facold = std::max(errn, 1e-4);
      if (opts.dense) {
        const std::size_t base = traj.dense_.size();
        traj.dense_.resize(base + 5 * n);
        double* r = traj.dense_.data() + base;
        for (std::size_t i = 0; i < n; ++i) {
          const double ydiff = ynew[i] - y[i];
          const double bspl = hs * k1[i] - ydiff;
          r[i] = y[i];
          r[n + i] = ydiff;
          r[2 * n + i] = bspl;
          r[3 * n + i] = ydiff - hs * k7[i] - bspl;
          r[4 * n + i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                               d7 * k7[i]);
        }
      }
      k1.swap(k7);
      y.swap(ynew);
      x = xph;
      if (hit_output) {
        traj.outputs_.push_back(y);
        ++next_out;
        hnew = std::max(hnew, std::min(h_free, 5.0 * h));
      }
      traj.xs_.push_back(x);
      if (opts.max_step > 0) hnew = std::min(hnew, opts.max_step);
      if (reject) hnew = std::min(hnew, h);
      reject = false;
      traj.last_h_ = hnew;
      if (last) break;
      if (opts.stop && opts.stop(x, std::span<const double>(y))) {
        traj.stopped_ = true;
        break;
      }
      h = hnew;
    } else {
      hnew = h / std::min(1.0 / 0.2, fac11 / 0.9);
      reject = true;
      h = hnew;
    }
  }
  traj.y_end_ = std::move(y);
  return traj;
}

std::size_t Trajectory::locate(double x) const {
  const bool fwd = xs_.back() >= xs_.front();
  const double lo = std::min(xs_.front(), xs_.back()), hi = std::max(xs_.front(), xs_.back());
  if (x < lo - 1e-12 * (1 + std::abs(lo)) || x > hi + 1e-12 * (1 + std::abs(hi)))
    throw std::out_of_range("Trajectory: x outside integrated interval");
  std::size_t idx;
  if (fwd) {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    idx = it == xs_.begin() ? 0 : std::size_t(it - xs_.begin()) - 1;
  } else {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x, std::greater<double>());
    idx = it == xs_.begin() ? 0 : std::size_t(it - xs_.begin()) - 1;
  }
  return std::min(idx, steps() - 1);
}

std::vector<double> Trajectory::state_at(double x) const {
  std::vector<double> out(dim_);
  if (steps() == 0) return y_end_;
  if (!has_dense_) throw std::logic_error("Trajectory: dense output disabled");
  const std::size_t s = locate(x);
  const double xa = xs_[s], xb = xs_[s + 1];
  const double th = (x - xa) / (xb - xa), th1 = 1.0 - th;
  const double* r = dense_.data() + s * 5 * dim_;
  for (std::size_t i = 0; i < dim_; ++i)
    out[i] = r[i] + th * (r[dim_ + i] +
                          th1 * (r[2 * dim_ + i] + th * (r[3 * dim_ + i] + th1 * r[4 * dim_ + i])));
  return out;
}

double Trajectory::component_at(double x, std::size_t i) const { return state_at(x)[i]; }

ComplexSolution integrate_ode_complex(const ComplexRhs& rhs, double x0, std::vector<cplx> y0,
                                      double x1, const Tolerances& tol, const OdeOptions& opts) {
  const std::size_t n = y0.size();
  std::vector<double> stacked(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    stacked[i] = y0[i].real();
    stacked[n + i] = y0[i].imag();
  }
  std::vector<cplx> yc(n), dyc(n);
  RealRhs real_rhs = [&](double x, std::span<const double> y, std::span<double> dy) {
    for (std::size_t i = 0; i < n; ++i) yc[i] = cplx(y[i], y[n + i]);
    rhs(x, std::span<const cplx>(yc), std::span<cplx>(dyc));
    for (std::size_t i = 0; i < n; ++i) {
      dy[i] = dyc[i].real();
      dy[n + i] = dyc[i].imag();
    }
  };
  OdeOptions o = opts;
  if (!o.abs_per_component.empty() && o.abs_per_component.size() == n) {
    auto a = o.abs_per_component;
    o.abs_per_component.insert(o.abs_per_component.end(), a.begin(), a.end());
  }
  const Trajectory t = integrate_ode(real_rhs, x0, std::move(stacked), x1, tol, o);
  ComplexSolution sol;
  sol.final_state.resize(n);
  const auto& ye = t.final_state();
  for (std::size_t i = 0; i < n; ++i) sol.final_state[i] = cplx(ye[i], ye[n + i]);
  sol.last_step = t.last_step();
  sol.rhs_evaluations = t.rhs_evaluations();
  return sol;
}

// ---------------------------------------------------------------------------
// Root finding

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                 const std::function<double(double)>& df) {
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(std::signbit(flo) != std::signbit(fhi)) || std::isnan(flo) || std::isnan(fhi))
    throw std::invalid_argument("bracket invalid");

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    if (hi - lo <= tol * (1.0 + std::abs(x))) return 0.5 * (lo + hi);

    double next = 0.5 * (lo + hi);
    if (df) {
      const double d = df(x);
      if (d != 0.0 && std::isfinite(d)) {
        const double xn = x - fx / d;
        // Newton is accepted only strictly inside the current bracket.
        if (xn > lo && xn < hi) {
          if (std::abs(xn - x) <= 0.5 * tol * (1.0 + std::abs(x))) return xn;
          next = xn;
        }
      }
    }
    x = next;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& g, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const double fc = g(mid);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = g(mid - dx), f2 = g(mid + dx);
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kron * half, std::abs((kron - gauss) * half)};
}

}  // namespace

QuadResult quad_adaptive(const std::function<double(double)>& g, double a, double b, double tol,
                         std::size_t max_intervals) {
  if (a == b) return {};
  std::priority_queue<Panel> heap;
  Panel first = gauss_kronrod(g, a, b);
  double total = first.value, err = first.error;
  heap.push(first);
  const double floor_abs = 1e-300;
  while (err > std::max(tol * std::abs(total), floor_abs)) {
    if (heap.size() >= max_intervals || !std::isfinite(total))
      throw QuadratureError("quad_adaptive: no convergence", total, err);
    Panel worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (m <= worst.a || m >= worst.b)
      throw QuadratureError("quad_adaptive: interval too small", total, err);
    Panel left = gauss_kronrod(g, worst.a, m), right = gauss_kronrod(g, m, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (heap.size() % 64 == 0) {
      auto copy = heap;
      total = err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        err += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, err, heap.size()};
}

double quad_singular(const GapIntegrand& g, double a, double b, QuadMode mode, double tol) {
  if (a == b) return 0.0;
  if (mode == QuadMode::plain)
    return quad_adaptive([&](double x) { return g(x, b - x); }, a, b, tol).value;
  if (b < a) throw std::invalid_argument("quad_singular: sqrt_upper needs a < b");
  // x = b - s^2, dx = -2 s ds, s in [0, sqrt(b - a)].
  const double smax = std::sqrt(b - a);
  auto h = [&](double s) { return 2.0 * s * g(b - s * s, s * s); };
  return quad_adaptive(h, 0.0, smax, tol).value;
}

double quad_singular(const std::function<double(double)>& g, double a, double b, QuadMode mode,
                     double tol) {
  return quad_singular(GapIntegrand([&](double x, double) { return g(x); }), a, b, mode, tol);
}

// ---------------------------------------------------------------------------
// Biquadratic roots

std::array<cplx, 4> biquadratic_roots(cplx a2, cplx a0) {
  // z^2 - a2 z - a0 = 0 with z = mu^2; pick the larger root stably, the other
  // through the product z+ z- = -a0.
  const cplx disc = std::sqrt(a2 * a2 + 4.0 * a0);
  const cplx zp = 0.5 * (a2 + disc), zm = 0.5 * (a2 - disc);
  cplx zbig = std::abs(zp) >= std::abs(zm) ? zp : zm;
  cplx zsmall = zbig != cplx(0.0) ? -a0 / zbig : cplx(0.0);
  const cplx r1 = std::sqrt(zbig), r2 = std::sqrt(zsmall);
  std::array<cplx, 4> roots = {r1, -r1, r2, -r2};
  std::sort(roots.begin(), roots.end(), [](cplx p, cplx q) {
    if (p.real() != q.real()) return p.real() > q.real();
    return p.imag() > q.imag();
  });
  return roots;
}

std::array<cplx, 4> biquadratic_roots_continued(cplx a2, cplx a0,
                                                const std::array<cplx, 4>& previous) {
  std::array<cplx, 4> roots = biquadratic_roots(a2, a0);
  std::array<int, 4> perm = {0, 1, 2, 3}, best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (int i = 0; i < 4; ++i) cost += std::norm(roots[perm[i]] - previous[i]);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::array<cplx, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = roots[best[i]];
  return out;
}

}  // namespace novikov
