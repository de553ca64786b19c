#include "novikov/spectrum.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "novikov/parallel.hpp"

namespace novikov {

bool contains(const Rect& r, cplx z) {
  return z.real() > r.re_min && z.real() < r.re_max && std::abs(z.imag()) < r.im_half;
}

cplx perimeter_point(const Rect& r, double t) {
  const double w = r.re_max - r.re_min, h = 2.0 * r.im_half;
  const double P = 2.0 * (w + h);
  double s = (t - std::floor(t)) * P;
  if (s < w) return {r.re_min + s, -r.im_half};
  s -= w;
  if (s < h) return {r.re_max, -r.im_half + s};
  s -= h;
  if (s < w) return {r.re_max - s, r.im_half};
  s -= w;
  return {r.re_min, r.im_half - s};
}

WindingResult winding_number(const Rect& r, const BatchFn& fn, const WindingOptions& opts) {
  if (!(r.re_max > r.re_min) || !(r.im_half > 0))
    throw std::invalid_argument("winding_number: degenerate rectangle");
  const std::size_t n0 = std::max<std::size_t>(opts.initial_points, 4);
  std::vector<ContourSample> s(n0);
  std::vector<cplx> pts(n0);
  for (std::size_t i = 0; i < n0; ++i) {
    s[i].t = double(i) / double(n0);
    pts[i] = s[i].lambda = perimeter_point(r, s[i].t);
  }
  std::vector<cplx> vals = fn(pts);
  for (std::size_t i = 0; i < n0; ++i) s[i].value = vals[i];

  auto step = [](cplx a, cplx b) { return std::arg(b / a); };
  bool refined = false;
  for (;;) {
    for (const auto& q : s)
      if (!std::isfinite(q.value.real()) || !std::isfinite(q.value.imag()))
        throw ContourError("non-finite value on contour");
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (std::abs(step(s[i].value, s[(i + 1) % s.size()].value)) >= std::numbers::pi / 2)
        bad.push_back(i);
    if (bad.empty()) break;
    if (s.size() + bad.size() > opts.max_points)
      throw ContourError("phase steps not resolved within the sample cap");
    refined = true;
    std::vector<ContourSample> fresh(bad.size());
    pts.resize(bad.size());
    for (std::size_t q = 0; q < bad.size(); ++q) {
      const std::size_t i = bad[q];
      const double t1 = i + 1 < s.size() ? s[i + 1].t : 1.0;
      fresh[q].t = 0.5 * (s[i].t + t1);
      pts[q] = fresh[q].lambda = perimeter_point(r, fresh[q].t);
    }
    vals = fn(pts);
    for (std::size_t q = 0; q < bad.size(); ++q) fresh[q].value = vals[q];
    s.insert(s.end(), fresh.begin(), fresh.end());
    std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  }

  WindingResult res;
  res.min_abs = std::abs(s[0].value);
  for (const auto& q : s) {
    res.min_abs = std::min(res.min_abs, std::abs(q.value));
    res.max_abs = std::max(res.max_abs, std::abs(q.value));
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double here = std::abs(s[i].value);
    const double near = std::max(std::abs(s[(i + s.size() - 1) % s.size()].value),
                                 std::abs(s[(i + 1) % s.size()].value));
    if (!(here > opts.nonvanishing_ratio * near)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "eigenvalue on contour near %.6g%+.6gi (|D| %.3e, neighbours %.3e)",
                    s[i].lambda.real(), s[i].lambda.imag(), here, near);
      throw ContourError(buf);
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) total += step(s[i].value, s[(i + 1) % s.size()].value);
  res.raw = total / (2.0 * std::numbers::pi);
  res.winding = int(std::lround(res.raw));
  if (std::abs(res.raw - res.winding) >= opts.integer_tol)
    throw ContourError("non-integer winding " + std::to_string(res.raw));
  res.contour.rect = r;
  res.contour.samples = std::move(s);
  res.contour.refined = refined;
  return res;
}

WindingResult winding_number(const Rect& r, const std::function<cplx(cplx)>& fn,
                             const WindingOptions& opts) {
  BatchFn batch = [&](const std::vector<cplx>& pts) {
    return parallel_map<cplx>(
        pts.size(), [&](std::size_t i) { return fn(pts[i]); }, opts.workers);
  };
  return winding_number(r, batch, opts);
}

namespace {

cplx checked_value(const EvansEvaluation& e) {
  if (!e.ok) throw ContourError("Evans evaluation failed at lambda = " +
                                std::to_string(e.lambda.real()) + std::to_string(e.lambda.imag()) +
                                "i: " + e.message);
  return e.value;
}

}  // namespace

LambdaMinusResult locate_lambda_minus(const EvansSystem& sys, const SpectrumOptions& opts) {
  const FieldConstants& fc = sys.constants();
  auto D = [&](double lam) { return checked_value(evans_eval_SL(lam, sys, opts.evans)).real(); };
  LambdaMinusResult res;
  const double eps = 1e-4 * std::abs(2.0 * fc.omega0 * (1.0 - fc.f0));
  const double floor_lam = -10.0 * std::abs(bound_energy(sys.field()));
  res.scan_start = -eps;
  const double d_start = D(-eps);
  double hi = -eps, lo = -eps;
  double d_lo = d_start;
  for (;;) {
    lo = 2.0 * hi;
    if (lo < floor_lam) throw ContourError("no negative eigenvalue of the Sturm-Liouville operator found");
    d_lo = D(lo);
    if ((d_lo > 0) != (d_start > 0)) break;
    hi = lo;
  }
  double d_hi = D(hi);
  while (hi - lo > opts.bisection_rel_tol * std::abs(hi)) {
    const double mid = 0.5 * (lo + hi);
    const double dm = D(mid);
    if (dm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((dm > 0) == (d_hi > 0)) {
      hi = mid;
      d_hi = dm;
    } else {
      lo = mid;
      d_lo = dm;
    }
  }
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.lambda_minus = 0.5 * (lo + hi);
  if (opts.check_windings) {
    auto fn = [&](cplx lam) { return checked_value(evans_eval_SL(lam, sys, opts.evans)); };
    const WindingResult small = winding_number(Rect{-eps, eps, eps}, fn, opts.winding);
    const double left = res.lambda_minus - 0.25 * std::abs(res.lambda_minus);
    const WindingResult big =
        winding_number(Rect{left, eps, 0.25 * std::abs(res.lambda_minus)}, fn, opts.winding);
    res.winding_small = small.winding;
    res.winding_expanded = big.winding;
    res.scale = big.max_abs;
    res.zero_ratio = std::abs(D(0.0)) / res.scale;
  }
  return res;
}

double bound_sigma1(const FieldConstants& fc, double lambda_minus) {
  return lambda_minus + 2.0 * fc.omega0 * (1.0 - fc.f0);
}

double bound_energy(const CoefficientField& field) {
  double sup = std::abs(field.constants.G_inf);
  for (double g : field.Gx) sup = std::max(sup, std::abs(g));
  return 2.0 * field.constants.omega0 - sup;
}

ContourPair default_contours(double sigma0, double sigma1) {
  ContourPair cp;
  cp.delta = std::min(sigma0, std::abs(sigma1)) / 20.0;
  cp.gamma1 = {-cp.delta, cp.delta, cp.delta};
  cp.gamma2 = {1.05 * sigma1, cp.delta / 2.0, cp.delta};
  return cp;
}

double nearest_real_zero(const EvansSystem& sys, double r, std::size_t n,
                         const SpectrumOptions& opts) {
  auto D = [&](double lam) { return checked_value(evans_eval(lam, sys, opts.evans)).real(); };
  const std::vector<double> vals = parallel_map<double>(
      2 * n, [&](std::size_t i) {
        const double x = r * double(i % n + 1) / double(n);
        return D(i < n ? x : -x);
      },
      opts.winding.workers);
  double best = std::numeric_limits<double>::infinity();
  for (int side : {1, -1}) {
    const double* v = side > 0 ? vals.data() : vals.data() + n;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if ((v[i] > 0) == (v[i + 1] > 0)) continue;
      double a = r * double(i + 1) / double(n), b = r * double(i + 2) / double(n);
      const bool sa = v[i] > 0;
      for (int it = 0; it < 30; ++it) {
        const double m = 0.5 * (a + b);
        if ((D(side * m) > 0) == sa) a = m;
        else b = m;
      }
      best = std::min(best, 0.5 * (a + b));
      break;
    }
  }
  return best;
}

WaveParams standard_wave(int j, double c) {
  return params_from_a(double(j) * a_supremum(c) / 16.0, c);
}

SpectralReport verify_H1(const WaveParams& params, const VerifyOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  SpectralReport rep;
  rep.params = params;
  std::string stage = "profile";
  try {
    auto wave = std::make_shared<WaveProfile>(shoot_profile(params, opts.grid, opts.profile_tol));
    rep.diagnostics.L = wave->L;
    rep.diagnostics.grid_points = wave->size();
    stage = "fields";
    auto field = std::make_shared<CoefficientField>(coefficient_fields(wave));
    rep.constants = field->constants;
    rep.sigma0 = field->sigma0;
    const EvansSystem sys(field, opts.evans_L);
    stage = "lambda_minus";
    const LambdaMinusResult lm = locate_lambda_minus(sys, opts.spectrum);
    rep.lambda_minus_SL = lm.lambda_minus;
    rep.diagnostics.sl_zero_ratio = lm.zero_ratio;
    rep.diagnostics.sl_winding_small = lm.winding_small;
    rep.diagnostics.sl_winding_expanded = lm.winding_expanded;
    rep.sigma1 = bound_sigma1(rep.constants, lm.lambda_minus);
    rep.energy_bound = bound_energy(*field);
    stage = "contours";
    ContourPair cp = default_contours(rep.sigma0, rep.sigma1);
    rep.diagnostics.delta_default = cp.delta;
    rep.diagnostics.nearest_real_zero = std::numeric_limits<double>::infinity();
    if (opts.isolate_origin) {
      rep.diagnostics.nearest_real_zero = nearest_real_zero(sys, cp.delta, 32, opts.spectrum);
      if (0.5 * rep.diagnostics.nearest_real_zero < cp.delta) {
        const double d = 0.5 * rep.diagnostics.nearest_real_zero;
        cp.gamma1 = {-d, d, d};
        cp.gamma2 = {1.05 * rep.sigma1, d / 2.0, d};
        cp.delta = d;
      }
    }
    rep.diagnostics.delta = cp.delta;
    rep.gamma1 = opts.gamma1_override.im_half > 0 ? opts.gamma1_override : cp.gamma1;
    rep.gamma2 = opts.gamma2_override.im_half > 0 ? opts.gamma2_override : cp.gamma2;
    if (!(rep.gamma1.re_max < rep.sigma0) || !(rep.gamma2.re_max < rep.sigma0))
      throw std::domain_error("contour crosses the essential spectrum");
    auto fn = [&](cplx lam) { return checked_value(evans_eval(lam, sys, opts.spectrum.evans)); };
    stage = "winding_gamma1";
    const WindingResult w1 = winding_number(rep.gamma1, fn, opts.spectrum.winding);
    stage = "winding_gamma2";
    const WindingResult w2 = winding_number(rep.gamma2, fn, opts.spectrum.winding);
    rep.winding_gamma1 = w1.winding;
    rep.winding_gamma2 = w2.winding;
    rep.diagnostics.winding1_raw = w1.raw;
    rep.diagnostics.winding2_raw = w2.raw;
    rep.diagnostics.gamma1_points = w1.contour.samples.size();
    rep.diagnostics.gamma2_points = w2.contour.samples.size();
    stage = "kernel";
    rep.diagnostics.d0_abs = std::abs(fn(0.0));
    rep.diagnostics.d0_ratio = rep.diagnostics.d0_abs / w1.max_abs;
    if (opts.keep_samples) {
      rep.gamma1_samples = w1.contour;
      rep.gamma2_samples = w2.contour;
    }
    rep.h1_verdict = rep.winding_gamma1 == 1 && rep.winding_gamma2 == 2;
  } catch (const ParameterError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(stage, e.what());
  }
  rep.diagnostics.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace novikov
