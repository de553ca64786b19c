#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "novikov/evans.hpp"

namespace novikov {

class ContourError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by verify_H1 with the failing stage prefixed to the message.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct Rect {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_half = 0.0;
};

bool contains(const Rect& r, cplx z);

struct ContourSample {
  /// Position along the perimeter, in [0, 1).
  double t = 0.0;
  cplx lambda;
  cplx value;
};

struct Contour {
  Rect rect;
  /// Counter-clockwise from the lower-left corner.
  std::vector<ContourSample> samples;
  bool refined = false;
};

/// Point of the counter-clockwise perimeter at fraction t of its length.
cplx perimeter_point(const Rect& r, double t);

struct WindingOptions {
  std::size_t initial_points = 64;
  std::size_t max_points = 4096;
  /// Each sample must exceed this fraction of its larger neighbour.
  double nonvanishing_ratio = 1e-10;
  double integer_tol = 0.05;
  std::size_t workers = 0;
};

struct WindingResult {
  int winding = 0;
  double raw = 0.0;
  double min_abs = 0.0;
  double max_abs = 0.0;
  Contour contour;
};

/// Vectorized evaluation: values at the given points.
using BatchFn = std::function<std::vector<cplx>(const std::vector<cplx>&)>;

/// Argument-principle count of zeros inside r, by accumulated phase with
/// midpoint refinement until every step is below pi/2.
WindingResult winding_number(const Rect& r, const BatchFn& fn, const WindingOptions& opts = {});
/// Same for a pointwise function, evaluated in parallel.
WindingResult winding_number(const Rect& r, const std::function<cplx(cplx)>& fn,
                             const WindingOptions& opts = {});

struct LambdaMinusResult {
  double lambda_minus = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double scan_start = 0.0;
  /// Winding of the Sturm-Liouville Evans function on a box around 0 only,
  /// and on the box expanded past lambda_minus.
  int winding_small = 0;
  int winding_expanded = 0;
  /// |D~(0)| relative to the largest |D~| on the expanded box.
  double zero_ratio = 0.0;
  double scale = 0.0;
};

struct SpectrumOptions {
  EvansOptions evans;
  WindingOptions winding;
  double bisection_rel_tol = 1e-10;
  bool check_windings = true;
};

LambdaMinusResult locate_lambda_minus(const EvansSystem& sys, const SpectrumOptions& opts = {});

/// lambda_minus + 2 omega0 (1 - f0).
double bound_sigma1(const FieldConstants& fc, double lambda_minus);
/// 2 omega0 - sup |G|, the sup over the grid and the limit G_inf.
double bound_energy(const CoefficientField& field);

struct ContourPair {
  Rect gamma1;
  Rect gamma2;
  double delta = 0.0;
};

/// Gamma1 = [-d, d] x [-d, d], Gamma2 = [1.05 sigma1, d / 2] x [-d, d],
/// d = min(sigma0, |sigma1|) / 20.
ContourPair default_contours(double sigma0, double sigma1);

/// Distance from 0 to the nearest other sign change of D on [-r, r], by a
/// scan with n points per side and bisection; infinity when there is none.
double nearest_real_zero(const EvansSystem& sys, double r, std::size_t n = 32,
                         const SpectrumOptions& opts = {});

struct VerifyOptions {
  GridSpec grid;
  Tolerances profile_tol;
  SpectrumOptions spectrum;
  /// Truncation for the Evans integration; 0 uses the profile's L.
  double evans_L = 0.0;
  /// Overrides for the contours; im_half = 0 keeps the default.
  Rect gamma1_override;
  Rect gamma2_override;
  bool keep_samples = false;
  /// Shrink Gamma1 to half the distance to the nearest other real zero of D.
  bool isolate_origin = true;
};

struct SpectralDiagnostics {
  double L = 0.0;
  std::size_t grid_points = 0;
  double delta_default = 0.0;
  double delta = 0.0;
  double nearest_real_zero = 0.0;
  double d0_ratio = 0.0;
  double d0_abs = 0.0;
  double sl_zero_ratio = 0.0;
  int sl_winding_small = 0;
  int sl_winding_expanded = 0;
  double winding1_raw = 0.0;
  double winding2_raw = 0.0;
  std::size_t gamma1_points = 0;
  std::size_t gamma2_points = 0;
  double seconds = 0.0;
};

struct SpectralReport {
  WaveParams params;
  FieldConstants constants;
  double sigma0 = 0.0;
  double lambda_minus_SL = 0.0;
  double sigma1 = 0.0;
  double energy_bound = 0.0;
  Rect gamma1, gamma2;
  int winding_gamma1 = 0;
  int winding_gamma2 = 0;
  bool h1_verdict = false;
  SpectralDiagnostics diagnostics;
  Contour gamma1_samples, gamma2_samples;
};

/// Profile, fields, lambda_minus, sigma1, contours and both winding counts.
SpectralReport verify_H1(const WaveParams& params, const VerifyOptions& opts = {});

/// Parameters of the j-th wave of the standard family: c = 1, a = j a_sup / 16.
WaveParams standard_wave(int j, double c = 1.0);

}  // namespace novikov
