#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "novikov/profile.hpp"

namespace novikov {

/// Lagrange multipliers and the limits of the coefficient fields.
struct FieldConstants {
  double omega0 = 0.0;
  double omega1 = 0.0;
  double F_inf = 0.0;
  double G_inf = 0.0;
  double f_inf = 0.0;
  /// f at the crest, from phi_M.
  double f0 = 0.0;
  /// Edge of the essential spectrum, G_inf + 2 omega0.
  double sigma0 = 0.0;
};

std::pair<double, double> lagrange_multipliers(const WaveParams& p);
FieldConstants field_constants(const WaveParams& p);

/// F, G, f and derivatives at one point of the wave.
struct CoefficientPoint {
  double F = 0.0, dF = 0.0, d2F = 0.0, d3F = 0.0;
  double G = 0.0, dG = 0.0, d2G = 0.0;
  double f = 0.0;
};

/// Coefficients at the point of the wave with phi - k = y and phi' = v.
CoefficientPoint coefficients_at(const WaveParams& p, const FieldConstants& fc, double y, double v);

struct CoefficientField {
  std::shared_ptr<const WaveProfile> profile;
  FieldConstants constants;
  double omega0 = 0.0;
  double omega1 = 0.0;
  std::vector<double> Fx, dFx, d2Fx, d3Fx;
  std::vector<double> Gx, dGx, d2Gx;
  std::vector<double> fx;
  double F_inf = 0.0, G_inf = 0.0, f_inf = 0.0, f0 = 0.0, sigma0 = 0.0;

  const WaveParams& params() const { return profile->params; }
};

CoefficientField coefficient_fields(std::shared_ptr<const WaveProfile> profile);

/// lambda(r) = G_inf - r^2 F_inf + 2 omega0 / (1 + r^2).
double dispersion(double r, const CoefficientField& field);
double dispersion(double r, const FieldConstants& fc);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Enclosure [f0 - 1, f_inf] of the spectrum of f - (1 - d^2)^(-1).
Interval s_operator_bounds(const CoefficientField& field);

struct DiscreteResidual {
  std::vector<double> residual;
  /// sup norm of (1 - d^2)(L0 - lambda) v, the size the residual is measured against.
  double scale = 0.0;
  /// Crude h^4 truncation estimate; large values mean the grid is too coarse.
  double truncation_estimate = 0.0;
  bool coarse = false;
};

struct DiscreteOptions {
  /// Accuracy order of the centered stencils: 4, 6 or 8.
  int order = 4;
  /// When positive, the stencil spacing at x is the largest multiple of the
  /// grid step not exceeding ell(x) / points_per_scale, where ell is the
  /// smallest of 1/C, sqrt((mu - k)/|mu''|) and ((mu - k)/|mu''''|)^(1/4).
  double points_per_scale = 0.0;
};

/// (1 - d^2)(L0 - lambda) v + 2 omega0 v with L0 v = (F v')' + G v, by nested
/// centered differences. Points whose stencil leaves the grid get residual 0.
DiscreteResidual apply_eigensystem_discrete(const std::vector<double>& v, double lambda,
                                            const CoefficientField& field,
                                            const DiscreteOptions& opts = {});

/// Centered difference of order 4, 6 or 8 for the first or second derivative;
/// zero at the order / 2 points nearest each end.
std::vector<double> central_diff(const std::vector<double>& v, double h, int derivative,
                                 int order);

/// Fourth-order centered first and second differences on a uniform grid;
/// second order one-sided near the ends.
std::vector<double> diff1(const std::vector<double>& v, double h);
std::vector<double> diff2(const std::vector<double>& v, double h);

}  // namespace novikov
