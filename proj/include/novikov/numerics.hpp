#pragma once

// Low-level numerical kernels shared by the wave, operator, Evans and VK
// modules: an adaptive Dormand-Prince 5(4) integrator with dense output, a
// safeguarded bracketing root finder, adaptive Gauss-Kronrod quadrature with an
// inverse-square-root endpoint substitution, and closed-form biquadratic roots.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace novikov {

using cplx = std::complex<double>;

struct Tolerances {
  double ode_rel = 1e-10;
  double ode_abs = 1e-12;
  double root_tol = 1e-12;
  double quad_tol = 1e-9;

  /// Throws std::invalid_argument unless every field is strictly positive.
  void validate() const;
};

/// Step-size underflow or step-count exhaustion inside integrate_ode.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double x)
      : std::runtime_error(what), position_(x) {}
  double position() const noexcept { return position_; }

 private:
  double position_;
};

/// Adaptive quadrature failed to meet its tolerance; carries the last estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

// ---------------------------------------------------------------------------
// ODE integration

using RealRhs = std::function<void(double x, std::span<const double> y, std::span<double> dydx)>;
using ComplexRhs = std::function<void(double x, std::span<const cplx> y, std::span<cplx> dydx)>;

struct OdeOptions {
  /// Per-component absolute tolerance; overrides Tolerances::ode_abs when non-empty.
  std::vector<double> abs_per_component;
  bool dense = true;
  std::size_t max_steps = 2'000'000;
  /// Initial step magnitude; 0 selects one automatically.
  double initial_step = 0.0;
  /// Largest allowed step magnitude; 0 means unbounded.
  double max_step = 0.0;
  /// Checked after every accepted step; returning true ends the integration there.
  std::function<bool(double x, std::span<const double> y)> stop;
  /// Abscissae, ordered in the direction of integration, that steps land on
  /// exactly; the states there are kept in Trajectory::outputs().
  std::vector<double> output_points;
};

/// Accepted steps of one integration, with Dormand-Prince continuous extension.
class Trajectory {
 public:
  std::size_t dimension() const noexcept { return dim_; }
  std::size_t steps() const noexcept { return xs_.size() - 1; }
  double x_begin() const noexcept { return xs_.front(); }
  double x_end() const noexcept { return xs_.back(); }
  const std::vector<double>& final_state() const noexcept { return y_end_; }
  /// Magnitude of the last step size the controller proposed.
  double last_step() const noexcept { return last_h_; }
  bool stopped_early() const noexcept { return stopped_; }
  std::size_t rhs_evaluations() const noexcept { return nfev_; }

  /// Dense output; x must lie in the integrated interval (either direction).
  std::vector<double> state_at(double x) const;
  double component_at(double x, std::size_t i) const;
  /// Index of the accepted step whose interval contains x.
  std::size_t locate(double x) const;
  const std::vector<double>& step_points() const noexcept { return xs_; }
  /// States at OdeOptions::output_points reached so far, in order.
  const std::vector<std::vector<double>>& outputs() const noexcept { return outputs_; }

 private:
  friend Trajectory integrate_ode(const RealRhs&, double, std::vector<double>, double,
                                  const Tolerances&, const OdeOptions&);
  std::size_t dim_ = 0;
  std::vector<double> xs_;
  // Five continuous-extension coefficient blocks of size dim_ per step.
  std::vector<double> dense_;
  std::vector<double> y_end_;
  std::vector<std::vector<double>> outputs_;
  double last_h_ = 0.0;
  bool stopped_ = false;
  bool has_dense_ = false;
  std::size_t nfev_ = 0;
};

/// Integrates y' = rhs(x, y) from x0 to x1 (x1 < x0 integrates backwards).
Trajectory integrate_ode(const RealRhs& rhs, double x0, std::vector<double> y0, double x1,
                         const Tolerances& tol, const OdeOptions& opts = {});

/// Complex states are integrated as stacked (real parts, imaginary parts).
struct ComplexSolution {
  std::vector<cplx> final_state;
  double last_step = 0.0;
  std::size_t rhs_evaluations = 0;
};
ComplexSolution integrate_ode_complex(const ComplexRhs& rhs, double x0, std::vector<cplx> y0,
                                      double x1, const Tolerances& tol,
                                      const OdeOptions& opts = {});

// ---------------------------------------------------------------------------
// Root finding

/// Bisection with Newton acceleration when df is supplied. The bracket must
/// show a sign change (std::invalid_argument "bracket invalid" otherwise).
double find_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                 const std::function<double(double)>& df = {});

// ---------------------------------------------------------------------------
// Quadrature

enum class QuadMode { plain, sqrt_upper };

/// Integrand receiving the abscissa and its exact distance to the upper
/// limit. Under sqrt_upper the distance is s^2 from the substitution
/// x = b - s^2, so singular factors 1/sqrt(b - x) can be formed without
/// cancellation.
using GapIntegrand = std::function<double(double x, double gap_to_upper)>;

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7, 15) quadrature on [a, b].
QuadResult quad_adaptive(const std::function<double(double)>& g, double a, double b, double tol,
                         std::size_t max_intervals = 4000);

double quad_singular(const GapIntegrand& g, double a, double b, QuadMode mode, double tol);
double quad_singular(const std::function<double(double)>& g, double a, double b, QuadMode mode,
                     double tol);

// ---------------------------------------------------------------------------
// Biquadratic roots

/// Roots of mu^4 - a2 mu^2 - a0 = 0, sorted by real part descending
/// (ties by imaginary part descending).
std::array<cplx, 4> biquadratic_roots(cplx a2, cplx a0);

/// Same roots, permuted to sit closest to `previous` (nearest-root matching
/// along a path in parameter space).
std::array<cplx, 4> biquadratic_roots_continued(cplx a2, cplx a0,
                                                const std::array<cplx, 4>& previous);

}  // namespace novikov
