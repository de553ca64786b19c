#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "novikov/operators.hpp"

namespace novikov {

class EssentialSpectrumError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using Matrix4 = std::array<std::array<cplx, 4>, 4>;
using Matrix6 = std::array<std::array<cplx, 6>, 6>;
using Wedge = std::array<cplx, 6>;

/// Companion system U' = A(x, lambda) U of the fourth-order eigenvalue problem.
class EvansSystem {
 public:
  /// L = 0 uses the truncation of the wave profile; larger values extend the
  /// tails with the linear decay law.
  explicit EvansSystem(std::shared_ptr<const CoefficientField> field, double L = 0.0);

  const CoefficientField& field() const { return *field_; }
  const WaveParams& params() const { return field_->params(); }
  const FieldConstants& constants() const { return field_->constants; }
  double L() const { return L_; }
  /// (phi - k, phi') at x = -L.
  std::array<double, 2> tail_state() const { return tail_; }

  /// Row 4 of A from coefficient values.
  static std::array<cplx, 4> row4(const CoefficientPoint& cp, double omega0, cplx lambda);
  /// Row 4 at a point of the wave given by (phi - k, phi').
  std::array<cplx, 4> row4_at(double y, double v, cplx lambda) const;
  /// Row 4 at grid index i of the coefficient field.
  std::array<cplx, 4> row4_at_index(std::size_t i, cplx lambda) const;

  /// A41 and A43 of the limit matrix (A42 = A44 = 0).
  cplx a41_inf(cplx lambda) const;
  cplx a43_inf(cplx lambda) const;
  Matrix4 matrix_inf(cplx lambda) const;

 private:
  std::shared_ptr<const CoefficientField> field_;
  double L_;
  std::array<double, 2> tail_;
};

Matrix4 companion(const std::array<cplx, 4>& row4);

/// Roots of the limit matrix ordered (mu1+, mu2+, mu1-, mu2-): the two with
/// positive real part by decreasing real part, then the two with negative real
/// part by increasing real part. Throws EssentialSpectrumError when a root lies
/// within 1e-12 of the imaginary axis.
std::array<cplx, 4> asymptotic_splitting(cplx lambda, const EvansSystem& sys);

/// (1, mu, mu^2, mu^3).
std::array<cplx, 4> vandermonde(cplx mu);

/// Second exterior power acting on w_ij = u_i v_j - u_j v_i, coordinates
/// ordered (12, 13, 14, 23, 24, 34).
Matrix6 compound_lift(const Matrix4& M);
Wedge wedge(const std::array<cplx, 4>& u, const std::array<cplx, 4>& v);
/// M2 w without forming the 6x6 matrix.
Wedge lift_apply(const Matrix4& M, const Wedge& w);
/// Pairing of two 2-forms into the 4-form coefficient.
cplx wedge_pairing(const Wedge& plus, const Wedge& minus);

/// Sum s and product p of the decaying root pair at -infinity (s+ = mu1+ + mu2+,
/// p+ = mu1+ mu2+); the pair at +infinity has (-s, p).
std::pair<cplx, cplx> unstable_pair_symmetric(cplx lambda, const EvansSystem& sys);
/// (v(mu1) ^ v(mu2)) / (mu2 - mu1) = (1, s, s^2 - p, p, p s, p^2).
Wedge pair_wedge(cplx s, cplx p);

struct EvansEvaluation {
  cplx lambda;
  /// D(lambda), including the accumulated rescaling exp(renorm_log).
  cplx value;
  cplx pairing;
  double renorm_log = 0.0;
  bool ok = false;
  std::string message;
};

struct EvansOptions {
  Tolerances tol{1e-10, 1e-12, 1e-12, 1e-9};
  /// Length of the integration chunks between renormalizations.
  double chunk = 4.0;
};

/// Evans function of the fourth-order problem by the compound-matrix method.
EvansEvaluation evans_eval(cplx lambda, const EvansSystem& sys, const EvansOptions& opts = {});

/// Edge sigma0 / 4 of the essential spectrum of L0 + 2 omega0 f.
double sl_essential_edge(const FieldConstants& fc);

/// 2x2 Evans function of the Sturm-Liouville operator L0 + 2 omega0 f.
EvansEvaluation evans_eval_SL(cplx lambda, const EvansSystem& sys,
                              const EvansOptions& opts = {});

}  // namespace novikov
