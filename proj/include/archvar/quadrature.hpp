#pragma once

#include <functional>

namespace archvar {

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 2000;

  /// Throws DomainError when a tolerance is not positive or the
  /// subdivision budget is below 1.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
};

/// Adaptive 21-point Gauss-Kronrod integration of f over [a, b].
///
/// The interval is first split on a mesh graded geometrically towards both
/// endpoints, so integrands with vanishing or steep factors at an endpoint
/// start from small panels there. The panel with the largest error estimate
/// is bisected until the summed error estimate meets
/// max(abs_tol, rel_tol·|I|). f is only evaluated at interior points.
///
/// Throws NumericalError carrying the partial estimate when the budget of
/// max_subdivisions bisections is exhausted.
QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadConfig& cfg = {});

}  // namespace archvar
