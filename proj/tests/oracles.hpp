#pragma once

// Reference computations used only by the tests. They take routes that do
// not share code paths with the library's VaR integrators.

#include <algorithm>
#include <cmath>
#include <functional>

#include "archvar/copula.hpp"

namespace archvar::oracle {

// High-precision values of the Table-1 configurations (d = 3, α = 0.05,
// uniform margins), computed once with mpmath at 30 digits from the
// generator-form integral.
inline constexpr double kClayton2 = 0.123960695389266818;
inline constexpr double kFrank574 = 0.237818239507217587;
inline constexpr double kGumbel2 = 0.251828578717295293;
inline constexpr double kJoe24 = 0.317352708037796390;

// Kendall tau of Joe via the series 1 − 4 Σ_k 1/(k(θk+2)(θ(k−1)+2)), summed
// to K terms with an integral tail correction.
inline double joe_tau_series(double theta) {
  constexpr int kTerms = 200000;
  double sum = 0.0;
  for (int k = kTerms; k >= 1; --k) {
    sum += 1.0 / (k * (theta * k + 2.0) * (theta * (k - 1) + 2.0));
  }
  // Tail Σ_{k>K} ≈ ∫_K^∞ dk / (θ² k³) = 1/(2θ²K²).
  sum += 1.0 / (2.0 * theta * theta * double(kTerms) * kTerms);
  return 1.0 - 4.0 * sum;
}

// Conditional on C(U) = α, φ(U_i) = φ(α)·S with S ~ Beta(1, d−1). Hence
// VaR^i = E[q(φ^{-1}(φ(α) S))]. Midpoint rule in w with s = w^4, which
// flattens the s → 0 end.
inline double var_by_simplex(const CopulaSpec& spec,
                             const std::function<double(double)>& q,
                             double alpha, int nodes = 400000) {
  const double level = phi(spec, alpha);
  const int d = spec.dim();
  double acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double w = (k + 0.5) / nodes;
    const double s = w * w * w * w;
    const double density = (d - 1) * std::pow(1.0 - s, d - 2);
    const double u = std::min(phi_inverse(spec, level * s), 1.0 - 0x1.0p-53);
    acc += q(u) * density * 4.0 * w * w * w;
  }
  return acc / nodes;
}

}  // namespace archvar::oracle
