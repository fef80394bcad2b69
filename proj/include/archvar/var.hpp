#pragma once

#include <vector>

#include "archvar/copula.hpp"
#include "archvar/quadrature.hpp"
#include "archvar/quantile.hpp"

namespace archvar {

/// Marginal components of the multivariate VaR at level alpha.
struct VarResult {
  double alpha;
  std::vector<double> components;
  std::vector<double> abs_error_estimate;
  CopulaSpec spec;
};

/// Marginal VaR for any supported family from the generator form
///
///   VaR^i_α = (d−1)/φ(α)^{d−1} ∫_α^1 VaR_u(X_i) β_d(u, α) du,
///
/// with β_d taken from beta_kernel(). Margins must have spec.dim() entries.
/// Components sharing the same QuantileFn are integrated once and copied.
VarResult var_generic(const CopulaSpec& spec, const Margins& margins,
                      double alpha, const QuadConfig& cfg = {});

/// Clayton: prefactor (d−1)θ/(α^{−θ}−1)^{d−1}, integrand
/// VaR_u · u^{−θ−1} (α^{−θ} − u^{−θ})^{d−2} on [α, 1].
VarResult var_clayton(const CopulaSpec& spec, const Margins& margins,
                      double alpha, const QuadConfig& cfg = {});

/// Clayton with uniform margins; every component has this value.
double var_clayton_uniform(double theta, int dim, double alpha,
                           const QuadConfig& cfg = {});

/// Frank, θ > 0 only: integrand VaR_u · θe^{−θu}/(1−e^{−θu}) ·
/// [ln((e^{−θu}−1)/(e^{−θα}−1))]^{d−2}.
VarResult var_frank(const CopulaSpec& spec, const Margins& margins,
                    double alpha, const QuadConfig& cfg = {});

/// Gumbel-Hougaard in the variable v = −ln u, integrated over [0, −ln α].
VarResult var_gumbel(const CopulaSpec& spec, const Margins& margins,
                     double alpha, const QuadConfig& cfg = {});

/// Joe in the variable v = 1 − u, integrated over [0, 1 − α].
VarResult var_joe(const CopulaSpec& spec, const Margins& margins,
                  double alpha, const QuadConfig& cfg = {});

/// Bivariate Ali-Mikhail-Haq.
VarResult var_amh(const CopulaSpec& spec, const Margins& margins,
                  double alpha, const QuadConfig& cfg = {});

/// Dispatches to the family-specific expression.
VarResult var_closed_form(const CopulaSpec& spec, const Margins& margins,
                          double alpha, const QuadConfig& cfg = {});

/// (d−1)/φ(α)^{d−1} ∫_α^1 β_d(u, α) du, which is 1 for every valid input.
/// A diagnostic for the kernel and the quadrature together.
double kernel_mass(const CopulaSpec& spec, double alpha,
                   const QuadConfig& cfg = {});

}  // namespace archvar
