#pragma once

#include "archvar/copula.hpp"

namespace archvar {

/// Interval of Kendall tau values a family can reach, with openness flags.
struct TauRange {
  double lower;
  double upper;
  bool lower_closed;
  bool upper_closed;

  bool contains(double tau) const;
};

TauRange attainable_tau(Family family);

/// Kendall's tau of the copula. Closed form for Clayton, Gumbel-Hougaard and
/// AMH (series below |θ| < 1e-3); Frank through the Debye integral
/// ∫_0^θ t/(e^t − 1) dt and Joe through its unit-interval integral, both by
/// adaptive quadrature. The dimension of the spec is irrelevant.
double kendall_tau(const CopulaSpec& spec);

/// Same, from a family and parameter; validates θ as a bivariate spec.
double kendall_tau(Family family, double theta);

/// Inverse of kendall_tau. Clayton θ = 2τ/(1−τ) and Gumbel θ = 1/(1−τ) in
/// closed form; Frank, Joe and AMH by bisection on a geometrically expanded
/// bracket. Throws RangeError naming the attainable interval otherwise.
double theta_from_tau(Family family, double tau);

}  // namespace archvar
