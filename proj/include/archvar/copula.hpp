#pragma once

#include <span>
#include <string>
#include <string_view>

namespace archvar {

enum class Family { Clayton, Frank, GumbelHougaard, Joe, AliMikhailHaq };

std::string_view family_name(Family family) noexcept;

/// Parses "clayton", "frank", "gumbel" / "gumbel-hougaard", "joe", "amh".
/// Case-insensitive. Throws ArgumentError on unknown names.
Family parse_family(std::string_view name);

/// Family tag, dependence parameter and dimension of an Archimedean copula.
///
/// Construction validates the parameter domain:
///   Clayton θ > 0; Frank θ ≠ 0 (θ < 0 only for d = 2);
///   Gumbel-Hougaard θ ≥ 1; Joe θ ≥ 1; AMH θ ∈ [-1, 1) and d = 2.
/// Boundary values that only exist as limits (Clayton θ = 0, Frank θ = 0)
/// are rejected rather than clamped.
class CopulaSpec {
 public:
  CopulaSpec(Family family, double theta, int dim);

  Family family() const noexcept { return family_; }
  double theta() const noexcept { return theta_; }
  int dim() const noexcept { return dim_; }

  CopulaSpec with_dim(int dim) const { return {family_, theta_, dim}; }

  friend bool operator==(const CopulaSpec&, const CopulaSpec&) = default;

 private:
  Family family_;
  double theta_;
  int dim_;
};

std::string to_string(const CopulaSpec& spec);

/// Generator φ_θ(t) for t ∈ (0, 1]. φ(1) = 0.
/// Throws InfiniteGeneratorError at t = 0 and DomainError outside [0, 1].
double phi(const CopulaSpec& spec, double t);

/// First derivative φ'_θ(t) for t ∈ (0, 1). Always negative.
double phi_prime(const CopulaSpec& spec, double t);

/// Inverse generator φ^{-1}(s) for s ≥ 0, with φ^{-1}(0) = 1 and
/// φ^{-1}(+∞) = 0.
double phi_inverse(const CopulaSpec& spec, double s);

/// Copula distribution function. Uses the family closed form; any zero
/// coordinate yields exactly 0.
double copula_cdf(const CopulaSpec& spec, std::span<const double> u);

/// Integration kernel −φ'(u)·[φ(α) − φ(u)]^{d−2} for u ∈ [α, 1).
/// For d = 2 the bracket power is 1 everywhere, including u = α.
double beta_kernel(const CopulaSpec& spec, double u, double alpha);

/// Throws DomainError unless the spec is admissible for the VaR formulas
/// (stricter than construction only for Frank, which requires θ > 0).
void require_var_domain(const CopulaSpec& spec);

}  // namespace archvar
