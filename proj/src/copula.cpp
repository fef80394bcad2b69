#include "archvar/copula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "archvar/errors.hpp"

namespace archvar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// log(1 - exp(-x)) for x > 0, accurate at both ends.
double log1mexp(double x) {
  return x > std::numbers::ln2 ? std::log1p(-std::exp(-x)) : std::log(-std::expm1(-x));
}

// 1 - (1 - t)^θ without cancellation.
double joe_one_minus_pow(double theta, double t) {
  return -std::expm1(theta * std::log1p(-t));
}

void check_unit(double t, const char* op) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream msg;
    msg << op << ": argument " << t << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

}  // namespace

std::string_view family_name(Family family) noexcept {
  switch (family) {
    case Family::Clayton:
      return "clayton";
    case Family::Frank:
      return "frank";
    case Family::GumbelHougaard:
      return "gumbel";
    case Family::Joe:
      return "joe";
    case Family::AliMikhailHaq:
      return "amh";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  const std::string key = lower(name);
  if (key == "clayton") return Family::Clayton;
  if (key == "frank") return Family::Frank;
  if (key == "gumbel" || key == "gumbel-hougaard" || key == "gumbelhougaard")
    return Family::GumbelHougaard;
  if (key == "joe") return Family::Joe;
  if (key == "amh" || key == "ali-mikhail-haq" || key == "alimikhailhaq")
    return Family::AliMikhailHaq;
  throw ArgumentError("unknown copula family '" + std::string(name) +
                      "' (expected clayton, frank, gumbel, joe or amh)");
}

CopulaSpec::CopulaSpec(Family family, double theta, int dim)
    : family_(family), theta_(theta), dim_(dim) {
  if (dim < 2) {
    throw DimensionError("copula dimension must be at least 2, got " +
                         std::to_string(dim));
  }
  if (!std::isfinite(theta)) {
    throw DomainError("copula parameter theta must be finite");
  }
  std::ostringstream msg;
  msg << family_name(family) << ": theta = " << theta << " ";
  switch (family) {
    case Family::Clayton:
      if (!(theta > 0.0)) {
        msg << "outside (0, inf); independence is a limit, not a member";
        throw DomainError(msg.str());
      }
      break;
    case Family::Frank:
      if (theta == 0.0) {
        msg << "is excluded; independence is a limit, not a member";
        throw DomainError(msg.str());
      }
      if (theta < 0.0 && dim > 2) {
        msg << "< 0 is only a valid copula for d = 2";
        throw DomainError(msg.str());
      }
      break;
    case Family::GumbelHougaard:
    case Family::Joe:
      if (!(theta >= 1.0)) {
        msg << "outside [1, inf)";
        throw DomainError(msg.str());
      }
      break;
    case Family::AliMikhailHaq:
      if (!(theta >= -1.0 && theta < 1.0)) {
        msg << "outside [-1, 1)";
        throw DomainError(msg.str());
      }
      if (dim != 2) {
        throw DimensionError(
            "amh: only the bivariate copula is Archimedean; its generator is "
            "not completely monotone, so d must be 2 (got " +
            std::to_string(dim) + ")");
      }
      break;
  }
}

std::string to_string(const CopulaSpec& spec) {
  std::ostringstream out;
  out << family_name(spec.family()) << "(theta=" << spec.theta()
      << ", d=" << spec.dim() << ")";
  return out.str();
}

double phi(const CopulaSpec& spec, double t) {
  check_unit(t, "phi");
  if (t == 0.0) {
    throw InfiniteGeneratorError("phi: generator is infinite at t = 0 for " +
                                 to_string(spec));
  }
  const double theta = spec.theta();
  switch (spec.family()) {
    case Family::Clayton:
      return std::expm1(-theta * std::log(t)) / theta;
    case Family::Frank: {
      const double denom = std::expm1(-theta);
      const double ratio = std::expm1(-theta * t) / denom;
      if (ratio < 0.5) return -std::log(ratio);
      // ratio - 1 = e^{-θ}·expm1(θ(1-t)) / expm1(-θ)
      return -std::log1p(std::exp(-theta) * std::expm1(theta * (1.0 - t)) /
                         denom);
    }
    case Family::GumbelHougaard:
      return std::pow(-std::log(t), theta);
    case Family::Joe: {
      const double tail = std::pow(1.0 - t, theta);
      return tail < 0.5 ? -std::log1p(-tail)
                        : -std::log(joe_one_minus_pow(theta, t));
    }
    case Family::AliMikhailHaq:
      return std::log1p((1.0 - theta) * (1.0 - t) / t);
  }
  return 0.0;
}

double phi_prime(const CopulaSpec& spec, double t) {
  if (!(t > 0.0 && t < 1.0)) {
    std::ostringstream msg;
    msg << "phi_prime: argument " << t << " outside (0, 1)";
    throw DomainError(msg.str());
  }
  const double theta = spec.theta();
  switch (spec.family()) {
    case Family::Clayton:
      return -std::exp((-theta - 1.0) * std::log(t));
    case Family::Frank:
      return -theta / std::expm1(theta * t);
    case Family::GumbelHougaard:
      return -theta * std::pow(-std::log(t), theta - 1.0) / t;
    case Family::Joe:
      return -theta * std::pow(1.0 - t, theta - 1.0) /
             joe_one_minus_pow(theta, t);
    case Family::AliMikhailHaq:
      return (theta - 1.0) / (t * (1.0 - theta * (1.0 - t)));
  }
  return 0.0;
}

double phi_inverse(const CopulaSpec& spec, double s) {
  if (std::isnan(s) || s < 0.0) {
    std::ostringstream msg;
    msg << "phi_inverse: argument " << s << " is negative";
    throw DomainError(msg.str());
  }
  if (s == 0.0) return 1.0;
  if (s == kInf) return 0.0;
  const double theta = spec.theta();
  switch (spec.family()) {
    case Family::Clayton:
      return std::exp(-std::log1p(theta * s) / theta);
    case Family::Frank: {
      // 1 + expm1(-θ)e^{-s}, rewritten as a sum of positive terms when the
      // product is close to -1.
      const double shift = std::expm1(-theta) * std::exp(-s);
      if (std::fabs(shift) < 0.5) return -std::log1p(shift) / theta;
      return -std::log(-std::expm1(-s) + std::exp(-theta - s)) / theta;
    }
    case Family::GumbelHougaard:
      return std::exp(-std::pow(s, 1.0 / theta));
    case Family::Joe:
      return -std::expm1(log1mexp(s) / theta);
    case Family::AliMikhailHaq:
      return (1.0 - theta) / (std::expm1(s) + 1.0 - theta);
  }
  return 0.0;
}

double copula_cdf(const CopulaSpec& spec, std::span<const double> u) {
  if (static_cast<int>(u.size()) != spec.dim()) {
    throw DimensionError("copula_cdf: point has " + std::to_string(u.size()) +
                         " coordinates, copula dimension is " +
                         std::to_string(spec.dim()));
  }
  for (double x : u) check_unit(x, "copula_cdf");
  if (std::any_of(u.begin(), u.end(), [](double x) { return x == 0.0; })) {
    return 0.0;
  }

  const double theta = spec.theta();
  double value = 0.0;
  switch (spec.family()) {
    case Family::Clayton: {
      double sum = 0.0;
      for (double x : u) sum += std::expm1(-theta * std::log(x));
      value = std::exp(-std::log1p(sum) / theta);
      break;
    }
    case Family::Frank:
    case Family::Joe: {
      // The product forms 1 + ∏(e^{-θu_i} − 1)/(e^{-θ} − 1)^{d−1} and
      // 1 − [1 − ∏(1 − (1 − u_i)^θ)]^{1/θ} cancel badly near C = 1; they are
      // evaluated as φ^{-1}(Σ φ(u_i)), which is the same function.
      double sum = 0.0;
      for (double x : u) sum += phi(spec, x);
      value = phi_inverse(spec, sum);
      break;
    }
    case Family::GumbelHougaard: {
      double sum = 0.0;
      for (double x : u) sum += std::pow(-std::log(x), theta);
      value = std::exp(-std::pow(sum, 1.0 / theta));
      break;
    }
    case Family::AliMikhailHaq:
      value = u[0] * u[1] / (1.0 - theta * (1.0 - u[0]) * (1.0 - u[1]));
      break;
  }
  return std::clamp(value + 0.0, 0.0, 1.0);
}

double beta_kernel(const CopulaSpec& spec, double u, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("beta_kernel: alpha must lie in (0, 1)");
  }
  if (!(u >= alpha && u < 1.0)) {
    std::ostringstream msg;
    msg << "beta_kernel: u = " << u << " outside [alpha, 1) = [" << alpha
        << ", 1)";
    throw DomainError(msg.str());
  }
  const double slope = -phi_prime(spec, u);
  if (spec.dim() == 2) return slope;
  const double gap = std::max(0.0, phi(spec, alpha) - phi(spec, u));
  return slope * std::pow(gap, spec.dim() - 2);
}

void require_var_domain(const CopulaSpec& spec) {
  if (spec.family() == Family::Frank && !(spec.theta() > 0.0)) {
    std::ostringstream msg;
    msg << "frank: the VaR expression requires 0 < theta < inf, got theta = "
        << spec.theta();
    throw DomainError(msg.str());
  }
}

}  // namespace archvar
