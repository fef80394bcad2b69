#include "archvar/var.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "archvar/errors.hpp"

namespace archvar {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream msg;
    msg << "confidence level alpha = " << alpha << " outside (0, 1)";
    throw DomainError(msg.str());
  }
}

void check_family(const CopulaSpec& spec, Family expected, const char* op) {
  if (spec.family() != expected) {
    throw ArgumentError(std::string(op) + " called with a " +
                        std::string(family_name(spec.family())) + " copula");
  }
}

void check_margins(const CopulaSpec& spec, const Margins& margins) {
  if (static_cast<int>(margins.size()) != spec.dim()) {
    throw DimensionError("expected " + std::to_string(spec.dim()) +
                         " margins, got " + std::to_string(margins.size()));
  }
}

// Integrates one component per distinct margin; `integrand(q)` returns the
// full (prefactor included) integrand for margin q over [lo, hi].
template <typename MakeIntegrand>
VarResult assemble(const CopulaSpec& spec, const Margins& margins,
                   double alpha, const QuadConfig& cfg, double lo, double hi,
                   MakeIntegrand make_integrand) {
  const std::size_t d = margins.size();
  VarResult out{alpha, std::vector<double>(d), std::vector<double>(d), spec};
  std::vector<bool> done(d, false);
  for (std::size_t i = 0; i < d; ++i) {
    if (done[i]) continue;
    const std::function<double(double)> f = make_integrand(margins[i]);
    const QuadResult r = integrate(f, lo, hi, cfg);
    for (std::size_t j = i; j < d; ++j) {
      if (!done[j] && margins[j].same_as(margins[i])) {
        out.components[j] = r.value;
        out.abs_error_estimate[j] = r.abs_error;
        done[j] = true;
      }
    }
  }
  return out;
}

}  // namespace

VarResult var_generic(const CopulaSpec& spec, const Margins& margins,
                      double alpha, const QuadConfig& cfg) {
  check_alpha(alpha);
  check_margins(spec, margins);
  const int d = spec.dim();
  const double scale = (d - 1) / std::pow(phi(spec, alpha), d - 1);
  return assemble(spec, margins, alpha, cfg, alpha, 1.0,
                  [&](const QuantileFn& q) {
                    return [&spec, q, scale, alpha](double u) {
                      return scale * q(u) * beta_kernel(spec, u, alpha);
                    };
                  });
}

VarResult var_clayton(const CopulaSpec& spec, const Margins& margins,
                      double alpha, const QuadConfig& cfg) {
  check_family(spec, Family::Clayton, "var_clayton");
  check_alpha(alpha);
  check_margins(spec, margins);
  const double theta = spec.theta();
  const int d = spec.dim();
  const double a_pow = std::pow(alpha, -theta);
  const double pref =
      (d - 1) * theta / std::pow(std::expm1(-theta * std::log(alpha)), d - 1);
  return assemble(spec, margins, alpha, cfg, alpha, 1.0,
                  [=](const QuantileFn& q) {
                    return [=](double u) {
                      const double u_pow = std::pow(u, -theta);
                      return pref * q(u) * u_pow / u *
                             std::pow(a_pow - u_pow, d - 2);
                    };
                  });
}

double var_clayton_uniform(double theta, int dim, double alpha,
                           const QuadConfig& cfg) {
  const CopulaSpec spec(Family::Clayton, theta, dim);
  check_alpha(alpha);
  const double a_pow = std::pow(alpha, -theta);
  const double pref =
      (dim - 1) * theta / std::pow(std::expm1(-theta * std::log(alpha)), dim - 1);
  auto f = [=](double u) {
    const double u_pow = std::pow(u, -theta);
    return pref * std::pow(a_pow - u_pow, dim - 2) * u_pow;
  };
  return integrate(f, alpha, 1.0, cfg).value;
}

VarResult var_frank(const CopulaSpec& spec, const Margins& margins,
                    double alpha, const QuadConfig& cfg) {
  check_family(spec, Family::Frank, "var_frank");
  require_var_domain(spec);
  check_alpha(alpha);
  check_margins(spec, margins);
  const double theta = spec.theta();
  const int d = spec.dim();
  const double level_gap = std::expm1(-theta * alpha);
  const double pref = (d - 1) / std::pow(phi(spec, alpha), d - 1);
  return assemble(spec, margins, alpha, cfg, alpha, 1.0,
                  [=](const QuantileFn& q) {
                    return [=](double u) {
                      const double e = std::exp(-theta * u);
                      const double slope = theta * e / -std::expm1(-theta * u);
                      const double bracket =
                          std::log(std::expm1(-theta * u) / level_gap);
                      return pref * q(u) * slope * std::pow(bracket, d - 2);
                    };
                  });
}

VarResult var_gumbel(const CopulaSpec& spec, const Margins& margins,
                     double alpha, const QuadConfig& cfg) {
  check_family(spec, Family::GumbelHougaard, "var_gumbel");
  check_alpha(alpha);
  check_margins(spec, margins);
  const double theta = spec.theta();
  const int d = spec.dim();
  const double upper = -std::log(alpha);
  const double upper_pow = std::pow(upper, theta);
  const double pref = theta * (d - 1) / std::pow(upper, theta * (d - 1));
  return assemble(spec, margins, alpha, cfg, 0.0, upper,
                  [=](const QuantileFn& q) {
                    return [=](double v) {
                      return pref * q(std::exp(-v)) * std::pow(v, theta - 1.0) *
                             std::pow(upper_pow - std::pow(v, theta), d - 2);
                    };
                  });
}

VarResult var_joe(const CopulaSpec& spec, const Margins& margins,
                  double alpha, const QuadConfig& cfg) {
  check_family(spec, Family::Joe, "var_joe");
  check_alpha(alpha);
  check_margins(spec, margins);
  const double theta = spec.theta();
  const int d = spec.dim();
  const double level = phi(spec, alpha);
  const double pref = theta * (d - 1) / std::pow(level, d - 1);
  return assemble(spec, margins, alpha, cfg, 0.0, 1.0 - alpha,
                  [=](const QuantileFn& q) {
                    return [=](double v) {
                      const double v_pow = std::pow(v, theta);
                      const double log_one_minus = std::log1p(-v_pow);
                      return pref * q(1.0 - v) * (v_pow / v) / (1.0 - v_pow) *
                             std::pow(level + log_one_minus, d - 2);
                    };
                  });
}

VarResult var_amh(const CopulaSpec& spec, const Margins& margins,
                  double alpha, const QuadConfig& cfg) {
  check_family(spec, Family::AliMikhailHaq, "var_amh");
  if (spec.dim() != 2) {
    throw DimensionError("var_amh: the AMH copula is only Archimedean for d = 2");
  }
  check_alpha(alpha);
  check_margins(spec, margins);
  const double theta = spec.theta();
  const double pref =
      (1.0 - theta) / std::log1p((1.0 - theta) * (1.0 - alpha) / alpha);
  return assemble(spec, margins, alpha, cfg, alpha, 1.0,
                  [=](const QuantileFn& q) {
                    return [=](double u) {
                      return pref * q(u) / (u * (1.0 - theta * (1.0 - u)));
                    };
                  });
}

VarResult var_closed_form(const CopulaSpec& spec, const Margins& margins,
                          double alpha, const QuadConfig& cfg) {
  switch (spec.family()) {
    case Family::Clayton:
      return var_clayton(spec, margins, alpha, cfg);
    case Family::Frank:
      return var_frank(spec, margins, alpha, cfg);
    case Family::GumbelHougaard:
      return var_gumbel(spec, margins, alpha, cfg);
    case Family::Joe:
      return var_joe(spec, margins, alpha, cfg);
    case Family::AliMikhailHaq:
      return var_amh(spec, margins, alpha, cfg);
  }
  throw ArgumentError("var_closed_form: unknown family");
}

double kernel_mass(const CopulaSpec& spec, double alpha, const QuadConfig& cfg) {
  check_alpha(alpha);
  const int d = spec.dim();
  const double scale = (d - 1) / std::pow(phi(spec, alpha), d - 1);
  return integrate([&](double u) { return scale * beta_kernel(spec, u, alpha); },
                   alpha, 1.0, cfg)
      .value;
}

}  // namespace archvar
