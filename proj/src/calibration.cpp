#include "archvar/calibration.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "archvar/errors.hpp"
#include "archvar/quadrature.hpp"

namespace archvar {

namespace {

constexpr double kTauTol = 1e-10;
constexpr int kMaxIterations = 200;

QuadConfig tight_quadrature() {
  QuadConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-12;
  cfg.max_subdivisions = 5000;
  return cfg;
}

double frank_tau(double theta) {
  if (theta < 0.0) return -frank_tau(-theta);
  if (std::fabs(theta) < 1e-2) {
    const double t2 = theta * theta;
    return theta * (1.0 / 9.0 - t2 / 900.0 + t2 * t2 / 52920.0);
  }
  // ∫_0^θ t/(e^t − 1) dt; the integrand tends to 1 at t = 0.
  const double debye =
      integrate([](double t) { return t / std::expm1(t); }, 0.0, theta,
                tight_quadrature())
          .value;
  return 1.0 - 4.0 / theta * (1.0 - debye / theta);
}

double joe_tau(double theta) {
  if (theta == 1.0) return 0.0;
  // With s = 1 − t the integrand is (1 − s^θ) ln(1 − s^θ) / s^{θ−1}, which
  // vanishes like −s at s = 0 and has an s ln s type endpoint at s = 1.
  auto f = [theta](double s) {
    const double x = std::pow(s, theta);
    if (x == 0.0) return -s;
    const double log_term = x < 0.5 ? std::log1p(-x) : std::log(-std::expm1(theta * std::log(s)));
    return s * (1.0 - x) * (log_term / x);
  };
  const double integral = integrate(f, 0.0, 1.0, tight_quadrature()).value;
  return 1.0 + 4.0 / theta * integral;
}

double amh_tau(double theta) {
  if (std::fabs(theta) < 1e-3) {
    // Σ_{m≥1} 4θ^m / (3 m (m+1) (m+2))
    double sum = 0.0;
    double power = 1.0;
    for (int m = 1; m <= 8; ++m) {
      power *= theta;
      sum += 4.0 * power / (3.0 * m * (m + 1) * (m + 2));
    }
    return sum;
  }
  const double t2 = theta * theta;
  return 1.0 - 2.0 / 3.0 *
                   (theta + (1.0 - theta) * (1.0 - theta) * std::log1p(-theta)) /
                   t2;
}

[[noreturn]] void unattainable(Family family, double tau) {
  const TauRange r = attainable_tau(family);
  std::ostringstream msg;
  msg << family_name(family) << ": Kendall tau " << tau
      << " is not attainable; the family covers "
      << (r.lower_closed ? "[" : "(") << r.lower << ", " << r.upper
      << (r.upper_closed ? "]" : ")");
  if (family == Family::Frank) msg << " excluding 0";
  throw RangeError(msg.str());
}

// Bisection for an increasing tau(θ) on [lo, hi].
template <typename TauFn>
double bisect(TauFn tau_of, double target, double lo, double hi) {
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIterations; ++it) {
    mid = 0.5 * (lo + hi);
    const double value = tau_of(mid);
    if (std::fabs(value - target) <= kTauTol) return mid;
    if (value < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (!(hi - lo > 4.0 * std::numeric_limits<double>::epsilon() *
                        std::fabs(mid))) {
      return mid;
    }
  }
  throw NumericalError("theta_from_tau: bisection did not converge", mid,
                       hi - lo);
}

// Expands [0, start·2^k] until tau crosses target.
template <typename TauFn>
double solve_unbounded(TauFn tau_of, double target, double start) {
  double lo = 0.0;
  double hi = start;
  int guard = 0;
  while (tau_of(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 60) {
      throw NumericalError("theta_from_tau: bracket expansion failed", hi, 0.0);
    }
  }
  return bisect(tau_of, target, lo, hi);
}

}  // namespace

bool TauRange::contains(double tau) const {
  const bool above = lower_closed ? tau >= lower : tau > lower;
  const bool below = upper_closed ? tau <= upper : tau < upper;
  return above && below;
}

TauRange attainable_tau(Family family) {
  switch (family) {
    case Family::Clayton:
      return {0.0, 1.0, false, false};
    case Family::Frank:
      return {-1.0, 1.0, false, false};
    case Family::GumbelHougaard:
    case Family::Joe:
      return {0.0, 1.0, true, false};
    case Family::AliMikhailHaq:
      return {amh_tau(-1.0), 1.0 / 3.0, true, false};
  }
  return {0.0, 0.0, false, false};
}

double kendall_tau(const CopulaSpec& spec) {
  const double theta = spec.theta();
  switch (spec.family()) {
    case Family::Clayton:
      return theta / (theta + 2.0);
    case Family::Frank:
      return frank_tau(theta);
    case Family::GumbelHougaard:
      return 1.0 - 1.0 / theta;
    case Family::Joe:
      return joe_tau(theta);
    case Family::AliMikhailHaq:
      return amh_tau(theta);
  }
  return 0.0;
}

double kendall_tau(Family family, double theta) {
  return kendall_tau(CopulaSpec(family, theta, 2));
}

double theta_from_tau(Family family, double tau) {
  if (!std::isfinite(tau) || !attainable_tau(family).contains(tau) ||
      (family == Family::Frank && tau == 0.0)) {
    unattainable(family, tau);
  }
  switch (family) {
    case Family::Clayton:
      return 2.0 * tau / (1.0 - tau);
    case Family::GumbelHougaard:
      return 1.0 / (1.0 - tau);
    case Family::Frank: {
      // tau is odd in θ.
      const double magnitude =
          solve_unbounded(frank_tau, std::fabs(tau), 1.0 / 64.0);
      return tau > 0.0 ? magnitude : -magnitude;
    }
    case Family::Joe:
      if (tau == 0.0) return 1.0;
      return solve_unbounded([](double t) { return joe_tau(1.0 + t); }, tau,
                             1.0 / 64.0) +
             1.0;
    case Family::AliMikhailHaq:
      if (tau == attainable_tau(family).lower) return -1.0;
      return bisect(amh_tau, tau, -1.0, std::nextafter(1.0, 0.0));
  }
  unattainable(family, tau);
}

}  // namespace archvar
