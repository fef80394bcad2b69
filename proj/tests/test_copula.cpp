#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "archvar/copula.hpp"
#include "archvar/errors.hpp"

using namespace archvar;

namespace {

// Three admissible parameters per family, spanning weak to strong dependence.
std::vector<CopulaSpec> spec_grid(int dim) {
  std::vector<CopulaSpec> out;
  for (double t : {0.5, 2.0, 5.0}) out.emplace_back(Family::Clayton, t, dim);
  for (double t : {1.0, 5.74, 15.0}) out.emplace_back(Family::Frank, t, dim);
  for (double t : {1.0, 2.0, 4.0}) out.emplace_back(Family::GumbelHougaard, t, dim);
  for (double t : {1.0, 2.4, 5.0}) out.emplace_back(Family::Joe, t, dim);
  if (dim == 2) {
    for (double t : {-0.5, 0.3, 0.9}) out.emplace_back(Family::AliMikhailHaq, t, 2);
    for (double t : {-4.0, -0.5}) out.emplace_back(Family::Frank, t, 2);
  }
  return out;
}

}  // namespace

TEST_CASE("spec validation rejects boundary and out-of-domain parameters") {
  CHECK_THROWS_AS(CopulaSpec(Family::Clayton, 0.0, 2), DomainError);
  CHECK_THROWS_AS(CopulaSpec(Family::Clayton, -1.0, 2), DomainError);
  CHECK_THROWS_AS(CopulaSpec(Family::Frank, 0.0, 2), DomainError);
  CHECK_THROWS_AS(CopulaSpec(Family::Frank, -1.0, 3), DomainError);
  CHECK_NOTHROW(CopulaSpec(Family::Frank, -1.0, 2));
  CHECK_THROWS_AS(CopulaSpec(Family::GumbelHougaard, 0.99, 3), DomainError);
  CHECK_THROWS_AS(CopulaSpec(Family::Joe, 0.5, 3), DomainError);
  CHECK_THROWS_AS(CopulaSpec(Family::AliMikhailHaq, 1.0, 2), DomainError);
  CHECK_THROWS_AS(CopulaSpec(Family::AliMikhailHaq, -1.5, 2), DomainError);
  CHECK_THROWS_AS(CopulaSpec(Family::AliMikhailHaq, 0.5, 3), DimensionError);
  CHECK_THROWS_AS(CopulaSpec(Family::Clayton, 2.0, 1), DimensionError);
  CHECK_THROWS_AS(CopulaSpec(Family::Clayton, NAN, 2), DomainError);
  CHECK_NOTHROW(CopulaSpec(Family::AliMikhailHaq, -1.0, 2));
  CHECK_NOTHROW(CopulaSpec(Family::GumbelHougaard, 1.0, 5));
}

TEST_CASE("family names round trip") {
  for (Family f : {Family::Clayton, Family::Frank, Family::GumbelHougaard,
                   Family::Joe, Family::AliMikhailHaq}) {
    CHECK(parse_family(family_name(f)) == f);
  }
  CHECK(parse_family("Gumbel-Hougaard") == Family::GumbelHougaard);
  CHECK_THROWS_AS(parse_family("gaussian"), ArgumentError);
}

TEST_CASE("phi worked values") {
  CHECK(phi({Family::Clayton, 2.0, 3}, 1.0) == 0.0);
  CHECK(phi({Family::Clayton, 2.0, 3}, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(phi({Family::GumbelHougaard, 2.0, 3}, std::exp(-1.0)) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(phi({Family::Frank, 1.0, 3}, 1.0) == 0.0);
}

TEST_CASE("phi domain errors") {
  const CopulaSpec c(Family::Clayton, 2.0, 2);
  CHECK_THROWS_AS(phi(c, 0.0), InfiniteGeneratorError);
  CHECK_THROWS_AS(phi(c, -0.1), DomainError);
  CHECK_THROWS_AS(phi(c, 1.5), DomainError);
  CHECK_THROWS_AS(phi_prime(c, 1.0), DomainError);
  CHECK_THROWS_AS(phi_prime(c, 0.0), DomainError);
  CHECK_THROWS_AS(phi_inverse(c, -1.0), DomainError);
  for (const auto& spec : spec_grid(2)) {
    CHECK_THROWS_AS(phi(spec, 0.0), InfiniteGeneratorError);
  }
}

TEST_CASE("phi_prime worked values") {
  // d/dt (t^{-2} - 1)/2 = -t^{-3}
  CHECK(phi_prime({Family::Clayton, 2.0, 2}, 0.5) == doctest::Approx(-8.0).epsilon(1e-15));
  CHECK(phi_prime({Family::AliMikhailHaq, 0.0, 2}, 0.5) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(phi_prime({Family::Joe, 1.0, 2}, 0.5) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("independence reductions equal -ln t") {
  const CopulaSpec amh(Family::AliMikhailHaq, 0.0, 2);
  const CopulaSpec joe(Family::Joe, 1.0, 2);
  const CopulaSpec gumbel(Family::GumbelHougaard, 1.0, 2);
  for (double t : {0.01, 0.2, 0.5, 0.9, 0.999}) {
    for (const auto& s : {amh, joe, gumbel}) {
      CHECK(phi(s, t) == doctest::Approx(-std::log(t)).epsilon(1e-14));
      CHECK(phi_prime(s, t) == doctest::Approx(-1.0 / t).epsilon(1e-14));
    }
  }
}

TEST_CASE("phi_inverse worked values") {
  for (const auto& spec : spec_grid(2)) CHECK(phi_inverse(spec, 0.0) == 1.0);
  CHECK(phi_inverse({Family::Clayton, 2.0, 2}, 1.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phi_inverse({Family::GumbelHougaard, 2.0, 2}, 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(phi_inverse({Family::Clayton, 2.0, 2}, HUGE_VAL) == 0.0);
}

TEST_CASE("generator is zero at one and strictly decreasing") {
  for (const auto& spec : spec_grid(2)) {
    CAPTURE(to_string(spec));
    CHECK(phi(spec, 1.0) == 0.0);
    // 1000-point grid on (0, 1]: t_i = i / 1000.
    double prev = phi(spec, 0.001);
    bool decreasing = true;
    for (int i = 2; i <= 1000; ++i) {
      const double cur = phi(spec, i / 1000.0);
      decreasing = decreasing && cur < prev;
      prev = cur;
    }
    CHECK(decreasing);
  }
}

TEST_CASE("phi_inverse(phi(t)) round trip to 1e-12") {
  for (const auto& spec : spec_grid(2)) {
    CAPTURE(to_string(spec));
    double worst = 0.0;
    for (int k = 0; k <= 600; ++k) {
      // log-spaced on [1e-6, 1]
      const double t = std::pow(10.0, -6.0 + 6.0 * k / 600.0);
      const double back = phi_inverse(spec, phi(spec, t));
      worst = std::max(worst, std::fabs(back - t) / t);
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("phi_prime matches central differences") {
  for (const auto& spec : spec_grid(2)) {
    CAPTURE(to_string(spec));
    double worst = 0.0;
    for (int k = 0; k <= 98; ++k) {
      const double t = 0.01 + 0.01 * k;
      const double step = 1e-6 * t;
      const double fd = (phi(spec, t + step) - phi(spec, t - step)) / (2 * step);
      const double exact = phi_prime(spec, t);
      CHECK(exact < 0.0);
      worst = std::max(worst, std::fabs(fd - exact) / std::fabs(exact));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("copula_cdf worked values") {
  const std::vector<double> a{0.3, 1.0, 1.0};
  CHECK(copula_cdf({Family::Clayton, 2.0, 3}, a) == doctest::Approx(0.3).epsilon(1e-15));
  const std::vector<double> b{0.0, 0.5, 0.9};
  CHECK(copula_cdf({Family::Frank, 5.74, 3}, b) == 0.0);
  const std::vector<double> c{0.5, 0.5};
  CHECK(copula_cdf({Family::Clayton, 2.0, 2}, c) ==
        doctest::Approx(1.0 / std::sqrt(7.0)).epsilon(1e-15));
  const std::vector<double> wrong{0.5, 0.5};
  CHECK_THROWS_AS(copula_cdf({Family::Clayton, 2.0, 3}, wrong), DimensionError);
}

TEST_CASE("copula axioms: margins, zero coordinate, exchangeability") {
  for (int dim : {2, 3, 5}) {
    for (const auto& spec : spec_grid(dim)) {
      CAPTURE(to_string(spec));
      for (double u : {0.01, 0.3, 0.77, 0.999}) {
        for (int pos = 0; pos < dim; ++pos) {
          std::vector<double> pt(dim, 1.0);
          pt[pos] = u;
          CHECK(copula_cdf(spec, pt) == doctest::Approx(u).epsilon(1e-13));
          std::fill(pt.begin(), pt.end(), 0.6);
          pt[pos] = 0.0;
          CHECK(copula_cdf(spec, pt) == 0.0);
        }
      }
      std::vector<double> pt;
      for (int i = 0; i < dim; ++i) pt.push_back(0.15 + 0.8 * i / dim);
      const double base = copula_cdf(spec, pt);
      std::sort(pt.begin(), pt.end());
      double worst = 0.0;
      do {
        worst = std::max(worst, std::fabs(copula_cdf(spec, pt) - base));
      } while (std::next_permutation(pt.begin(), pt.end()));
      CHECK(worst <= 1e-14);
    }
  }
}

TEST_CASE("copula_cdf equals the generator composition") {
  for (int dim : {2, 3, 5}) {
    for (const auto& spec : spec_grid(dim)) {
      CAPTURE(to_string(spec));
      double worst = 0.0;
      for (int k = 1; k < 20; ++k) {
        std::vector<double> pt;
        for (int i = 0; i < dim; ++i) {
          pt.push_back(std::fmod(0.05 * k + 0.37 * i, 0.98) + 0.01);
        }
        double s = 0.0;
        for (double x : pt) s += phi(spec, x);
        worst = std::max(worst, std::fabs(copula_cdf(spec, pt) - phi_inverse(spec, s)));
      }
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("numerical complete monotonicity of the inverse generator") {
  // Forward differences Δ^k with step h on (−1)^k ψ^{(k)}; scale by h^k.
  const double h = 1e-2;
  for (const auto& spec : spec_grid(2)) {
    CAPTURE(to_string(spec));
    // Negative-dependence generators are only 2-monotone.
    const bool negative = spec.theta() < 0.0;
    const int kmax = negative ? 2 : 4;
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double t = 0.1 + (10.0 - 0.1 - 4 * h) * i / 200.0;
      for (int k = 0; k <= kmax; ++k) {
        double diff = 0.0;
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
          diff += ((k - j) % 2 ? -1.0 : 1.0) * binom * phi_inverse(spec, t + j * h);
          binom = binom * (k - j) / (j + 1);
        }
        const double signed_deriv = (k % 2 ? -1.0 : 1.0) * diff / std::pow(h, k);
        worst = std::min(worst, signed_deriv);
      }
    }
    CHECK(worst >= -1e-6);
  }
}

TEST_CASE("beta_kernel worked values and domain") {
  const CopulaSpec c3(Family::Clayton, 2.0, 3);
  CHECK(beta_kernel(c3, 0.05, 0.05) == 0.0);
  // −φ'(0.5) = 8; φ(0.05) − φ(0.5) = (400 − 4)/2 = 198.
  CHECK(beta_kernel(c3, 0.5, 0.05) == doctest::Approx(8.0 * 198.0).epsilon(1e-13));
  for (const auto& spec : spec_grid(2)) {
    CHECK(beta_kernel(spec, 0.2, 0.2) == doctest::Approx(-phi_prime(spec, 0.2)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(beta_kernel(c3, 0.01, 0.05), DomainError);
  CHECK_THROWS_AS(beta_kernel(c3, 1.0, 0.05), DomainError);
  CHECK_THROWS_AS(beta_kernel(c3, 0.5, 1.0), DomainError);
}

TEST_CASE("require_var_domain only restricts Frank") {
  CHECK_THROWS_AS(require_var_domain({Family::Frank, -2.0, 2}), DomainError);
  CHECK_NOTHROW(require_var_domain({Family::Frank, 2.0, 3}));
  CHECK_NOTHROW(require_var_domain({Family::AliMikhailHaq, -0.5, 2}));
}
