#include "archvar/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

#include "archvar/errors.hpp"
#include "archvar/parallel.hpp"

namespace archvar {

namespace {

constexpr double kLowest = std::numeric_limits<double>::min();
constexpr double kHighest = 1.0 - 0x1.0p-53;

double unit_exponential(CounterRng& rng) { return -std::log(rng.uniform()); }

double standard_normal(CounterRng& rng) {
  const double radius = std::sqrt(-2.0 * std::log(rng.uniform()));
  return radius * std::cos(2.0 * std::numbers::pi * rng.uniform());
}

// Marsaglia-Tsang; shapes below 1 use the Gamma(a+1)·U^{1/a} boost.
double gamma_variate(double shape, CounterRng& rng) {
  if (shape < 1.0) {
    const double boost = std::pow(rng.uniform(), 1.0 / shape);
    return gamma_variate(shape + 1.0, rng) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = standard_normal(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

// Kemp's LK algorithm. P(V = k) = −p^k / (k ln(1 − p)), with ln(1 − p) = −θ.
double log_series_variate(double theta, CounterRng& rng) {
  const double p = -std::expm1(-theta);
  const double v = rng.uniform();
  if (v >= p) return 1.0;
  const double q = -std::expm1(-theta * rng.uniform());
  if (v > q) return 1.0;
  if (v > q * q) return 2.0;
  return std::floor(1.0 + std::log(v) / std::log(q));
}

// Kanter's representation of the one-sided stable law with Laplace
// transform exp(−s^a), 0 < a < 1.
double positive_stable_variate(double index, CounterRng& rng) {
  const double angle = std::numbers::pi * rng.uniform();
  const double w = unit_exponential(rng);
  const double rest = 1.0 - index;
  return std::sin(index * angle) / std::pow(std::sin(angle), 1.0 / index) *
         std::pow(std::sin(rest * angle) / w, rest / index);
}

// Sibuya(a): P(V > n) = 1 / (n B(n, 1 − a)). Inversion through the
// asymptotic survival function, then a one-step correction.
double sibuya_variate(double index, CounterRng& rng) {
  const double u = rng.uniform();
  if (u <= index) return 1.0;
  const double tail = 1.0 - u;
  const double approx =
      std::pow(tail * std::tgamma(1.0 - index), -1.0 / index);
  const double lower = std::floor(approx);
  if (approx > 1.0 / std::numeric_limits<double>::epsilon()) return lower;
  const double log_beta = std::lgamma(lower) + std::lgamma(1.0 - index) -
                          std::lgamma(lower + 1.0 - index);
  const double survival = std::exp(-std::log(lower) - log_beta);
  return tail < survival ? std::ceil(approx) : lower;
}

double geometric_variate(double theta, CounterRng& rng) {
  if (theta == 0.0) return 1.0;
  return 1.0 + std::floor(std::log(rng.uniform()) / std::log(theta));
}

double clamp_unit(double u) { return std::clamp(u, kLowest, kHighest); }

// U_2 | U_1 = u for bivariate Frank with θ < 0.
double frank_conditional(double theta, double u, double w) {
  const double shift = w * std::expm1(-theta) /
                       (w + (1.0 - w) * std::exp(-theta * u));
  return -std::log1p(shift) / theta;
}

// U_2 | U_1 = u for AMH: solve the quadratic ∂C/∂u = w in b = 1 − v.
double amh_conditional(double theta, double u, double w) {
  const double a = 1.0 - u;
  const double qa = theta * (1.0 - w * theta * a * a);
  const double qb = 2.0 * w * theta * a - (1.0 + theta);
  const double qc = 1.0 - w;
  const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
  const double b = 2.0 * qc / (-qb + std::sqrt(disc));
  return 1.0 - b;
}

}  // namespace

std::vector<double> Sample::column(int j) const {
  std::vector<double> out(rows);
  for (std::size_t k = 0; k < rows; ++k) out[k] = at(k, j);
  return out;
}

double sample_frailty(Family family, double theta, CounterRng& rng) {
  const CopulaSpec spec(family, theta, 2);
  switch (family) {
    case Family::Clayton:
      return gamma_variate(1.0 / theta, rng);
    case Family::Frank:
      if (theta < 0.0) {
        throw DomainError("frank: no frailty representation for theta < 0");
      }
      return log_series_variate(theta, rng);
    case Family::GumbelHougaard:
      if (theta == 1.0) return 1.0;
      return positive_stable_variate(1.0 / theta, rng);
    case Family::Joe:
      if (theta == 1.0) return 1.0;
      return sibuya_variate(1.0 / theta, rng);
    case Family::AliMikhailHaq:
      if (theta < 0.0) {
        throw DomainError("amh: no frailty representation for theta < 0");
      }
      return geometric_variate(theta, rng);
  }
  return 1.0;
}

void draw_row(const CopulaSpec& spec, Seed seed, std::uint32_t row,
              std::span<double> out) {
  if (static_cast<int>(out.size()) != spec.dim()) {
    throw DimensionError("draw_row: output span does not match dimension");
  }
  CounterRng rng(seed, row);
  const double theta = spec.theta();
  const bool conditional =
      theta < 0.0 && (spec.family() == Family::Frank ||
                      spec.family() == Family::AliMikhailHaq);
  if (conditional) {
    const double u = rng.uniform();
    const double w = rng.uniform();
    out[0] = u;
    out[1] = clamp_unit(spec.family() == Family::Frank
                            ? frank_conditional(theta, u, w)
                            : amh_conditional(theta, u, w));
    return;
  }

  const double frailty = sample_frailty(spec.family(), theta, rng);
  // The Gamma(1/θ) Laplace transform is (1 + s)^{-1/θ} = φ^{-1}(s/θ).
  const double scale =
      spec.family() == Family::Clayton ? 1.0 / (theta * frailty) : 1.0 / frailty;
  for (double& u : out) {
    u = clamp_unit(phi_inverse(spec, unit_exponential(rng) * scale));
  }
}

Sample sample_copula(const CopulaSpec& spec, std::size_t n, Seed seed,
                     int jobs) {
  if (n == 0) throw ArgumentError("sample_copula: n must be at least 1");
  if (n > kMaxSampleRows) {
    throw ArgumentError("sample_copula: n exceeds 2^32 rows");
  }
  Sample sample{n, spec.dim(),
                std::vector<double>(n * static_cast<std::size_t>(spec.dim())),
                seed, spec};
  const std::size_t d = static_cast<std::size_t>(spec.dim());
  parallel_for(n, jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      draw_row(spec, seed, static_cast<std::uint32_t>(k),
               std::span<double>(sample.data.data() + k * d, d));
    }
  });
  return sample;
}

namespace {

// Merge sort on y counting exchanges (discordant pairs when x is sorted).
std::uint64_t count_swaps(std::vector<double>& y, std::vector<double>& buf,
                          std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t swaps = count_swaps(y, buf, lo, mid) + count_swaps(y, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (y[j] < y[i]) {
      swaps += mid - i;
      buf[k++] = y[j++];
    } else {
      buf[k++] = y[i++];
    }
  }
  while (i < mid) buf[k++] = y[i++];
  while (j < hi) buf[k++] = y[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, y.begin() + lo);
  return swaps;
}

template <typename It, typename Eq>
std::uint64_t tied_pairs(It first, It last, Eq eq) {
  std::uint64_t total = 0;
  while (first != last) {
    It run = first;
    std::uint64_t len = 0;
    while (run != last && eq(*run, *first)) {
      ++run;
      ++len;
    }
    total += len * (len - 1) / 2;
    first = run;
  }
  return total;
}

}  // namespace

double empirical_kendall_tau(std::span<const double> x,
                             std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ArgumentError("empirical_kendall_tau: columns differ in length");
  }
  const std::size_t n = x.size();
  if (n < 2) throw DiagnosticError("empirical_kendall_tau: need n >= 2");

  std::vector<std::pair<double, double>> pts(n);
  for (std::size_t k = 0; k < n; ++k) pts[k] = {x[k], y[k]};
  std::sort(pts.begin(), pts.end());

  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t x_ties = tied_pairs(
      pts.begin(), pts.end(), [](auto& a, auto& b) { return a.first == b.first; });
  const std::uint64_t joint_ties =
      tied_pairs(pts.begin(), pts.end(), [](auto& a, auto& b) { return a == b; });

  std::vector<double> ys(n);
  for (std::size_t k = 0; k < n; ++k) ys[k] = pts[k].second;
  std::vector<double> buf(n);
  const std::uint64_t swaps = count_swaps(ys, buf, 0, n);
  const std::uint64_t y_ties = tied_pairs(
      ys.begin(), ys.end(), [](double a, double b) { return a == b; });

  if (x_ties == total || y_ties == total) {
    throw DiagnosticError("empirical_kendall_tau: a column is constant");
  }
  const double numerator = static_cast<double>(total) -
                           static_cast<double>(x_ties) -
                           static_cast<double>(y_ties) +
                           static_cast<double>(joint_ties) -
                           2.0 * static_cast<double>(swaps);
  return numerator / std::sqrt(static_cast<double>(total - x_ties) *
                               static_cast<double>(total - y_ties));
}

double empirical_kendall_tau(const Sample& sample, std::pair<int, int> pair) {
  const auto [i, j] = pair;
  if (i < 0 || j < 0 || i >= sample.dim || j >= sample.dim) {
    throw ArgumentError("empirical_kendall_tau: column index out of range");
  }
  const std::vector<double> x = sample.column(i);
  const std::vector<double> y = sample.column(j);
  return empirical_kendall_tau(x, y);
}

void write_sample_csv(std::ostream& out, const Sample& sample) {
  out << "# family=" << family_name(sample.spec.family())
      << "\n# theta=" << std::setprecision(17) << sample.spec.theta()
      << "\n# d=" << sample.dim << "\n# n=" << sample.rows
      << "\n# seed=" << sample.seed.value
      << "\n# stream=" << sample.seed.stream_id << "\n";
  for (int j = 0; j < sample.dim; ++j) out << (j ? ",u" : "u") << j + 1;
  out << "\n";
  for (std::size_t k = 0; k < sample.rows; ++k) {
    for (int j = 0; j < sample.dim; ++j) {
      if (j) out << ',';
      out << sample.at(k, j);
    }
    out << '\n';
  }
}

}  // namespace archvar
