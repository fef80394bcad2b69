#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "archvar/copula.hpp"
#include "archvar/rng.hpp"

namespace archvar {

/// n × d pseudo-observations from a copula, row-major.
struct Sample {
  std::size_t rows = 0;
  int dim = 0;
  std::vector<double> data;
  Seed seed;
  CopulaSpec spec;

  std::span<const double> row(std::size_t k) const {
    return {data.data() + k * dim, static_cast<std::size_t>(dim)};
  }
  double at(std::size_t k, int j) const { return data[k * dim + j]; }
  std::vector<double> column(int j) const;
};

/// Largest number of rows a single sample may hold (one substream per row).
inline constexpr std::size_t kMaxSampleRows = std::size_t{1} << 32;

/// Frailty variable V of the Marshall-Olkin construction:
///   Clayton   Gamma(1/θ, 1)
///   Frank     logarithmic series with p = 1 − e^{−θ} (θ > 0)
///   Gumbel    positive stable, index 1/θ, Laplace transform exp(−s^{1/θ})
///   Joe       Sibuya(1/θ)
///   AMH       geometric on {1, 2, ...}, success probability 1 − θ (θ ∈ [0, 1))
double sample_frailty(Family family, double theta, CounterRng& rng);

/// Writes row `row` of the sample for (spec, seed) into `out`.
///
/// Rows are drawn with U_i = φ^{-1}(E_i / V), E_i unit exponentials, except
/// for the bivariate negative-dependence cases (Frank θ < 0, AMH θ < 0),
/// which invert the conditional distribution of U_2 given U_1. Values are
/// clamped into [2^-1022, 1 − 2^-53] so every entry is strictly inside (0, 1).
void draw_row(const CopulaSpec& spec, Seed seed, std::uint32_t row,
              std::span<double> out);

/// n i.i.d. rows from the copula with uniform margins. Row k depends only on
/// (spec, seed, k), so the result is the same for any `jobs`.
Sample sample_copula(const CopulaSpec& spec, std::size_t n, Seed seed,
                     int jobs = 1);

/// Kendall's tau-b between two columns in O(n log n) (Knight's algorithm).
/// Throws DiagnosticError when either column is constant or n < 2.
double empirical_kendall_tau(std::span<const double> x,
                             std::span<const double> y);

double empirical_kendall_tau(const Sample& sample, std::pair<int, int> pair);

/// Headered comma-delimited text, one row per observation, 17 significant
/// digits so values round-trip exactly.
void write_sample_csv(std::ostream& out, const Sample& sample);

}  // namespace archvar
