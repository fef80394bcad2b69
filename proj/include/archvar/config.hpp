#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "archvar/copula.hpp"
#include "archvar/quadrature.hpp"
#include "archvar/quantile.hpp"
#include "archvar/rng.hpp"

namespace archvar {

/// Parsed run configuration. The file format is flat INI-style text:
///
///   [copula]  family, theta | target_tau (exactly one), d
///   [var]     alpha, margins, abs_tol, rel_tol, max_subdivisions
///   [mc]      n (comma list), M, h, seed, stream
///   [sample]  n
///   [table1]  families (e.g. "clayton:2, frank:5.74")
///   [output]  path
///
/// `margins` is a comma list of length 1 or d whose entries are `uniform`
/// or `tabulated:<file>`; relative paths resolve against the directory of
/// the configuration file. Blank lines and lines starting with `#` or `;`
/// are ignored.
struct RunConfig {
  std::optional<Family> family;
  std::optional<double> theta;
  std::optional<double> target_tau;
  int dim = 3;

  double alpha = 0.05;
  std::vector<std::string> margins{"uniform"};
  QuadConfig quad;

  std::vector<std::size_t> mc_n{50000};
  int replications = 100;
  double h = 1e-4;
  Seed seed{1, 0};

  std::size_t sample_n = 1000;

  std::vector<std::pair<Family, double>> table1_families{
      {Family::Clayton, 2.0},
      {Family::Frank, 5.74},
      {Family::GumbelHougaard, 2.0},
      {Family::Joe, 2.4}};
  std::vector<std::size_t> table1_n{50000, 100000, 500000, 1000000};

  std::optional<std::filesystem::path> output;
  std::filesystem::path base_dir = ".";

  /// Resolves θ (calibrating from target_tau when needed) and validates.
  /// ConfigError when the family or the θ / target_tau choice is missing.
  CopulaSpec spec() const;

  /// Builds d quantile functions, loading each distinct file once.
  Margins build_margins(int dim) const;

  /// Margin names aligned with build_margins(dim).
  std::vector<std::string> margin_names(int dim) const;
};

RunConfig parse_config(std::istream& in,
                       const std::filesystem::path& base_dir = ".");

RunConfig load_config(const std::filesystem::path& path);

/// Reads a two-column (u, quantile) file separated by commas or whitespace.
/// A non-numeric first line is treated as a header.
QuantileFn load_tabulated_margin(const std::filesystem::path& path);

/// "50000, 1e5" → {50000, 100000}; throws ConfigError naming `field`.
std::vector<std::size_t> parse_size_list(const std::string& text,
                                         const std::string& field);

}  // namespace archvar
