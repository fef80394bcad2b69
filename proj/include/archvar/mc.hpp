#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "archvar/copula.hpp"
#include "archvar/quadrature.hpp"
#include "archvar/quantile.hpp"
#include "archvar/rng.hpp"
#include "archvar/sampler.hpp"

namespace archvar {

/// One evaluation of the level-set estimator.
struct LevelSetEstimate {
  std::vector<double> components;
  std::size_t selected = 0;
};

/// Mean of X^{(k)} = (q_1(U_1^{(k)}), ..., q_d(U_d^{(k)})) over the rows
/// with |C(U^{(k)}) − α| ≤ h, C being the true parametric copula.
/// Throws EmptyLevelSetError when no row qualifies.
LevelSetEstimate estimate_var_once(const Sample& sample, const CopulaSpec& spec,
                                   double alpha, double h,
                                   const Margins& margins);

/// Same estimator over the rows draw_row(spec, seed, 0..n−1) without
/// materialising the sample; bitwise equal to
/// estimate_var_once(sample_copula(spec, n, seed), ...).
LevelSetEstimate estimate_var_streaming(const CopulaSpec& spec, std::size_t n,
                                        Seed seed, double alpha, double h,
                                        const Margins& margins);

struct McConfig {
  CopulaSpec spec;
  std::size_t n = 50000;
  int replications = 1000;
  double h = 1e-4;
  double alpha = 0.05;
  Seed seed{};
  Margins margins;  // empty means uniform
  QuadConfig quad{};

  void validate() const;
};

struct McStats {
  std::vector<double> mean;
  std::vector<double> std_dev;
  std::vector<double> std_error;  // std_dev / sqrt(successful replications)
  std::vector<double> bias;
  std::vector<double> rmse;
  std::vector<double> theoretical;
  double mean_selected_count = 0.0;
  int failed_replications = 0;
  int replications = 0;
};

/// Reduces per-replication estimates (nullopt = empty level set) in index
/// order. SD uses the M−1 denominator over successful replications and is 0
/// when only one succeeded; bias is |mean − theoretical| and
/// RMSE = sqrt(bias² + SD²).
McStats aggregate_replications(
    const std::vector<std::optional<LevelSetEstimate>>& estimates,
    const std::vector<double>& theoretical);

/// Runs cfg.replications independent replications; replication r draws its
/// sample from stream cfg.seed.stream_id + r, so results do not depend on
/// `jobs`. The theoretical column comes from var_closed_form.
/// Throws StudyError when every replication has an empty level set.
McStats run_study(const McConfig& cfg, int jobs = 1);

}  // namespace archvar
