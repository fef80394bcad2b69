#include "archvar/mc.hpp"

#include <cmath>
#include <sstream>

#include "archvar/errors.hpp"
#include "archvar/parallel.hpp"
#include "archvar/var.hpp"

namespace archvar {

namespace {

void check_estimator_args(const CopulaSpec& spec, double alpha, double h,
                          const Margins& margins) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("level-set estimator: alpha must lie in (0, 1)");
  }
  if (!(h > 0.0)) throw DomainError("level-set estimator: h must be positive");
  if (static_cast<int>(margins.size()) != spec.dim()) {
    throw DimensionError("level-set estimator: expected " +
                         std::to_string(spec.dim()) + " margins");
  }
}

class LevelSetAccumulator {
 public:
  LevelSetAccumulator(const CopulaSpec& spec, double alpha, double h,
                      const Margins& margins)
      : spec_(spec), alpha_(alpha), h_(h), margins_(margins),
        sums_(margins.size(), 0.0) {}

  void add(std::span<const double> u) {
    if (std::fabs(copula_cdf(spec_, u) - alpha_) > h_) return;
    for (std::size_t i = 0; i < sums_.size(); ++i) sums_[i] += margins_[i](u[i]);
    ++selected_;
  }

  LevelSetEstimate finish(std::size_t n) const {
    if (selected_ == 0) {
      std::ostringstream msg;
      msg << "empty level-set neighbourhood: no row of " << n
          << " satisfies |C(U) - " << alpha_ << "| <= " << h_
          << "; increase h or n";
      throw EmptyLevelSetError(msg.str());
    }
    LevelSetEstimate out{sums_, selected_};
    for (double& c : out.components) c /= static_cast<double>(selected_);
    return out;
  }

 private:
  const CopulaSpec& spec_;
  double alpha_;
  double h_;
  const Margins& margins_;
  std::vector<double> sums_;
  std::size_t selected_ = 0;
};

}  // namespace

LevelSetEstimate estimate_var_once(const Sample& sample, const CopulaSpec& spec,
                                   double alpha, double h,
                                   const Margins& margins) {
  check_estimator_args(spec, alpha, h, margins);
  if (sample.dim != spec.dim()) {
    throw DimensionError("estimate_var_once: sample and copula dimensions differ");
  }
  LevelSetAccumulator acc(spec, alpha, h, margins);
  for (std::size_t k = 0; k < sample.rows; ++k) acc.add(sample.row(k));
  return acc.finish(sample.rows);
}

LevelSetEstimate estimate_var_streaming(const CopulaSpec& spec, std::size_t n,
                                        Seed seed, double alpha, double h,
                                        const Margins& margins) {
  check_estimator_args(spec, alpha, h, margins);
  if (n == 0) throw ArgumentError("estimate_var_streaming: n must be at least 1");
  if (n > kMaxSampleRows) {
    throw ArgumentError("estimate_var_streaming: n exceeds 2^32 rows");
  }
  LevelSetAccumulator acc(spec, alpha, h, margins);
  std::vector<double> row(static_cast<std::size_t>(spec.dim()));
  for (std::size_t k = 0; k < n; ++k) {
    draw_row(spec, seed, static_cast<std::uint32_t>(k), row);
    acc.add(row);
  }
  return acc.finish(n);
}

void McConfig::validate() const {
  if (n < 1) throw ArgumentError("mc: n must be at least 1");
  if (replications < 1) throw ArgumentError("mc: M must be at least 1");
  if (!(h > 0.0)) throw DomainError("mc: h must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("mc: alpha must lie in (0, 1)");
  if (!margins.empty() && static_cast<int>(margins.size()) != spec.dim()) {
    throw DimensionError("mc: margin count does not match dimension");
  }
  quad.validate();
}

McStats aggregate_replications(
    const std::vector<std::optional<LevelSetEstimate>>& estimates,
    const std::vector<double>& theoretical) {
  const std::size_t d = theoretical.size();
  McStats stats;
  stats.replications = static_cast<int>(estimates.size());
  stats.theoretical = theoretical;
  stats.mean.assign(d, 0.0);
  stats.std_dev.assign(d, 0.0);
  stats.std_error.assign(d, 0.0);
  stats.bias.assign(d, 0.0);
  stats.rmse.assign(d, 0.0);

  std::size_t ok = 0;
  double selected = 0.0;
  for (const auto& e : estimates) {
    if (!e) {
      ++stats.failed_replications;
      continue;
    }
    ++ok;
    selected += static_cast<double>(e->selected);
    for (std::size_t i = 0; i < d; ++i) stats.mean[i] += e->components[i];
  }
  if (!estimates.empty()) {
    stats.mean_selected_count = selected / static_cast<double>(estimates.size());
  }
  if (ok == 0) {
    throw StudyError("mc: every replication had an empty level-set "
                     "neighbourhood; increase h or n");
  }
  for (double& m : stats.mean) m /= static_cast<double>(ok);

  if (ok > 1) {
    for (const auto& e : estimates) {
      if (!e) continue;
      for (std::size_t i = 0; i < d; ++i) {
        const double dev = e->components[i] - stats.mean[i];
        stats.std_dev[i] += dev * dev;
      }
    }
    for (double& s : stats.std_dev) s = std::sqrt(s / static_cast<double>(ok - 1));
  }
  for (std::size_t i = 0; i < d; ++i) {
    stats.std_error[i] = stats.std_dev[i] / std::sqrt(static_cast<double>(ok));
    stats.bias[i] = std::fabs(stats.mean[i] - theoretical[i]);
    stats.rmse[i] = std::sqrt(stats.bias[i] * stats.bias[i] +
                              stats.std_dev[i] * stats.std_dev[i]);
  }
  return stats;
}

McStats run_study(const McConfig& cfg, int jobs) {
  cfg.validate();
  const Margins margins =
      cfg.margins.empty() ? uniform_margins(cfg.spec.dim()) : cfg.margins;
  const VarResult theory = var_closed_form(cfg.spec, margins, cfg.alpha, cfg.quad);

  const auto m = static_cast<std::size_t>(cfg.replications);
  std::vector<std::optional<LevelSetEstimate>> estimates(m);
  parallel_for(m, jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const Seed seed{cfg.seed.value, cfg.seed.stream_id + r};
      try {
        estimates[r] = estimate_var_streaming(cfg.spec, cfg.n, seed, cfg.alpha,
                                              cfg.h, margins);
      } catch (const EmptyLevelSetError&) {
        estimates[r].reset();
      }
    }
  });
  return aggregate_replications(estimates, theory.components);
}

}  // namespace archvar
