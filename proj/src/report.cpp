#include "archvar/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "archvar/calibration.hpp"

namespace archvar {

namespace {

void write_timestamp(std::ostream& out, const ReportOptions& opts) {
  if (!opts.timestamp) return;
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  out << "# generated=" << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ") << "\n";
}

std::string full(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

void write_spec(std::ostream& out, const CopulaSpec& spec) {
  out << "# family=" << family_name(spec.family()) << "\n# theta="
      << full(spec.theta()) << "\n# d=" << spec.dim() << "\n";
}

}  // namespace

std::string format_number(double x, const ReportOptions& opts) {
  if (opts.full_precision) return full(x);
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << x;
  return s.str();
}

void write_var_report(std::ostream& out, const VarResult& result,
                      const std::vector<std::string>& margin_names,
                      const ReportOptions& opts) {
  out << "# report=var\n";
  write_timestamp(out, opts);
  write_spec(out, result.spec);
  out << "# alpha=" << full(result.alpha) << "\n";
  out << "component,margin,var,abs_error\n";
  for (std::size_t i = 0; i < result.components.size(); ++i) {
    out << i + 1 << ','
        << (i < margin_names.size() ? margin_names[i] : std::string("uniform"))
        << ',' << format_number(result.components[i], opts) << ','
        << full(result.abs_error_estimate[i]) << '\n';
  }
}

void write_mc_report(std::ostream& out, const McConfig& cfg,
                     const std::vector<std::pair<std::size_t, McStats>>& runs,
                     const ReportOptions& opts) {
  out << "# report=mc\n";
  write_timestamp(out, opts);
  write_spec(out, cfg.spec);
  out << "# alpha=" << full(cfg.alpha) << "\n# M=" << cfg.replications
      << "\n# h=" << full(cfg.h) << "\n# seed=" << cfg.seed.value
      << "\n# stream=" << cfg.seed.stream_id << "\n";
  out << "n,component,mean,std_dev,std_error,bias,rmse,theoretical,"
         "mean_selected,failed_replications\n";
  for (const auto& [n, stats] : runs) {
    for (std::size_t i = 0; i < stats.mean.size(); ++i) {
      out << n << ',' << i + 1 << ',' << format_number(stats.mean[i], opts)
          << ',' << format_number(stats.std_dev[i], opts) << ','
          << format_number(stats.std_error[i], opts) << ','
          << format_number(stats.bias[i], opts) << ','
          << format_number(stats.rmse[i], opts) << ','
          << format_number(stats.theoretical[i], opts) << ','
          << format_number(stats.mean_selected_count, opts) << ','
          << stats.failed_replications << '\n';
    }
  }
}

std::vector<std::string> joe_discrepancy_note() {
  const double tau_at_table = kendall_tau(Family::Joe, 2.4);
  const double theta_at_half = theta_from_tau(Family::Joe, 0.5);
  std::ostringstream a, b, c;
  a << "# joe_kendall_tau_at_theta_2.4=" << std::fixed << std::setprecision(6)
    << tau_at_table;
  b << "# joe_theta_for_tau_0.5=" << std::fixed << std::setprecision(6)
    << theta_at_half;
  c << "# joe_note=inconsistent: theta=2.4 gives tau=" << std::fixed
    << std::setprecision(4) << tau_at_table << ", not 0.5; tau=0.5 needs theta="
    << theta_at_half;
  return {a.str(), b.str(), c.str()};
}

void write_table1_report(std::ostream& out, const std::vector<Table1Row>& rows,
                         const Table1Meta& meta, const ReportOptions& opts) {
  out << "# report=table1\n";
  write_timestamp(out, opts);
  out << "# d=" << (rows.empty() ? 3 : rows.front().spec.dim())
      << "\n# alpha=" << full(meta.alpha) << "\n# h=" << full(meta.h)
      << "\n# M=" << meta.replications << "\n# seed=" << meta.seed.value
      << "\n# stream=" << meta.seed.stream_id << "\n";
  bool has_joe = false;
  std::vector<CopulaSpec> listed;
  for (const auto& r : rows) {
    if (std::find(listed.begin(), listed.end(), r.spec) != listed.end()) continue;
    listed.push_back(r.spec);
    out << "# theta_" << family_name(r.spec.family()) << '='
        << full(r.spec.theta()) << '\n';
    has_joe = has_joe || r.spec.family() == Family::Joe;
  }
  if (has_joe) {
    for (const auto& line : joe_discrepancy_note()) out << line << '\n';
  }
  out << "n,copula,mean,std_dev,bias,rmse,theoretical,std_error,mean_selected,"
         "failed_replications\n";
  for (const auto& r : rows) {
    out << r.n << ',' << family_name(r.spec.family()) << ','
        << format_number(r.stats.mean[0], opts) << ','
        << format_number(r.stats.std_dev[0], opts) << ','
        << format_number(r.stats.bias[0], opts) << ','
        << format_number(r.stats.rmse[0], opts) << ','
        << format_number(r.stats.theoretical[0], opts) << ','
        << format_number(r.stats.std_error[0], opts) << ','
        << format_number(r.stats.mean_selected_count, opts) << ','
        << r.stats.failed_replications << '\n';
  }
}

}  // namespace archvar
