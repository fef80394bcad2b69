#include "archvar/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "archvar/calibration.hpp"
#include "archvar/config.hpp"
#include "archvar/errors.hpp"
#include "archvar/mc.hpp"
#include "archvar/report.hpp"
#include "archvar/sampler.hpp"
#include "archvar/var.hpp"

namespace archvar {

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> stream;
  int jobs = 1;
  std::string out;
  bool no_timestamp = false;
  bool full_precision = false;

  std::string family;
  std::optional<double> theta;
  std::optional<double> tau;
  std::optional<int> dim;
  std::optional<double> alpha;
  std::string margins;
  std::string n;
  std::optional<int> replications;
  std::optional<double> h;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "Run configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Random seed (unsigned 64-bit)");
  cmd->add_option("--stream", o.stream, "First stream id");
  cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output file");
  cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit the generated= line");
  cmd->add_flag("--full-precision", o.full_precision,
                "Print 17 significant digits");
}

void add_copula(CLI::App* cmd, Options& o) {
  cmd->add_option("--family", o.family, "clayton, frank, gumbel, joe or amh");
  auto* theta = cmd->add_option("--theta", o.theta, "Copula parameter");
  auto* tau = cmd->add_option("--tau", o.tau, "Target Kendall tau");
  theta->excludes(tau);
  cmd->add_option("--dim", o.dim, "Dimension d");
}

std::string text(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

RunConfig build_config(const Options& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (!o.family.empty()) {
    try {
      cfg.family = parse_family(o.family);
    } catch (const ArgumentError& e) {
      throw ConfigError(std::string("--family: ") + e.what());
    }
  }
  if (o.theta) {
    cfg.theta = o.theta;
    cfg.target_tau.reset();
  }
  if (o.tau) {
    cfg.target_tau = o.tau;
    cfg.theta.reset();
  }
  if (o.dim) cfg.dim = *o.dim;
  if (o.alpha) cfg.alpha = *o.alpha;
  if (!o.margins.empty()) {
    std::vector<std::string> names;
    std::stringstream in(o.margins);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.rfind("tabulated:", 0) == 0) {
        const auto path = std::filesystem::absolute(item.substr(10));
        if (!std::filesystem::exists(path)) {
          throw ConfigError("--margins: file not found: " + path.string());
        }
        item = "tabulated:" + path.string();
      } else if (item != "uniform") {
        throw ConfigError("--margins: unknown margin '" + item + "'");
      }
      names.push_back(item);
    }
    cfg.margins = names;
  }
  if (!o.n.empty()) {
    cfg.mc_n = parse_size_list(o.n, "--n");
    cfg.table1_n = cfg.mc_n;
    cfg.sample_n = cfg.mc_n.front();
  }
  if (o.replications) cfg.replications = *o.replications;
  if (o.h) cfg.h = *o.h;
  if (o.seed) cfg.seed.value = *o.seed;
  if (o.stream) cfg.seed.stream_id = *o.stream;
  if (!o.out.empty()) cfg.output = o.out;
  return cfg;
}

// Writes through `emit` to the configured file, or to `out` when none.
template <typename Emit>
bool emit_report(const RunConfig& cfg, std::ostream& out, Emit emit) {
  if (!cfg.output) {
    emit(out);
    return false;
  }
  std::ofstream file(*cfg.output);
  if (!file) throw ConfigError("cannot open output file " + cfg.output->string());
  emit(file);
  file.flush();
  if (!file) throw ConfigError("failed writing " + cfg.output->string());
  return true;
}

int cmd_var(const Options& o, std::ostream& out) {
  const RunConfig cfg = build_config(o);
  const CopulaSpec spec = cfg.spec();
  const Margins margins = cfg.build_margins(spec.dim());
  const VarResult r = var_closed_form(spec, margins, cfg.alpha, cfg.quad);
  const ReportOptions ropts{o.full_precision, !o.no_timestamp};
  if (emit_report(cfg, out, [&](std::ostream& s) {
        write_var_report(s, r, cfg.margin_names(spec.dim()), ropts);
      })) {
    out << "var " << to_string(spec) << " alpha=" << text(cfg.alpha) << ":";
    for (double c : r.components) out << ' ' << format_number(c, ropts);
    out << " -> " << cfg.output->string() << "\n";
  }
  return kExitOk;
}

int cmd_calibrate(const Options& o, std::ostream& out) {
  if (o.family.empty()) throw ConfigError("--family: missing");
  Family family;
  try {
    family = parse_family(o.family);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("--family: ") + e.what());
  }
  if (o.tau.has_value() == o.theta.has_value()) {
    throw ConfigError("calibrate: give exactly one of --tau and --theta");
  }
  const double tau = o.tau ? *o.tau : kendall_tau(family, *o.theta);
  const double theta = o.theta ? *o.theta : theta_from_tau(family, *o.tau);
  out << family_name(family) << ',' << text(tau) << ',' << text(theta) << "\n";
  return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out, int jobs) {
  const RunConfig cfg = build_config(o);
  const CopulaSpec spec = cfg.spec();
  const Sample s = sample_copula(spec, cfg.sample_n, cfg.seed, jobs);
  if (emit_report(cfg, out, [&](std::ostream& f) { write_sample_csv(f, s); })) {
    out << "sample " << to_string(spec) << " n=" << cfg.sample_n << " seed="
        << cfg.seed.value << " -> " << cfg.output->string() << "\n";
  }
  return kExitOk;
}

McConfig study_config(const RunConfig& cfg, const CopulaSpec& spec,
                      std::size_t n) {
  return McConfig{spec,      n,        cfg.replications,
                  cfg.h,     cfg.alpha, cfg.seed,
                  cfg.build_margins(spec.dim()), cfg.quad};
}

int cmd_mc(const Options& o, std::ostream& out, int jobs) {
  const RunConfig cfg = build_config(o);
  const CopulaSpec spec = cfg.spec();
  std::vector<std::pair<std::size_t, McStats>> runs;
  McConfig mc = study_config(cfg, spec, cfg.mc_n.front());
  for (std::size_t n : cfg.mc_n) {
    mc.n = n;
    runs.emplace_back(n, run_study(mc, jobs));
  }
  const ReportOptions ropts{o.full_precision, !o.no_timestamp};
  if (emit_report(cfg, out, [&](std::ostream& f) {
        write_mc_report(f, mc, runs, ropts);
      })) {
    out << "mc " << to_string(spec) << " M=" << cfg.replications << " rmse:";
    for (const auto& [n, stats] : runs) {
      out << " n=" << n << ' ' << format_number(stats.rmse[0], ropts);
    }
    out << " -> " << cfg.output->string() << "\n";
  }
  return kExitOk;
}

int cmd_table1(const Options& o, std::ostream& out, int jobs) {
  const RunConfig cfg = build_config(o);
  std::vector<Table1Row> rows;
  for (const auto& [family, theta] : cfg.table1_families) {
    const CopulaSpec spec(family, theta, cfg.dim);
    McConfig mc = study_config(cfg, spec, cfg.table1_n.front());
    for (std::size_t n : cfg.table1_n) {
      mc.n = n;
      rows.push_back({n, spec, run_study(mc, jobs)});
    }
  }
  const ReportOptions ropts{o.full_precision, !o.no_timestamp};
  const Table1Meta meta{cfg.seed, cfg.replications, cfg.h, cfg.alpha};
  if (emit_report(cfg, out, [&](std::ostream& f) {
        write_table1_report(f, rows, meta, ropts);
      })) {
    out << "table1 " << rows.size() << " rows M=" << cfg.replications << " -> "
        << cfg.output->string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Multivariate VaR under Archimedean copulas", "archvar"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;

  auto* var = app.add_subcommand("var", "Analytical marginal VaR by quadrature");
  add_common(var, o);
  add_copula(var, o);
  var->add_option("--alpha", o.alpha, "Confidence level in (0, 1)");
  var->add_option("--margins", o.margins,
                  "Comma list of uniform | tabulated:<file>");

  auto* cal = app.add_subcommand("calibrate", "Convert Kendall tau to theta");
  cal->add_option("--family", o.family, "Copula family")->required();
  auto* cal_tau = cal->add_option("--tau", o.tau, "Kendall tau to match");
  cal->add_option("--theta", o.theta, "Report tau for this theta instead")
      ->excludes(cal_tau);

  auto* sample = app.add_subcommand("sample", "Draw pseudo-observations");
  add_common(sample, o);
  add_copula(sample, o);
  sample->add_option("--n", o.n, "Number of rows");

  auto* mc = app.add_subcommand("mc", "Monte Carlo study of the estimator");
  add_common(mc, o);
  add_copula(mc, o);
  mc->add_option("--alpha", o.alpha, "Confidence level in (0, 1)");
  mc->add_option("--margins", o.margins,
                 "Comma list of uniform | tabulated:<file>");
  mc->add_option("--n", o.n, "Comma list of sample sizes");
  mc->add_option("--M", o.replications, "Replications");
  mc->add_option("--h", o.h, "Level-set half-width");

  auto* table1 = app.add_subcommand("table1", "Convergence table over families");
  add_common(table1, o);
  table1->add_option("--dim", o.dim, "Dimension d");
  table1->add_option("--alpha", o.alpha, "Confidence level in (0, 1)");
  table1->add_option("--n", o.n, "Comma list of sample sizes");
  table1->add_option("--M", o.replications, "Replications");
  table1->add_option("--h", o.h, "Level-set half-width");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "archvar: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (var->parsed()) return cmd_var(o, out);
    if (cal->parsed()) return cmd_calibrate(o, out);
    if (sample->parsed()) return cmd_sample(o, out, o.jobs);
    if (mc->parsed()) return cmd_mc(o, out, o.jobs);
    if (table1->parsed()) return cmd_table1(o, out, o.jobs);
  } catch (const NumericalError& e) {
    err << "archvar: numerical error: " << e.what()
        << " (partial estimate " << text(e.partial_estimate()) << ", error "
        << text(e.error_estimate()) << ")\n";
    return kExitNumerical;
  } catch (const EmptyLevelSetError& e) {
    err << "archvar: " << e.what() << "\n";
    return kExitStatistical;
  } catch (const StudyError& e) {
    err << "archvar: " << e.what() << "\n";
    return kExitStatistical;
  } catch (const DiagnosticError& e) {
    err << "archvar: " << e.what() << "\n";
    return kExitStatistical;
  } catch (const Error& e) {
    err << "archvar: error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "archvar: unexpected failure: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace archvar
