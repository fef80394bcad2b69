#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "archvar/mc.hpp"
#include "archvar/var.hpp"

namespace archvar {

/// Reports are comma-delimited tables preceded by `# key=value` metadata
/// lines. Numbers use six fixed decimals unless full_precision is set, in
/// which case they carry 17 significant digits and parse back exactly.
struct ReportOptions {
  bool full_precision = false;
  bool timestamp = true;
};

std::string format_number(double x, const ReportOptions& opts);

void write_var_report(std::ostream& out, const VarResult& result,
                      const std::vector<std::string>& margin_names,
                      const ReportOptions& opts);

/// One block of rows per sample size; `cfg.n` is ignored in favour of the
/// sizes paired with each McStats.
void write_mc_report(std::ostream& out, const McConfig& cfg,
                     const std::vector<std::pair<std::size_t, McStats>>& runs,
                     const ReportOptions& opts);

struct Table1Row {
  std::size_t n;
  CopulaSpec spec;
  McStats stats;
};

struct Table1Meta {
  Seed seed;
  int replications;
  double h;
  double alpha;
};

/// Kendall tau of Joe at θ = 2.4 and the θ that gives τ = 0.5, as
/// `# joe_...` lines. The two differ, so the θ = 2.4 row is not a τ = 0.5
/// configuration; the lines say so.
std::vector<std::string> joe_discrepancy_note();

/// One row per (copula, n) with the statistics of the first component.
/// Under an exchangeable copula with identical margins every component
/// has the same law, so the first stands for all of them.
void write_table1_report(std::ostream& out, const std::vector<Table1Row>& rows,
                         const Table1Meta& meta, const ReportOptions& opts);

}  // namespace archvar
