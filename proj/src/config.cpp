#include "archvar/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "archvar/calibration.hpp"
#include "archvar/errors.hpp"

namespace archvar {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& text, const std::string& field) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(field + ": expected a number, got '" + text + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& text, const std::string& field) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(field + ": expected a non-negative integer, got '" +
                      text + "'");
  }
  return value;
}

// Accepts integers written as 50000 or 5e4.
std::size_t parse_count(const std::string& text, const std::string& field) {
  const double value = parse_double(text, field);
  if (value < 0.0 || value != std::floor(value) || value > 1e18) {
    throw ConfigError(field + ": expected a non-negative integer, got '" +
                      text + "'");
  }
  return static_cast<std::size_t>(value);
}

Family parse_family_field(const std::string& text, const std::string& field) {
  try {
    return parse_family(text);
  } catch (const ArgumentError& e) {
    throw ConfigError(field + ": " + e.what());
  }
}

using Handler = void (*)(RunConfig&, const std::string&, const std::string&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"copula.family",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.family = parse_family_field(v, f);
       }},
      {"copula.theta",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.theta = parse_double(v, f);
       }},
      {"copula.target_tau",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.target_tau = parse_double(v, f);
       }},
      {"copula.d",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.dim = static_cast<int>(parse_count(v, f));
       }},
      {"var.alpha",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.alpha = parse_double(v, f);
       }},
      {"var.margins",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.margins = split(v, ',');
         if (c.margins.empty()) throw ConfigError(f + ": empty margin list");
       }},
      {"var.abs_tol",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.quad.abs_tol = parse_double(v, f);
       }},
      {"var.rel_tol",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.quad.rel_tol = parse_double(v, f);
       }},
      {"var.max_subdivisions",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.quad.max_subdivisions = static_cast<int>(parse_count(v, f));
       }},
      {"mc.n",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.mc_n = parse_size_list(v, f);
       }},
      {"mc.M",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.replications = static_cast<int>(parse_count(v, f));
       }},
      {"mc.h",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.h = parse_double(v, f);
       }},
      {"mc.seed",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.seed.value = parse_u64(v, f);
       }},
      {"mc.stream",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.seed.stream_id = parse_u64(v, f);
       }},
      {"sample.n",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.sample_n = parse_count(v, f);
       }},
      {"table1.families",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.table1_families.clear();
         for (const auto& item : split(v, ',')) {
           const auto colon = item.find(':');
           if (colon == std::string::npos) {
             throw ConfigError(f + ": entry '" + item +
                               "' is not of the form family:theta");
           }
           c.table1_families.emplace_back(
               parse_family_field(trim(item.substr(0, colon)), f),
               parse_double(trim(item.substr(colon + 1)), f));
         }
         if (c.table1_families.empty()) throw ConfigError(f + ": empty list");
       }},
      {"table1.n",
       [](RunConfig& c, const std::string& v, const std::string& f) {
         c.table1_n = parse_size_list(v, f);
       }},
      {"output.path",
       [](RunConfig& c, const std::string& v, const std::string&) {
         c.output = c.base_dir / v;
       }},
  };
  return table;
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& name) {
  const std::filesystem::path p(name);
  return p.is_absolute() ? p : base / p;
}

}  // namespace

std::vector<std::size_t> parse_size_list(const std::string& text,
                                         const std::string& field) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_count(item, field));
  if (out.empty()) throw ConfigError(field + ": empty list");
  return out;
}

RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  cfg.base_dir = base_dir;
  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    const std::string where = "config line " + std::to_string(line_no);
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError(where + ": unterminated section");
      section = trim(std::string_view(text).substr(1, text.size() - 2));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected key = value");
    }
    if (section.empty()) {
      throw ConfigError(where + ": key outside of a [section]");
    }
    const std::string key = section + "." + trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    const auto it = handlers().find(key);
    if (it == handlers().end()) {
      throw ConfigError(where + ": unknown key [" + section + "] " +
                        trim(text.substr(0, eq)));
    }
    const std::string field =
        "[" + section + "] " + trim(text.substr(0, eq));
    it->second(cfg, value, field);
  }
  if (cfg.theta && cfg.target_tau) {
    throw ConfigError("[copula]: give exactly one of theta and target_tau");
  }
  for (const auto& m : cfg.margins) {
    if (m == "uniform") continue;
    if (m.rfind("tabulated:", 0) != 0) {
      throw ConfigError("[var] margins: unknown margin '" + m +
                        "' (expected uniform or tabulated:<file>)");
    }
    const auto path = resolve(cfg.base_dir, m.substr(10));
    if (!std::filesystem::exists(path)) {
      throw ConfigError("[var] margins: file not found: " + path.string());
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in, path.parent_path().empty() ? "." : path.parent_path());
}

CopulaSpec RunConfig::spec() const {
  if (!family) throw ConfigError("[copula] family: missing");
  if (theta.has_value() == target_tau.has_value()) {
    throw ConfigError("[copula]: give exactly one of theta and target_tau");
  }
  const double value = theta ? *theta : theta_from_tau(*family, *target_tau);
  return CopulaSpec(*family, value, dim);
}

Margins RunConfig::build_margins(int d) const {
  if (margins.size() != 1 && static_cast<int>(margins.size()) != d) {
    throw ConfigError("[var] margins: expected 1 or " + std::to_string(d) +
                      " entries, got " + std::to_string(margins.size()));
  }
  std::map<std::string, QuantileFn> loaded;
  Margins out;
  for (int i = 0; i < d; ++i) {
    const std::string& name = margins.size() == 1 ? margins[0] : margins[i];
    auto it = loaded.find(name);
    if (it == loaded.end()) {
      QuantileFn fn = name == "uniform"
                          ? QuantileFn::uniform()
                          : load_tabulated_margin(resolve(base_dir, name.substr(10)));
      it = loaded.emplace(name, fn).first;
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::string> RunConfig::margin_names(int d) const {
  std::vector<std::string> out;
  for (int i = 0; i < d; ++i) {
    out.push_back(margins.size() == 1 ? margins[0] : margins.at(i));
  }
  return out;
}

QuantileFn load_tabulated_margin(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open margin file " + path.string());
  std::vector<double> u, q;
  std::string line;
  int line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream fields(text);
    double a = 0.0, b = 0.0;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw ConfigError(path.string() + " line " + std::to_string(line_no) +
                        ": expected two numbers");
    }
    header_allowed = false;
    u.push_back(a);
    q.push_back(b);
  }
  try {
    return QuantileFn::tabulated(std::move(u), std::move(q));
  } catch (const ArgumentError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace archvar
