#include "pertlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "pertlab/error.hpp"
#include "pertlab/exact_series.hpp"
#include "pertlab/ghost_reg.hpp"
#include "pertlab/sc_method.hpp"
#include "pertlab/sweep.hpp"

namespace pertlab::cli {
namespace {

[[noreturn]] void fail_at(std::size_t column, const std::string& what) {
  throw ConfigError("perturbation parse error at column " + std::to_string(column + 1) + ": " +
                    what);
}

class TermScanner {
 public:
  explicit TermScanner(std::string_view text) : text_(text) {}

  std::map<int, mpq_class> scan() {
    std::map<int, mpq_class> terms;
    skip_space();
    if (done()) fail_at(pos_, "empty perturbation");
    bool first = true;
    while (!done()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail_at(pos_, "expected '+' or '-' between terms");
      }
      const std::size_t term_start = pos_;
      mpq_class coefficient = 1;
      bool has_number = false;
      if (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
        coefficient = rational();
        has_number = true;
        skip_space();
        if (!done() && peek() == '*') {
          ++pos_;
          skip_space();
          if (done() || peek() != 'x') fail_at(pos_, "expected 'x' after '*'");
        }
      }
      int power = 0;
      if (!done() && peek() == 'x') {
        ++pos_;
        power = 1;
        skip_space();
        if (!done() && peek() == '^') {
          ++pos_;
          skip_space();
          power = integer("exponent");
        }
      } else if (!has_number) {
        fail_at(pos_, "expected a rational coefficient or 'x'");
      }
      if (power % 2 != 0)
        throw ParityError("parity violation: odd power x^" + std::to_string(power) +
                          " at column " + std::to_string(term_start + 1));
      terms[power] += sign * coefficient;
      first = false;
      skip_space();
    }
    return terms;
  }

 private:
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string digits(const char* what) {
    const std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail_at(start, std::string("expected digits for ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer(const char* what) {
    const std::size_t start = pos_;
    const std::string d = digits(what);
    if (d.size() > 4) fail_at(start, std::string(what) + " too large");
    return std::stoi(d);
  }

  mpq_class rational() {
    mpz_class num(digits("numerator"));
    mpz_class den = 1;
    if (!done() && peek() == '/') {
      ++pos_;
      const std::size_t at = pos_;
      den = mpz_class(digits("denominator"));
      if (den == 0) fail_at(at, "zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

real parse_real(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  real value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ConfigError("not a number: '" + std::string(text) + "'");
  return value;
}

std::string optional_real(const std::optional<real>& v) { return v ? format_real(*v) : ""; }

struct Evaluator {
  const PerturbationSeries& series;
  QuadConfig quad;

  ReportRow sc(int n, real x) const {
    const auto r = sc_energy(n, x, series, quad);
    return {.method = "sc",
            .n = n,
            .sigma = std::nullopt,
            .x_cut = x,
            .numerator = r.numerator,
            .denominator = r.denominator,
            .ratio = r.ratio,
            .oracle = r.oracle,
            .abs_err = r.abs_error};
  }

  ReportRow shoot(int n, real x) const {
    const real at_zero = psi_n_shoot(n, 0, x, series, quad).value;
    const real at_one = psi_n_shoot(n, 1, x, series, quad).value;
    const real numerator = -at_zero;
    const real denominator = at_one - at_zero;
    const real ratio = numerator / denominator;
    const real oracle = series.energy(n).get_d();
    return {.method = "shoot",
            .n = n,
            .sigma = std::nullopt,
            .x_cut = x,
            .numerator = numerator,
            .denominator = denominator,
            .ratio = ratio,
            .oracle = oracle,
            .abs_err = std::abs(ratio - oracle)};
  }

  static ReportRow ghost(const SigmaSweepRow& r) {
    return {.method = "ghost",
            .n = r.order,
            .sigma = r.sigma,
            .x_cut = r.cutoff,
            .numerator = r.numerator,
            .denominator = r.denominator,
            .ratio = r.ratio,
            .oracle = r.oracle,
            .abs_err = std::abs(r.ratio.real() - r.oracle)};
  }
};

bool includes(Method selected, Method m) { return selected == m || selected == Method::all; }

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path partial = target.string() + ".partial";
  {
    std::ofstream out(partial, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(partial, ec);
      throw ConfigError("failed writing output file '" + path + "'");
    }
  }
  fs::rename(partial, target);
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  const auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    entries[key] = value;
  }
  return entries;
}

// Config-file entries become leading arguments, so later command-line flags
// override them.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  static const std::set<std::string> kKeys{"perturbation", "order",  "xcut",
                                           "xcut-grid",    "sigma-grid", "tol",
                                           "extrapolate",  "format", "output"};
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  std::vector<std::string> merged{args.front()};
  for (const auto& [key, value] : read_config_file(*path)) {
    if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
    if (key == "extrapolate") {
      if (value == "true" || value == "1") merged.push_back("--extrapolate");
      else if (value != "false" && value != "0")
        throw ConfigError("extrapolate must be true or false");
      continue;
    }
    merged.push_back("--" + key);
    merged.push_back(value);
  }
  merged.insert(merged.end(), args.begin() + 1, args.end());
  return merged;
}

}  // namespace

RationalPoly parse_perturbation(std::string_view text) {
  return RationalPoly::from_powers(TermScanner(text).scan());
}

std::vector<real> parse_list(std::string_view text) {
  std::vector<real> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    values.push_back(parse_real(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

std::vector<real> parse_grid(std::string_view text) {
  if (text.find(':') == std::string_view::npos) return parse_list(text);
  const auto first = text.find(':');
  const auto second = text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
    throw ConfigError("grid must be 'start:stop:step' or a comma list");
  const real start = parse_real(text.substr(0, first));
  const real stop = parse_real(text.substr(first + 1, second - first - 1));
  const real step = parse_real(text.substr(second + 1));
  if (!(step > 0) || stop < start) throw ConfigError("grid needs step > 0 and start <= stop");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 100000) throw ConfigError("grid has too many points");
  std::vector<real> values;
  for (long i = 0; i < count; ++i) values.push_back(start + step * static_cast<real>(i));
  return values;
}

Method parse_method(std::string_view name) {
  if (name == "oracle") return Method::oracle;
  if (name == "sc") return Method::sc;
  if (name == "ghost") return Method::ghost;
  if (name == "shoot") return Method::shoot;
  if (name == "all") return Method::all;
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

std::string to_string(Method method) {
  switch (method) {
    case Method::oracle: return "oracle";
    case Method::sc: return "sc";
    case Method::ghost: return "ghost";
    case Method::shoot: return "shoot";
    case Method::all: return "all";
  }
  return "?";
}

void RunConfig::validate() const {
  parse_perturbation(perturbation);
  if (order < 1 || order > kMaxOrder)
    throw ConfigError("order must lie in [1, " + std::to_string(kMaxOrder) + "]");
  if (!(tol > 0)) throw ConfigError("tolerance must be positive");
  if (method == Method::oracle) return;
  if (cutoffs.empty()) throw ConfigError("cutoff grid is empty");
  for (real x : cutoffs) {
    if (!(x >= kScCutoffMin && x <= kCutoffMax))
      throw ConfigError("cutoff " + format_real(x) + " outside [3, 25]");
  }
  if (includes(method, Method::ghost)) {
    if (sigmas.empty()) throw ConfigError("sigma grid is empty");
    for (real s : sigmas) {
      if (!(s > 0) || !std::isfinite(s)) throw ConfigError("sigma values must be positive");
    }
    std::set<real> distinct(sigmas.begin(), sigmas.end());
    if (distinct.size() != sigmas.size()) throw ConfigError("sigma grid has repeated values");
    if (extrapolate && sigmas.size() < 3)
      throw ConfigError("extrapolation needs at least 3 sigma values");
  }
}

std::string format_real(real value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

Report build_report(const RunConfig& config) {
  config.validate();
  const auto series = build_series(parse_perturbation(config.perturbation), config.order);
  const Evaluator eval{series, QuadConfig{.rtol = config.tol}};

  std::vector<real> cutoffs = config.cutoffs;
  std::sort(cutoffs.begin(), cutoffs.end());
  cutoffs.erase(std::unique(cutoffs.begin(), cutoffs.end()), cutoffs.end());
  std::vector<real> sigmas = config.sigmas;
  std::sort(sigmas.begin(), sigmas.end(), std::greater<>());

  const auto exec = sweep::Execution::parallel;
  const std::size_t orders = static_cast<std::size_t>(config.order);
  Report report;

  if (includes(config.method, Method::oracle)) {
    report.exact_text = format_series(series);
    for (int n = 1; n <= config.order; ++n) {
      const real e = series.energy(n).get_d();
      report.rows.push_back({.method = "oracle",
                             .n = n,
                             .sigma = std::nullopt,
                             .x_cut = std::nullopt,
                             .numerator = e,
                             .denominator = 1,
                             .ratio = e,
                             .oracle = e,
                             .abs_err = 0});
    }
  }

  if (includes(config.method, Method::sc)) {
    const auto rows = sweep::map_indexed(
        orders * cutoffs.size(),
        [&](std::size_t i) {
          return eval.sc(static_cast<int>(i / cutoffs.size()) + 1, cutoffs[i % cutoffs.size()]);
        },
        exec);
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }

  if (includes(config.method, Method::ghost)) {
    const std::size_t per_order = sigmas.size() * cutoffs.size();
    const auto rows = sweep::map_indexed(
        orders * per_order,
        [&](std::size_t i) {
          const int n = static_cast<int>(i / per_order) + 1;
          const std::size_t j = i % per_order;
          return ghost_energy(n, sigmas[j / cutoffs.size()], cutoffs[j % cutoffs.size()], series,
                              eval.quad);
        },
        exec);
    for (const auto& r : rows) report.rows.push_back(Evaluator::ghost(r));

    if (config.extrapolate) {
      for (int n = 1; n <= config.order; ++n) {
        for (real x : cutoffs) {
          std::vector<SigmaSweepRow> group;
          for (const auto& r : rows)
            if (r.order == n && r.cutoff == x) group.push_back(r);
          const auto fit = sigma_extrapolate(group);
          report.extrapolations.push_back("extrapolated = " + format_real(fit.limit) + " ± " +
                                          format_real(fit.residual) + " (n=" + std::to_string(n) +
                                          ", x_cut=" + format_real(x) +
                                          ", model=" + to_string(fit.model) + ")");
        }
      }
    }
  }

  if (includes(config.method, Method::shoot)) {
    const auto rows = sweep::map_indexed(
        orders * cutoffs.size(),
        [&](std::size_t i) {
          return eval.shoot(static_cast<int>(i / cutoffs.size()) + 1,
                            cutoffs[i % cutoffs.size()]);
        },
        exec);
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  return report;
}

std::string format_csv(const Report& report) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : report.rows) {
    os << r.method << ',' << r.n << ',' << optional_real(r.sigma) << ','
       << optional_real(r.x_cut) << ',' << format_real(r.numerator.real()) << ','
       << format_real(r.numerator.imag()) << ',' << format_real(r.denominator.real()) << ','
       << format_real(r.denominator.imag()) << ',' << format_real(r.ratio.real()) << ','
       << format_real(r.ratio.imag()) << ',' << format_real(r.oracle) << ','
       << format_real(r.abs_err) << '\n';
  }
  return os.str();
}

std::string format_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["method"] = r.method;
    row["n"] = r.n;
    row["sigma"] = r.sigma ? nlohmann::ordered_json(*r.sigma) : nlohmann::ordered_json();
    row["x_cut"] = r.x_cut ? nlohmann::ordered_json(*r.x_cut) : nlohmann::ordered_json();
    row["numerator_re"] = r.numerator.real();
    row["numerator_im"] = r.numerator.imag();
    row["denominator_re"] = r.denominator.real();
    row["denominator_im"] = r.denominator.imag();
    row["ratio_re"] = r.ratio.real();
    row["ratio_im"] = r.ratio.imag();
    row["oracle"] = r.oracle;
    row["abs_err"] = r.abs_err;
    doc["rows"].push_back(std::move(row));
  }
  if (!report.exact_text.empty()) doc["exact"] = report.exact_text;
  if (!report.extrapolations.empty()) doc["extrapolations"] = report.extrapolations;
  return doc.dump(2) + "\n";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Report report = build_report(config);
    std::string body;
    if (config.format == OutputFormat::json) {
      body = format_json(report);
    } else if (config.method == Method::oracle) {
      body = report.exact_text;
    } else {
      body = format_csv(report);
    }
    if (config.output_path.empty()) {
      out << body;
    } else {
      write_atomically(config.output_path, body);
    }
    if (config.format == OutputFormat::csv)
      for (const auto& line : report.extrapolations) out << line << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "pertlab: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "pertlab: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "pertlab: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv, argv + argc);
  if (args.empty()) args.emplace_back("pertlab");
  RunConfig config;
  std::string xcut_grid;
  std::optional<real> xcut;
  std::string sigma_grid;
  std::string format = "csv";
  std::string config_path;

  CLI::App app{"Perturbation energies of the half-line anharmonic oscillator", "pertlab"};
  app.require_subcommand(1);
  const auto last = CLI::MultiOptionPolicy::TakeLast;
  app.add_option("--perturbation", config.perturbation, "Even polynomial, e.g. \"1/2 x^2 + x^4\"")
      ->multi_option_policy(last);
  app.add_option("--order", config.order, "Highest perturbation order")->multi_option_policy(last);
  app.add_option("--xcut", xcut, "Single cutoff X")->multi_option_policy(last);
  app.add_option("--xcut-grid", xcut_grid, "Cutoff grid a:b:s or comma list")
      ->multi_option_policy(last);
  app.add_option("--sigma-grid", sigma_grid, "Ghost mixing values, comma list")
      ->multi_option_policy(last);
  app.add_option("--tol", config.tol, "Quadrature relative tolerance")->multi_option_policy(last);
  app.add_flag("--extrapolate", config.extrapolate, "Fit the sigma -> 0 limit");
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->multi_option_policy(last);
  app.add_option("--output", config.output_path, "Report path (default: stdout)")
      ->multi_option_policy(last);
  app.add_option("--config", config_path, "Plain-text key = value file; flags take precedence")
      ->multi_option_policy(last);
  for (const char* name : {"oracle", "sc", "ghost", "shoot", "all"}) {
    app.add_subcommand(name, std::string("Run the ") + name + " method")->fallthrough();
  }

  try {
    auto merged = merge_config(args);
    // CLI11 consumes a reversed argument list without the program name.
    merged.erase(merged.begin());
    std::reverse(merged.begin(), merged.end());
    app.parse(merged);
    config.method = parse_method(app.get_subcommands().front()->get_name());
    if (xcut && !xcut_grid.empty()) throw ConfigError("use either --xcut or --xcut-grid");
    if (xcut) config.cutoffs = {*xcut};
    if (!xcut_grid.empty()) config.cutoffs = parse_grid(xcut_grid);
    if (!sigma_grid.empty()) config.sigmas = parse_list(sigma_grid);
    config.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pertlab: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "pertlab: " << e.what() << '\n';
    return kExitConfig;
  }
  return run(config, out, err);
}

}  // namespace pertlab::cli
