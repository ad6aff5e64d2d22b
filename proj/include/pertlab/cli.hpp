#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pertlab/rational_poly.hpp"
#include "pertlab/real.hpp"

namespace pertlab::cli {

enum class Method { oracle, sc, ghost, shoot, all };
enum class OutputFormat { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kMaxOrder = 10;

struct RunConfig {
  std::string perturbation = "x^4";
  int order = 1;
  Method method = Method::oracle;
  std::vector<real> cutoffs{6};
  std::vector<real> sigmas{1e-8, 1e-9, 1e-10, 1e-11, 1e-12};
  real tol = 1e-10;
  bool extrapolate = false;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;  // empty: standard output

  // Throws ConfigError.
  void validate() const;
};

// Grammar: sum of terms [+|-][p/q ]x^k with k even; a bare rational is a
// constant term. Throws ParityError for odd powers and ConfigError (with the
// 1-based column) for malformed text.
RationalPoly parse_perturbation(std::string_view text);

// "a:b:s" (inclusive, ascending) or a comma-separated list.
std::vector<real> parse_grid(std::string_view text);
std::vector<real> parse_list(std::string_view text);

Method parse_method(std::string_view name);
std::string to_string(Method method);

struct ReportRow {
  std::string method;
  int n = 0;
  std::optional<real> sigma;
  std::optional<real> x_cut;
  complex numerator;
  complex denominator;
  complex ratio;
  real oracle = 0;
  real abs_err = 0;
};

struct Report {
  std::vector<ReportRow> rows;
  std::string exact_text;                 // oracle listing "E1 = 3/4"
  std::vector<std::string> extrapolations;  // "extrapolated = ... ± ..."
};

inline constexpr std::string_view kCsvHeader =
    "method,n,sigma,x_cut,numerator_re,numerator_im,denominator_re,denominator_im,"
    "ratio_re,ratio_im,oracle,abs_err";

Report build_report(const RunConfig& config);
std::string format_csv(const Report& report);
std::string format_json(const Report& report);

// Shortest decimal that round-trips to the same double.
std::string format_real(real value);

// Executes a validated config, writing to config.output_path or `out`.
// Returns the process exit code; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command-line entry point: flags, optional --config file, run.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pertlab::cli
