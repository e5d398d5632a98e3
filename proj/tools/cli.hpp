#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ltlf/rational.hpp"

namespace ltlf::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kTimeout = 2;
inline constexpr int kCapReached = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

enum class Algorithm { Flie, Dt };

// One benchmark configuration, e.g. "flie:0.05" or "dt:0.8" (dt takes an
// optional third field overriding kappa).
struct RunSpec {
  Algorithm algorithm = Algorithm::Flie;
  Rational kappa = 0;
  std::optional<Rational> min_score;
  std::string tag; // MaxSAT5, MaxSATDT80, ...
};

// Throws std::invalid_argument.
RunSpec parse_run_spec(const std::string& text, const Rational& dt_kappa);

struct RunRecord {
  std::string algorithm; // maxsat-flie | maxsat-dt
  std::string tag;
  std::string sample;
  double benchmark_noise = 0;
  Rational kappa = 0;
  std::optional<Rational> min_score;
  double runtime = 0;
  bool timed_out = false;
  std::string status; // solved | timeout | size-cap | depth-cap | error: ...
  std::string formula;
  std::optional<std::size_t> formula_size;
  std::optional<Rational> loss;
};

std::string record_header();
std::string record_row(const RunRecord& r);

// One row per sample with runtime_<tag> and LTL_size_<tag> columns.
void write_wide_csv(std::ostream& out, const std::vector<RunRecord>& records);

// Per (tag, noise): runs, timeouts and averages under both timeout
// conventions. The rules are stated in leading comment lines.
void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& records);

std::string csv_quote(const std::string& field);

} // namespace ltlf::cli
