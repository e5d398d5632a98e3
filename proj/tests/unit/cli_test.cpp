#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "ltlf/bench.hpp"
#include "ltlf/dtree.hpp"
#include "ltlf/encoding.hpp"
#include "ltlf/maxsat.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace ltlf;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("ltlf_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  std::string str() const { return path_.string(); }

private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    out.push_back(l);
  return out;
}

std::string field(const std::string& out, const std::string& key) {
  for (const auto& l : lines(out))
    if (l.rfind(key + ": ", 0) == 0)
      return l.substr(key.size() + 2);
  return {};
}

std::string make_sample(const TempDir& dir, const std::string& pattern, std::uint64_t seed = 0,
                        std::size_t traces = 20) {
  const auto s = generate_sample({.pattern = pattern, .num_traces = traces, .max_length = 6,
                                  .seed = seed});
  const auto path = dir / (pattern + std::to_string(seed) + ".trace");
  save_sample(path, s);
  return path;
}

} // namespace

TEST(Cli, LearnOnGeneratedSample) {
  TempDir dir;
  const auto path = make_sample(dir, "existence2");
  const auto r = cli_run({"learn", "--sample", path, "--kappa", "0.05"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(field(r.out, "status"), "solved");
  const auto s = load_sample(path);
  const auto f = parse_formula(field(r.out, "formula"), s.alphabet());
  EXPECT_LE(oracle::loss(s, f), Rational(5, 100));
  EXPECT_EQ(field(r.out, "size"), std::to_string(f.size()));
}

TEST(Cli, LearnInputErrors) {
  TempDir dir;
  EXPECT_EQ(cli_run({"learn", "--sample", dir / "missing.trace"}).code, cli::kInputError);
  const auto path = make_sample(dir, "absence1");
  const auto r = cli_run({"learn", "--sample", path, "--kappa", "1.5"});
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("kappa"), std::string::npos);
  EXPECT_EQ(cli_run({"learn"}).code, cli::kInputError);
  EXPECT_EQ(cli_run({"frobnicate"}).code, cli::kInputError);
  EXPECT_EQ(cli_run({"learn", "--sample", path, "--ops", "Q"}).code, cli::kInputError);
}

TEST(Cli, LearnSizeCapAndTimeout) {
  TempDir dir;
  const auto path = make_sample(dir, "absence1");
  EXPECT_EQ(cli_run({"learn", "--sample", path, "--max-size", "1"}).code, cli::kCapReached);
  const auto hard = generate_sample({.pattern = "disjunction3", .num_traces = 80, .max_length = 10});
  save_sample(dir / "hard.trace", hard);
  const auto r = cli_run({"learn", "--sample", dir / "hard.trace", "--timeout", "0.3"});
  EXPECT_EQ(r.code, cli::kTimeout);
  EXPECT_EQ(field(r.out, "status"), "timeout");
}

TEST(Cli, LearnDt) {
  TempDir dir;
  const auto path = make_sample(dir, "universality2", 1, 30);
  const auto r = cli_run({"learn-dt", "--sample", path, "--kappa", "0.05", "--min-score", "0.8"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto s = load_sample(path);
  const auto tree = parse_tree(field(r.out, "tree"), s.alphabet());
  const auto f = parse_formula(field(r.out, "formula"), s.alphabet());
  EXPECT_LE(oracle::loss(s, f), Rational(5, 100));
  for (const auto& e : s.entries())
    EXPECT_EQ(tree.classify(e.trace), oracle::sat(f, e.trace));
  EXPECT_EQ(cli_run({"learn-dt", "--sample", dir / "nope.trace"}).code, cli::kInputError);
  EXPECT_EQ(cli_run({"learn-dt", "--sample", path, "--min-score", "0.5"}).code,
            cli::kInputError);
  EXPECT_EQ(cli_run({"learn-dt", "--sample", path, "--kappa", "0", "--max-depth", "1"}).code,
            cli::kCapReached);
}

TEST(Cli, GenDeterministicWithNoisyTwin) {
  TempDir a, b;
  const std::vector<std::string> common{"gen", "--pattern", "absence1", "--traces", "50",
                                        "--maxlen", "10", "--seed", "7", "--noise", "0.05"};
  auto args = common;
  args.insert(args.end(), {"--out", a.str()});
  const auto ra = cli_run(args);
  ASSERT_EQ(ra.code, cli::kOk) << ra.err;
  args = common;
  args.insert(args.end(), {"--out", b.str()});
  ASSERT_EQ(cli_run(args).code, cli::kOk);
  const auto written = lines(ra.out);
  ASSERT_EQ(written.size(), 2u);
  EXPECT_NE(written[1].find("_noisy"), std::string::npos);
  for (const auto& p : written) {
    const auto name = fs::path(p).filename().string();
    EXPECT_EQ(slurp(a / name), slurp(b / name));
  }
}

TEST(Cli, GenCatalogSweep) {
  TempDir dir;
  const auto r = cli_run({"gen", "--traces", "20", "--maxlen", "8", "--out", dir.str()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(lines(r.out).size(), pattern_catalog().size());
  EXPECT_EQ(cli_run({"gen", "--pattern", "nonsense", "--out", dir.str()}).code, cli::kInputError);
}

TEST(Cli, BenchRowsWideAndSummary) {
  TempDir dir;
  for (std::uint64_t seed = 0; seed < 3; ++seed)
    make_sample(dir, "existence1", seed);
  const auto runs = dir / "runs.csv", wide = dir / "wide.csv", summary = dir / "summary.csv";
  const auto r = cli_run({"bench", dir.str(), "--run", "flie:0.05", "--run", "dt:0.8", "--out",
                          runs, "--wide", wide, "--summary", summary, "--jobs", "2"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto rows = lines(slurp(runs));
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], cli::record_header());

  const auto w = lines(slurp(wide));
  ASSERT_EQ(w.size(), 4u);
  EXPECT_EQ(w[0], "sample,benchmark_noise,runtime_MaxSAT5,runtime_MaxSATDT80,LTL_size_MaxSAT5,"
                  "LTL_size_MaxSATDT80");

  // recompute the average size of the flie runs from the rows
  double sum = 0;
  int n = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].find(",MaxSAT5,") == std::string::npos)
      continue;
    const auto last = rows[i].rfind(',');
    const auto prev = rows[i].rfind(',', last - 1);
    sum += std::stod(rows[i].substr(prev + 1, last - prev - 1));
    ++n;
  }
  ASSERT_EQ(n, 3);
  char expect[32];
  std::snprintf(expect, sizeof expect, "%.3f", sum / n);
  bool found = false;
  for (const auto& l : lines(slurp(summary)))
    if (l.rfind("MaxSAT5,", 0) == 0) {
      EXPECT_EQ(l.substr(l.rfind(',') + 1), expect);
      found = true;
    }
  EXPECT_TRUE(found);
  EXPECT_EQ(slurp(summary).rfind("# ", 0), 0u);
}

TEST(Cli, BenchTimeoutConvention) {
  TempDir dir;
  save_sample(dir / "hard.trace",
              generate_sample({.pattern = "disjunction3", .num_traces = 80, .max_length = 10}));
  const auto r = cli_run({"bench", dir / "hard.trace", "--run", "flie:0", "--timeout", "0.25"});
  ASSERT_EQ(r.code, cli::kOk);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NE(rows[1].find(",0.250,true,timeout,"), std::string::npos) << rows[1];
}

TEST(Cli, BenchRecordsBadSamplesWithoutAborting) {
  TempDir dir;
  make_sample(dir, "absence1");
  std::ofstream(dir / "broken.trace") << "1,x\n";
  const auto r = cli_run({"bench", dir.str(), "--run", "flie:0.1"});
  ASSERT_EQ(r.code, cli::kOk);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NE(r.out.find("error: "), std::string::npos);
  EXPECT_NE(r.out.find(",solved,"), std::string::npos);
}

TEST(Cli, BenchConfigFileAndEnvironment) {
  TempDir dir;
  const auto path = make_sample(dir, "absence1");
  std::ofstream(dir / "sweep.conf") << "[bench]\nrun = [\"flie:0.1\"]\n";
  ::setenv("LTLF_JOBS", "2", 1);
  const auto r = cli_run({"--config", dir / "sweep.conf", "bench", path});
  ::unsetenv("LTLF_JOBS");
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NE(rows[1].find(",MaxSAT10,"), std::string::npos);
}

TEST(Cli, RunSpecs) {
  const auto a = cli::parse_run_spec("flie:0.05", Rational(1, 20));
  EXPECT_EQ(a.tag, "MaxSAT5");
  const auto b = cli::parse_run_spec("dt:0.6", Rational(1, 20));
  EXPECT_EQ(b.tag, "MaxSATDT60");
  EXPECT_EQ(b.kappa, Rational(1, 20));
  const auto c = cli::parse_run_spec("dt:0.8:0.1", Rational(1, 20));
  EXPECT_EQ(c.tag, "MaxSATDT80_k10");
  EXPECT_EQ(c.kappa, Rational(1, 10));
  EXPECT_THROW(cli::parse_run_spec("dt:0.4", 0), std::invalid_argument);
  EXPECT_THROW(cli::parse_run_spec("sat:0", 0), std::invalid_argument);
  EXPECT_EQ(cli::csv_quote("a,b"), "\"a,b\"");
  EXPECT_EQ(cli::csv_quote("say \"x\", y"), "\"say \"\"x\"\", y\"");
}

TEST(Cli, ExportAndImportModel) {
  TempDir dir;
  const auto path = make_sample(dir, "existence1", 2, 10);
  const auto s = load_sample(path);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto wcnf = dir / "inst.wcnf";
    ASSERT_EQ(cli_run({"export-wcnf", "-s", path, "-n", std::to_string(n), "-o", wcnf}).code,
              cli::kOk);
    std::ifstream in(wcnf);
    const auto cnf = read_wcnf(in);
    const auto sol = solve_optimal(cnf);
    ASSERT_TRUE(sol.has_model());
    {
      std::ofstream m(dir / "model.txt");
      m << "s OPTIMUM FOUND\n";
      write_model(m, sol.assignment);
    }
    const auto r = cli_run({"export-wcnf", "-s", path, "-n", std::to_string(n), "--import-model",
                            dir / "model.txt"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto direct = EncodingInstance::build(n, s, omega_uniform(s), OperatorSet::full());
    const auto best = solve_optimal(direct.cnf());
    const auto f = parse_formula(field(r.out, "formula"), s.alphabet());
    EXPECT_EQ(Rational(1) - oracle::loss(s, f), best.satisfied_soft_weight);
  }
  std::ofstream(dir / "bad.txt") << "v 1 -1 0\n";
  EXPECT_EQ(cli_run({"export-wcnf", "-s", path, "-n", "2", "--import-model", dir / "bad.txt"}).code,
            cli::kInputError);
}

TEST(Cli, SizeOneInstanceHasOneModelPerNullaryLabel) {
  TempDir dir;
  const LabeledSample s(Alphabet::numbered(2), {{Trace{1, 2}, true}, {Trace{0}, false}});
  save_sample(dir / "tiny.trace", s);
  const auto r = cli_run({"export-wcnf", "-s", dir / "tiny.trace", "-n", "1"});
  ASSERT_EQ(r.code, cli::kOk);
  std::istringstream in(r.out);
  const auto cnf = read_wcnf(in);
  // p0, p1, true, false
  EXPECT_EQ(oracle::all_models(cnf).size(), 4u);
}

TEST(Cli, Eval) {
  TempDir dir;
  const auto path = make_sample(dir, "absence1");
  const auto r = cli_run({"eval", "-s", path, "-f", "G !p0"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(field(r.out, "loss"), "0 (0.0000)");
  EXPECT_EQ(cli_run({"eval", "-s", path, "-f", "G !"}).code, cli::kInputError);
}
