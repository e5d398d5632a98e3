#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "ltlf/bench.hpp"
#include "ltlf/dtree.hpp"
#include "ltlf/learn.hpp"
#include "ltlf/maxsat.hpp"

namespace fs = std::filesystem;

namespace ltlf::cli {

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string shortest(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string loss_text(const Rational& r) {
  return to_string(r) + " (" + to_decimal(r, 4) + ")";
}

// "5" for 0.05, "2.5" for 0.025
std::string percent_tag(const Rational& r) {
  const Rational p = r * 100;
  if (p.denominator() == 1)
    return std::to_string(p.numerator());
  return shortest(to_double(p));
}

double sample_noise(const LabeledSample& s) {
  if (auto v = s.comment_value("noise"))
    try {
      return to_double(parse_rational(*v));
    } catch (const std::invalid_argument&) {
    }
  return 0;
}

Rational parse_unit_interval(const std::string& text, const char* what) {
  const Rational r = parse_rational(text);
  if (r < Rational(0) || r > Rational(1))
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + text);
  return r;
}

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

LabeledSample read_sample(const std::string& path, std::ostream& err) {
  std::vector<std::string> warnings;
  auto s = load_sample(path, &warnings);
  for (const auto& w : warnings)
    err << "warning: " << path << ": " << w << '\n';
  return s;
}

OperatorSet read_ops(const std::string& text) {
  return text.empty() ? OperatorSet::full() : OperatorSet::parse(text);
}

// Options shared by learn and learn-dt.
struct LearnOpts {
  std::string sample;
  std::string kappa = "0";
  std::string ops;
  double timeout = 900;
  std::uint64_t seed = 0;
};

void add_learn_opts(CLI::App* cmd, LearnOpts& o) {
  cmd->add_option("-s,--sample", o.sample, "Sample file")->required();
  cmd->add_option("-k,--kappa", o.kappa, "Loss threshold in [0, 1]")->capture_default_str();
  cmd->add_option("--ops", o.ops, "Operators, e.g. \"!,&,|,X,F,G,U\" (default: all)");
  cmd->add_option("-t,--timeout", o.timeout, "Wall-clock limit in seconds (<= 0: none)")
      ->envname("LTLF_TIMEOUT")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Solver seed")->capture_default_str();
}

struct LearnFlieOpts {
  LearnOpts common;
  std::string weights = "uniform";
  std::size_t max_size = 40;
};

int cmd_learn(const LearnFlieOpts& o, std::ostream& out, std::ostream& err) {
  const auto s = read_sample(o.common.sample, err);
  LearnConfig cfg;
  cfg.kappa = parse_unit_interval(o.common.kappa, "kappa");
  cfg.ops = read_ops(o.common.ops);
  cfg.max_size = o.max_size;
  cfg.timeout_seconds = o.common.timeout;
  cfg.seed = o.common.seed;
  cfg.weights = o.weights == "rebalanced" ? WeightChoice::Rebalanced : WeightChoice::Uniform;

  const auto r = learn_minimal(s, cfg);
  out << "status: " << to_string(r.status) << '\n';
  if (r.formula) {
    out << "formula: " << format_formula(*r.formula, s.alphabet()) << '\n';
    out << "size: " << r.formula->size() << '\n';
    out << "loss: " << loss_text(loss(s, *r.formula)) << '\n';
    out << "weighted_loss: " << loss_text(r.achieved_wl) << '\n';
  }
  out << "runtime: " << fixed(r.seconds, 3) << '\n';
  for (const auto& it : r.iterations)
    err << "n=" << it.n << " vars=" << it.vars << " clauses=" << it.clauses << ' '
        << to_string(it.outcome) << ' ' << fixed(it.seconds, 3) << "s\n";
  switch (r.status) {
  case LearnStatus::Solved: return kOk;
  case LearnStatus::TimedOut: return kTimeout;
  case LearnStatus::SizeCapReached: return kCapReached;
  }
  return kOk;
}

struct LearnDtOpts {
  LearnOpts common;
  std::string min_score = "0.8";
  std::optional<double> node_timeout;
  std::size_t max_depth = 20;
  bool parallel = false;
};

int cmd_learn_dt(const LearnDtOpts& o, std::ostream& out, std::ostream& err) {
  const auto s = read_sample(o.common.sample, err);
  DtConfig cfg;
  cfg.kappa = parse_unit_interval(o.common.kappa, "kappa");
  cfg.min_score = parse_rational(o.min_score);
  cfg.ops = read_ops(o.common.ops);
  cfg.node_timeout_seconds = o.node_timeout;
  cfg.deadline = Deadline::after_seconds(o.common.timeout);
  cfg.max_depth = o.max_depth;
  cfg.concurrent_split = cfg.concurrent_subtrees = o.parallel;
  cfg.seed = o.common.seed;
  for (const auto& w : cfg.validate())
    err << "warning: " << w << '\n';

  const auto r = learn_tree(s, cfg);
  const Formula f = tree_to_formula(r.tree);
  out << "status: " << to_string(r.status) << '\n';
  out << "tree: " << serialize_tree(r.tree, s.alphabet()) << '\n';
  out << "formula: " << format_formula(f, s.alphabet()) << '\n';
  out << "size: " << f.size() << '\n';
  out << "loss: " << loss_text(tree_loss(s, r.tree)) << '\n';
  out << "runtime: " << fixed(r.seconds, 3) << '\n';
  if (!r.conforming)
    err << "warning: tree was closed early and may exceed the loss threshold\n";
  switch (r.status) {
  case TreeStatus::Solved: return kOk;
  case TreeStatus::TimedOut: return kTimeout;
  case TreeStatus::DepthExceeded:
  case TreeStatus::SizeCapReached: return kCapReached;
  }
  return kOk;
}

struct GenOpts {
  std::vector<std::string> patterns;
  std::size_t traces = 50;
  std::size_t maxlen = 10;
  std::size_t props = 0;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::optional<std::string> noise;
  std::string out_dir = ".";
};

int cmd_gen(const GenOpts& o, std::ostream& out, std::ostream& err) {
  std::optional<Rational> noise;
  if (o.noise)
    noise = parse_unit_interval(*o.noise, "noise rate");
  std::vector<std::string> names = o.patterns;
  if (names.empty() || (names.size() == 1 && names[0] == "all"))
    for (const auto& p : pattern_catalog())
      names.push_back(p.name);
  std::erase(names, "all");
  for (const auto& n : names)
    find_pattern(n); // reject unknown names before writing anything

  fs::create_directories(o.out_dir);
  int status = kOk;
  for (const auto& name : names) {
    for (std::size_t c = 0; c < o.count; ++c) {
      GenSpec spec{.pattern = name,
                   .num_traces = o.traces,
                   .max_length = o.maxlen,
                   .props = o.props,
                   .seed = o.seed + c};
      const std::string stem = name + "_t" + std::to_string(o.traces) + "_l" +
                               std::to_string(o.maxlen) + "_s" + std::to_string(spec.seed);
      try {
        const auto s = generate_sample(spec);
        const auto path = (fs::path(o.out_dir) / (stem + ".trace")).string();
        save_sample(path, s);
        out << path << '\n';
        if (noise) {
          const auto noisy = inject_noise(s, *noise, noise_seed(spec.seed));
          const auto npath = (fs::path(o.out_dir) / (stem + "_noisy.trace")).string();
          save_sample(npath, noisy.sample);
          out << npath << '\n';
        }
      } catch (const GenerationError& e) {
        err << "error: " << e.what() << " (try --props or a larger --maxlen)\n";
        status = kInputError;
      }
    }
  }
  return status;
}

std::vector<std::string> collect_samples(const std::vector<std::string>& paths) {
  std::vector<std::string> files;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> here;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".trace")
          here.push_back(e.path().string());
      std::sort(here.begin(), here.end());
      files.insert(files.end(), here.begin(), here.end());
    } else {
      files.push_back(p);
    }
  }
  return files;
}

RunRecord run_one(const std::string& path, const LabeledSample& s, const RunSpec& spec,
                  double timeout, const OperatorSet& ops, std::uint64_t seed) {
  RunRecord rec;
  rec.algorithm = spec.algorithm == Algorithm::Flie ? "maxsat-flie" : "maxsat-dt";
  rec.tag = spec.tag;
  rec.sample = path;
  rec.benchmark_noise = sample_noise(s);
  rec.kappa = spec.kappa;
  rec.min_score = spec.min_score;
  auto finish = [&](const std::optional<Formula>& f, double seconds, bool timed_out,
                    std::string status, const std::optional<Rational>& achieved) {
    rec.timed_out = timed_out;
    rec.runtime = timed_out && timeout > 0 ? timeout : seconds;
    rec.status = std::move(status);
    if (f && !timed_out) {
      rec.formula = format_formula(*f, s.alphabet());
      rec.formula_size = f->size();
      rec.loss = achieved;
    }
  };
  if (spec.algorithm == Algorithm::Flie) {
    LearnConfig cfg;
    cfg.kappa = spec.kappa;
    cfg.ops = ops;
    cfg.timeout_seconds = timeout;
    cfg.seed = seed;
    const auto r = learn_minimal(s, cfg);
    std::optional<Rational> l;
    if (r.formula)
      l = loss(s, *r.formula);
    finish(r.formula, r.seconds, r.status == LearnStatus::TimedOut,
           std::string(to_string(r.status)), l);
  } else {
    DtConfig cfg;
    cfg.kappa = spec.kappa;
    cfg.min_score = *spec.min_score;
    cfg.ops = ops;
    cfg.deadline = Deadline::after_seconds(timeout);
    cfg.seed = seed;
    const auto r = learn_tree(s, cfg);
    finish(tree_to_formula(r.tree), r.seconds, r.status == TreeStatus::TimedOut,
           std::string(to_string(r.status)), tree_loss(s, r.tree));
  }
  return rec;
}

struct BenchOpts {
  std::vector<std::string> samples;
  std::vector<std::string> runs{"flie:0", "flie:0.05", "flie:0.1", "dt:0.6", "dt:0.8"};
  std::string dt_kappa = "0.05";
  std::string ops;
  double timeout = 900;
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string wide;
  std::string summary;
};

int cmd_bench(const BenchOpts& o, std::ostream& out, std::ostream& err) {
  const Rational dt_kappa = parse_unit_interval(o.dt_kappa, "dt-kappa");
  std::vector<RunSpec> specs;
  for (const auto& r : o.runs)
    specs.push_back(parse_run_spec(r, dt_kappa));
  const OperatorSet ops = read_ops(o.ops);
  const auto files = collect_samples(o.samples);
  if (files.empty())
    throw InputError("no sample files given");

  std::vector<std::optional<LabeledSample>> samples;
  std::vector<std::string> load_errors(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    try {
      samples.push_back(read_sample(files[i], err));
    } catch (const std::exception& e) {
      samples.emplace_back();
      load_errors[i] = e.what();
      err << "error: " << e.what() << '\n';
    }
  }

  std::ofstream file_out;
  std::ostream* rows = &out;
  if (!o.out.empty()) {
    file_out.open(o.out);
    if (!file_out)
      throw InputError("cannot write '" + o.out + "'");
    rows = &file_out;
  }
  *rows << record_header() << '\n' << std::flush;

  struct Job {
    std::size_t sample, spec;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < files.size(); ++i)
    for (std::size_t k = 0; k < specs.size(); ++k)
      jobs.push_back({i, k});
  std::vector<std::optional<RunRecord>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;

  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      const auto [si, ki] = jobs[j];
      RunRecord rec;
      if (!samples[si]) {
        rec.algorithm = specs[ki].algorithm == Algorithm::Flie ? "maxsat-flie" : "maxsat-dt";
        rec.tag = specs[ki].tag;
        rec.sample = files[si];
        rec.kappa = specs[ki].kappa;
        rec.min_score = specs[ki].min_score;
        rec.status = "error: " + load_errors[si];
      } else {
        try {
          rec = run_one(files[si], *samples[si], specs[ki], o.timeout, ops, o.seed);
        } catch (const std::exception& e) {
          rec.algorithm = specs[ki].algorithm == Algorithm::Flie ? "maxsat-flie" : "maxsat-dt";
          rec.tag = specs[ki].tag;
          rec.sample = files[si];
          rec.kappa = specs[ki].kappa;
          rec.min_score = specs[ki].min_score;
          rec.status = std::string("error: ") + e.what();
        }
      }
      std::lock_guard lock(mu);
      *rows << record_row(rec) << '\n' << std::flush;
      err << rec.tag << ' ' << rec.sample << ' ' << rec.status << ' ' << fixed(rec.runtime, 2)
          << "s\n";
      results[j] = std::move(rec);
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(o.jobs, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto& t : pool)
    t.join();

  std::vector<RunRecord> records;
  for (auto& r : results)
    records.push_back(std::move(*r));
  if (!o.wide.empty()) {
    std::ofstream w(o.wide);
    if (!w)
      throw InputError("cannot write '" + o.wide + "'");
    write_wide_csv(w, records);
  }
  if (!o.summary.empty()) {
    std::ofstream w(o.summary);
    if (!w)
      throw InputError("cannot write '" + o.summary + "'");
    write_summary_csv(w, records);
  }
  if (rows != &out)
    write_summary_csv(out, records);
  return kOk;
}

struct ExportOpts {
  std::string sample;
  std::size_t size = 1;
  std::string weights = "uniform";
  std::string ops;
  std::string out;
  std::string import_model;
  bool describe = true;
};

int cmd_export(const ExportOpts& o, std::ostream& out, std::ostream& err) {
  const auto s = read_sample(o.sample, err);
  const WeightFn omega = o.weights == "rebalanced" ? omega_rebalanced(s) : omega_uniform(s);
  const auto inst = EncodingInstance::build(o.size, s, omega, read_ops(o.ops));

  if (!o.import_model.empty()) {
    std::ifstream in(o.import_model);
    if (!in)
      throw InputError("cannot open model file '" + o.import_model + "'");
    const Assignment a = import_model(in, inst.cnf());
    const Formula f = inst.decode(a);
    out << "formula: " << format_formula(f, s.alphabet()) << '\n';
    out << "size: " << f.size() << '\n';
    out << "loss: " << loss_text(loss(s, f)) << '\n';
    out << "weighted_loss: " << loss_text(weighted_loss(s, f, omega)) << '\n';
    out << "soft_weight: " << loss_text(inst.cnf().satisfied_soft_weight(a)) << '\n';
    return kOk;
  }

  std::function<std::string(int)> describe;
  if (o.describe)
    describe = [&](int v) { return inst.describe(v); };
  if (o.out.empty() || o.out == "-") {
    export_wcnf(out, inst.cnf(), describe);
  } else {
    std::ofstream f(o.out);
    if (!f)
      throw InputError("cannot write '" + o.out + "'");
    export_wcnf(f, inst.cnf(), describe);
  }
  err << "vars=" << inst.cnf().num_vars() << " hard=" << inst.cnf().num_hard()
      << " soft=" << inst.cnf().num_soft() << '\n';
  return kOk;
}

struct EvalOpts {
  std::string sample;
  std::string formula;
};

int cmd_eval(const EvalOpts& o, std::ostream& out, std::ostream& err) {
  const auto s = read_sample(o.sample, err);
  const Formula f = parse_formula(o.formula, s.alphabet());
  out << "formula: " << format_formula(f, s.alphabet()) << '\n';
  out << "size: " << f.size() << '\n';
  out << "loss: " << loss_text(loss(s, f)) << '\n';
  if (s.has_both_classes())
    out << "weighted_loss_rebalanced: " << loss_text(weighted_loss(s, f, omega_rebalanced(s)))
        << '\n';
  return kOk;
}

} // namespace

RunSpec parse_run_spec(const std::string& text, const Rational& dt_kappa) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("run spec '" + text + "' is not algo:value");
  const std::string algo = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  RunSpec spec;
  if (algo == "flie") {
    spec.algorithm = Algorithm::Flie;
    spec.kappa = parse_unit_interval(rest, "kappa");
    spec.tag = "MaxSAT" + percent_tag(spec.kappa);
  } else if (algo == "dt") {
    spec.algorithm = Algorithm::Dt;
    spec.kappa = dt_kappa;
    const auto second = rest.find(':');
    if (second != std::string::npos) {
      spec.kappa = parse_unit_interval(rest.substr(second + 1), "kappa");
      rest.resize(second);
    }
    spec.min_score = parse_rational(rest);
    if (*spec.min_score <= Rational(1, 2) || *spec.min_score > Rational(1))
      throw std::invalid_argument("min_score must lie in (0.5, 1], got " + rest);
    spec.tag = "MaxSATDT" + percent_tag(*spec.min_score);
    if (second != std::string::npos)
      spec.tag += "_k" + percent_tag(spec.kappa);
  } else {
    throw std::invalid_argument("unknown algorithm '" + algo + "' (flie or dt)");
  }
  return spec;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos)
    return field;
  std::string q = "\"";
  for (char c : field) {
    if (c == '"')
      q += '"';
    q += c;
  }
  return q + '"';
}

std::string record_header() {
  return "algorithm,config,sample,benchmark_noise,kappa,min_score,runtime,timed_out,status,"
         "formula,formula_size,loss";
}

std::string record_row(const RunRecord& r) {
  std::string row;
  auto add = [&](const std::string& f) {
    if (!row.empty())
      row += ',';
    row += csv_quote(f);
  };
  add(r.algorithm);
  add(r.tag);
  add(r.sample);
  add(shortest(r.benchmark_noise));
  add(to_decimal(r.kappa, 4));
  add(r.min_score ? to_decimal(*r.min_score, 4) : "");
  add(fixed(r.runtime, 3));
  add(r.timed_out ? "true" : "false");
  add(r.status);
  add(r.formula);
  add(r.formula_size ? std::to_string(*r.formula_size) : "");
  add(r.loss ? to_decimal(*r.loss, 6) : "");
  return row;
}

void write_wide_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  std::vector<std::string> samples, tags;
  std::map<std::string, double> noise;
  std::map<std::pair<std::string, std::string>, const RunRecord*> cell;
  for (const auto& r : records) {
    if (std::find(samples.begin(), samples.end(), r.sample) == samples.end())
      samples.push_back(r.sample);
    if (std::find(tags.begin(), tags.end(), r.tag) == tags.end())
      tags.push_back(r.tag);
    noise[r.sample] = r.benchmark_noise;
    cell[{r.sample, r.tag}] = &r;
  }
  out << "sample,benchmark_noise";
  for (const auto& t : tags)
    out << ",runtime_" << t;
  for (const auto& t : tags)
    out << ",LTL_size_" << t;
  out << '\n';
  for (const auto& s : samples) {
    out << csv_quote(s) << ',' << shortest(noise[s]);
    for (const auto& t : tags) {
      out << ',';
      if (auto it = cell.find({s, t}); it != cell.end() && it->second->status.rfind("error", 0))
        out << fixed(it->second->runtime, 3);
    }
    for (const auto& t : tags) {
      out << ',';
      if (auto it = cell.find({s, t}); it != cell.end() && it->second->formula_size)
        out << *it->second->formula_size;
    }
    out << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  struct Acc {
    std::size_t runs = 0, timeouts = 0, errors = 0, sized = 0;
    double runtime_all = 0, runtime_done = 0, size = 0;
  };
  std::vector<std::string> tags;
  std::map<std::pair<std::string, double>, Acc> acc;
  for (const auto& r : records) {
    if (std::find(tags.begin(), tags.end(), r.tag) == tags.end())
      tags.push_back(r.tag);
    Acc& a = acc[{r.tag, r.benchmark_noise}];
    ++a.runs;
    if (r.status.rfind("error", 0) == 0) {
      ++a.errors;
      continue;
    }
    a.runtime_all += r.runtime;
    if (r.timed_out) {
      ++a.timeouts;
    } else {
      a.runtime_done += r.runtime;
    }
    if (r.formula_size) {
      ++a.sized;
      a.size += static_cast<double>(*r.formula_size);
    }
  }
  out << "# avg_runtime_with_timeouts: mean runtime over all non-error runs, a timed-out run "
         "counting as the timeout value\n"
      << "# avg_runtime_without_timeouts: mean runtime over runs that did not time out\n"
      << "# avg_size: mean formula size over runs that returned a formula (timeouts "
         "excluded)\n";
  out << "config,benchmark_noise,runs,timeouts,errors,avg_runtime_with_timeouts,"
         "avg_runtime_without_timeouts,avg_size\n";
  auto mean = [](double sum, std::size_t n) { return n ? fixed(sum / n, 3) : std::string(); };
  for (const auto& t : tags) {
    for (const auto& [key, a] : acc) {
      if (key.first != t)
        continue;
      out << t << ',' << shortest(key.second) << ',' << a.runs << ',' << a.timeouts << ','
          << a.errors << ',' << mean(a.runtime_all, a.runs - a.errors) << ','
          << mean(a.runtime_done, a.runs - a.errors - a.timeouts) << ','
          << mean(a.size, a.sized) << '\n';
    }
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learn LTLf formulas and decision trees from labeled traces", "ltlf"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; keys under a [bench] section go to bench");

  LearnFlieOpts learn;
  auto* c_learn = app.add_subcommand("learn", "Smallest formula with loss at most kappa");
  add_learn_opts(c_learn, learn.common);
  c_learn->add_option("--weights", learn.weights, "uniform or rebalanced")
      ->check(CLI::IsMember({"uniform", "rebalanced"}))
      ->capture_default_str();
  c_learn->add_option("--max-size", learn.max_size, "Largest formula size tried")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  LearnDtOpts dt;
  dt.common.kappa = "0.05";
  auto* c_dt = app.add_subcommand("learn-dt", "Decision tree over formulas");
  add_learn_opts(c_dt, dt.common);
  c_dt->add_option("-m,--min-score", dt.min_score, "Split score threshold in (0.5, 1]")
      ->capture_default_str();
  c_dt->add_option("--node-timeout", dt.node_timeout, "Per split-learning limit in seconds");
  c_dt->add_option("--max-depth", dt.max_depth, "Depth cap")->capture_default_str();
  c_dt->add_flag("--parallel", dt.parallel, "Learn splits and subtrees concurrently");

  GenOpts gen;
  auto* c_gen = app.add_subcommand("gen", "Generate samples from the pattern catalog");
  c_gen->add_option("-p,--pattern", gen.patterns, "Pattern name(s); default: whole catalog");
  c_gen->add_option("-n,--traces", gen.traces, "Traces per sample")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  c_gen->add_option("-l,--maxlen", gen.maxlen, "Maximal trace length")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  c_gen->add_option("--props", gen.props, "Alphabet size (0: pattern width + 1, at least 3)")
      ->capture_default_str();
  c_gen->add_option("--seed", gen.seed, "Seed of the first sample")->capture_default_str();
  c_gen->add_option("--count", gen.count, "Samples per pattern (consecutive seeds)")
      ->capture_default_str();
  c_gen->add_option("--noise", gen.noise, "Also write a _noisy twin with this flip rate");
  c_gen->add_option("-o,--out", gen.out_dir, "Output directory")->capture_default_str();

  BenchOpts bench;
  auto* c_bench = app.add_subcommand("bench", "Run learners over samples and write CSV");
  c_bench->add_option("samples,--samples", bench.samples, "Sample files or directories");
  c_bench->add_option("-r,--run", bench.runs, "flie:<kappa> or dt:<min_score>[:<kappa>]")
      ->capture_default_str();
  c_bench->add_option("--dt-kappa", bench.dt_kappa, "kappa for dt runs")->capture_default_str();
  c_bench->add_option("--ops", bench.ops, "Operators (default: all)");
  c_bench->add_option("-t,--timeout", bench.timeout, "Per-run limit in seconds")
      ->envname("LTLF_TIMEOUT")
      ->capture_default_str();
  c_bench->add_option("-j,--jobs", bench.jobs, "Concurrent runs")
      ->envname("LTLF_JOBS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_bench->add_option("--seed", bench.seed, "Solver seed")->capture_default_str();
  c_bench->add_option("-o,--out", bench.out, "Per-run CSV (default: stdout)");
  c_bench->add_option("--wide", bench.wide, "Per-sample CSV with runtime_*/LTL_size_* columns");
  c_bench->add_option("--summary", bench.summary, "Aggregate CSV");

  ExportOpts ex;
  auto* c_export = app.add_subcommand("export-wcnf", "Write the size-n instance as WCNF");
  c_export->add_option("-s,--sample", ex.sample, "Sample file")->required();
  c_export->add_option("-n,--size", ex.size, "Formula size bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_export->add_option("--weights", ex.weights, "uniform or rebalanced")
      ->check(CLI::IsMember({"uniform", "rebalanced"}))
      ->capture_default_str();
  c_export->add_option("--ops", ex.ops, "Operators (default: all)");
  c_export->add_option("-o,--out", ex.out, "Output file (default: stdout)");
  c_export->add_option("--import-model", ex.import_model,
                       "Decode a solver model for this instance instead of exporting");
  c_export->add_flag("!--no-describe", ex.describe, "Omit variable description comments");

  EvalOpts ev;
  auto* c_eval = app.add_subcommand("eval", "Loss of a given formula on a sample");
  c_eval->add_option("-s,--sample", ev.sample, "Sample file")->required();
  c_eval->add_option("-f,--formula", ev.formula, "Formula text")->required();

  std::vector<const char*> argv{"ltlf"};
  for (const auto& a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    if (*c_learn)
      return cmd_learn(learn, out, err);
    if (*c_dt)
      return cmd_learn_dt(dt, out, err);
    if (*c_gen)
      return cmd_gen(gen, out, err);
    if (*c_bench)
      return cmd_bench(bench, out, err);
    if (*c_export)
      return cmd_export(ex, out, err);
    if (*c_eval)
      return cmd_eval(ev, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

} // namespace ltlf::cli
