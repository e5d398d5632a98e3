#include "ltlf/bench.hpp"

#include <algorithm>
#include <set>

#include "ltlf/semantics.hpp"

namespace ltlf {

namespace {

Pattern make_pattern(std::string name, std::string group, std::string text) {
  const auto f = parse_formula(text, Alphabet::numbered(6));
  const std::size_t width = f.max_prop() ? *f.max_prop() + 1 : 0;
  return {std::move(name), std::move(group), std::move(text), width};
}

std::vector<Pattern> build_catalog() {
  return {
      make_pattern("absence1", "Absence", "G(!p0)"),
      make_pattern("absence2", "Absence", "F(p1) -> (!p0 U p1)"),
      make_pattern("absence3", "Absence", "G(p1 -> G(!p0))"),
      make_pattern("existence1", "Existence", "F(p0)"),
      make_pattern("existence2", "Existence", "G(!p0) | F(p0 & F(p1))"),
      make_pattern("existence3", "Existence", "G(p0 & (!p1 -> (!p1 U (p2 & !p1))))"),
      make_pattern("universality1", "Universality", "G(p0)"),
      make_pattern("universality2", "Universality", "F(p1) -> (p0 U p1)"),
      make_pattern("universality3", "Universality", "G(p1 -> G(p0))"),
      make_pattern("disjunction1", "Disjunction",
                   "G(!p0) | F(p0 & F(p1)) | G(!p3) | F(p2 & F(p3))"),
      make_pattern("disjunction2", "Disjunction", "F(p2) | F(p0) | F(p1)"),
      make_pattern("disjunction3", "Disjunction",
                   "G(p0 & (!p1 -> (!p1 U (p2 & !p1)))) | G(p3 & (!p4 -> (!p4 U (p5 & !p4))))"),
  };
}

void drop_comments(std::vector<std::string>& comments, std::initializer_list<std::string_view> keys) {
  std::erase_if(comments, [&](const std::string& line) {
    return std::any_of(keys.begin(), keys.end(), [&](std::string_view k) {
      return line.rfind("# " + std::string(k) + ":", 0) == 0;
    });
  });
}

} // namespace

const std::vector<Pattern>& pattern_catalog() {
  static const std::vector<Pattern> catalog = build_catalog();
  return catalog;
}

const Pattern& find_pattern(std::string_view name) {
  for (const auto& p : pattern_catalog())
    if (p.name == name)
      return p;
  throw std::invalid_argument("unknown pattern '" + std::string(name) + "'");
}

std::size_t GenSpec::alphabet_size() const {
  if (props)
    return props;
  // one proposition the pattern does not mention, so that classes such as
  // the negatives of F p0 | F p1 | F p2 are not limited to all-empty traces
  return std::max<std::size_t>(find_pattern(pattern).width + 1, 3);
}

void GenSpec::validate() const {
  const auto& p = find_pattern(pattern);
  if (num_traces < 2)
    throw std::invalid_argument("need at least 2 traces");
  if (max_length < 1)
    throw std::invalid_argument("maximal trace length must be at least 1");
  if (props && props < p.width)
    throw std::invalid_argument("pattern " + p.name + " needs " + std::to_string(p.width) +
                                " propositions");
  if (alphabet_size() > 63)
    throw std::invalid_argument("too many propositions");
  if (noise_rate < Rational(0) || noise_rate > Rational(1))
    throw std::invalid_argument("noise rate must lie in [0, 1]");
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0)
    throw std::invalid_argument("uniform_below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do
    x = rng();
  while (x >= limit);
  return x % n;
}

LabeledSample generate_sample(const GenSpec& spec) {
  spec.validate();
  const Pattern& pattern = find_pattern(spec.pattern);
  const std::size_t props = spec.alphabet_size();
  const Alphabet alphabet = Alphabet::numbered(props);
  const Formula f = parse_formula(pattern.text, alphabet);

  const std::size_t want_pos = spec.num_traces / 2;
  const std::size_t want_neg = spec.num_traces - want_pos;
  std::mt19937_64 rng(spec.seed);
  std::set<Trace> seen;
  std::vector<Example> pos, neg;
  std::size_t attempts = 0;
  while (pos.size() < want_pos || neg.size() < want_neg) {
    if (attempts++ >= spec.max_attempts)
      throw GenerationError("gave up on " + pattern.name + " after " +
                            std::to_string(spec.max_attempts) + " attempts (" +
                            std::to_string(pos.size()) + " positive, " +
                            std::to_string(neg.size()) + " negative)");
    const std::size_t len = 1 + uniform_below(rng, spec.max_length);
    std::vector<Symbol> symbols(len);
    for (auto& s : symbols)
      s = uniform_below(rng, std::uint64_t{1} << props);
    Trace u(std::move(symbols));
    const bool label = satisfies(f, u);
    auto& bucket = label ? pos : neg;
    if (bucket.size() >= (label ? want_pos : want_neg) || !seen.insert(u).second)
      continue;
    bucket.push_back({std::move(u), label});
  }

  std::vector<Example> all = std::move(pos);
  all.insert(all.end(), neg.begin(), neg.end());
  LabeledSample out(alphabet, all);
  out.set_comments({
      "# pattern: " + pattern.name,
      "# formula: " + format_formula(f, alphabet),
      "# traces: " + std::to_string(spec.num_traces),
      "# maxlen: " + std::to_string(spec.max_length),
      "# props: " + std::to_string(props),
      "# seed: " + std::to_string(spec.seed),
      "# noise: 0",
      "# flips: 0",
  });
  return out;
}

std::uint64_t noise_seed(std::uint64_t seed) {
  // splitmix64 step, so the noise stream differs from the trace stream
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

NoiseResult inject_noise(const LabeledSample& s, const Rational& rate, std::uint64_t seed) {
  if (rate < Rational(0) || rate > Rational(1))
    throw std::invalid_argument("noise rate must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  const auto cap = static_cast<std::uint64_t>(floor(rate * static_cast<std::int64_t>(s.size())));
  const std::size_t k = uniform_below(rng, cap + 1);

  // partial Fisher-Yates
  std::vector<std::size_t> idx(s.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    idx[i] = i;
  std::vector<bool> flip(s.size(), false);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + uniform_below(rng, idx.size() - i);
    std::swap(idx[i], idx[j]);
    flip[idx[i]] = true;
  }

  // Traces in a sample are distinct, so a flip never creates a conflicting
  // duplicate.
  std::vector<Example> entries;
  entries.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    entries.push_back({s[i].trace, flip[i] ? !s[i].label : s[i].label});

  NoiseResult out{LabeledSample(s.alphabet(), entries), k};
  auto comments = s.comments();
  drop_comments(comments, {"noise", "noise-seed", "flips"});
  comments.push_back("# noise: " + to_string(rate));
  comments.push_back("# noise-seed: " + std::to_string(seed));
  comments.push_back("# flips: " + std::to_string(k));
  out.sample.set_comments(std::move(comments));
  return out;
}

} // namespace ltlf
