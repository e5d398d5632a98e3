#include "ltlf/sample.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "ltlf/semantics.hpp"

namespace ltlf {

LabeledSample::LabeledSample(Alphabet alphabet, const std::vector<Example>& entries)
    : alphabet_(std::move(alphabet)) {
  if (alphabet_.size() > kMaxPropositions)
    throw SampleError("alphabet larger than " + std::to_string(kMaxPropositions) +
                      " propositions");
  const Symbol allowed =
      alphabet_.size() == kMaxPropositions ? ~Symbol{0} : (Symbol{1} << alphabet_.size()) - 1;
  std::unordered_map<Trace, bool, TraceHash> seen;
  for (const auto& e : entries) {
    for (Symbol s : e.trace.symbols())
      if (s & ~allowed)
        throw SampleError("trace mentions a proposition outside the alphabet");
    auto [it, inserted] = seen.emplace(e.trace, e.label);
    if (!inserted) {
      if (it->second != e.label)
        throw SampleError("trace appears with both labels");
      continue;
    }
    entries_.push_back(e);
    positives_ += e.label ? 1 : 0;
  }
  if (entries_.empty())
    throw SampleError("sample is empty");
}

std::optional<std::string> LabeledSample::comment_value(std::string_view key) const {
  for (const auto& line : comments_) {
    std::string_view rest(line);
    rest.remove_prefix(1);
    while (!rest.empty() && rest.front() == ' ')
      rest.remove_prefix(1);
    if (rest.size() > key.size() && rest.substr(0, key.size()) == key &&
        rest[key.size()] == ':') {
      rest.remove_prefix(key.size() + 1);
      while (!rest.empty() && rest.front() == ' ')
        rest.remove_prefix(1);
      return std::string(rest);
    }
  }
  return std::nullopt;
}

LabeledSample LabeledSample::subset(const std::vector<std::size_t>& indices) const {
  LabeledSample out;
  out.alphabet_ = alphabet_;
  out.comments_ = comments_;
  out.entries_.reserve(indices.size());
  for (auto i : indices) {
    out.entries_.push_back(entries_.at(i));
    out.positives_ += entries_[i].label ? 1 : 0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// I/O

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail_at(std::size_t line, const std::string& message) {
  throw SampleError("line " + std::to_string(line) + ": " + message);
}

std::vector<Symbol> parse_row(std::string_view row, std::size_t line, std::size_t& width) {
  std::vector<Symbol> symbols;
  std::size_t start = 0;
  while (true) {
    const auto end = row.find(';', start);
    const auto symbol_text = trim(row.substr(start, end == std::string_view::npos ? end : end - start));
    if (symbol_text.empty())
      fail_at(line, "empty symbol");
    Symbol symbol = 0;
    std::size_t bits = 0;
    std::size_t pos = 0;
    while (pos <= symbol_text.size()) {
      const auto comma = symbol_text.find(',', pos);
      const auto bit = trim(symbol_text.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
      if (bit != "0" && bit != "1")
        fail_at(line, "expected 0 or 1, got '" + std::string(bit) + "'");
      if (bits >= kMaxPropositions)
        fail_at(line, "symbol wider than " + std::to_string(kMaxPropositions));
      if (bit == "1")
        symbol |= Symbol{1} << bits;
      ++bits;
      if (comma == std::string_view::npos)
        break;
      pos = comma + 1;
    }
    if (width == 0)
      width = bits;
    else if (bits != width)
      fail_at(line, "symbol width " + std::to_string(bits) + " differs from " +
                        std::to_string(width));
    symbols.push_back(symbol);
    if (end == std::string_view::npos)
      break;
    start = end + 1;
  }
  return symbols;
}

} // namespace

LabeledSample parse_sample(std::istream& in, std::vector<std::string>* warnings) {
  std::vector<std::string> comments;
  std::vector<std::string> declared;
  std::vector<std::pair<Example, std::size_t>> rows;
  std::size_t width = 0;
  int section = 0;
  bool seen_content = false;
  std::size_t pending_blank = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (section >= 2)
      continue;
    if (line.empty()) {
      if (seen_content && pending_blank == 0)
        pending_blank = line_no;
      continue;
    }
    if (line.front() == '#') {
      if (!seen_content)
        comments.emplace_back(line);
      continue;
    }
    if (pending_blank != 0 && line != "---")
      fail_at(pending_blank, "empty trace");
    pending_blank = 0;
    if (line == "---") {
      ++section;
      seen_content = true;
      if (section == 2 && warnings)
        warnings->push_back("line " + std::to_string(line_no) +
                            ": ignoring trailing sections after second '---'");
      continue;
    }
    if (line.rfind("alphabet:", 0) == 0) {
      if (seen_content)
        fail_at(line_no, "alphabet declaration must precede the traces");
      auto names = line.substr(9);
      std::size_t pos = 0;
      while (pos <= names.size()) {
        const auto comma = names.find(',', pos);
        const auto name = trim(names.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
        if (name.empty())
          fail_at(line_no, "empty proposition name");
        declared.emplace_back(name);
        if (comma == std::string_view::npos)
          break;
        pos = comma + 1;
      }
      width = declared.size();
      seen_content = true;
      continue;
    }
    seen_content = true;
    rows.push_back({Example{Trace(parse_row(line, line_no, width)), section == 0}, line_no});
  }
  if (rows.empty())
    throw SampleError("sample contains no traces");

  Alphabet alphabet;
  try {
    alphabet = declared.empty() ? Alphabet::numbered(width) : Alphabet(declared);
  } catch (const std::invalid_argument& e) {
    throw SampleError(e.what());
  }

  std::unordered_map<Trace, bool, TraceHash> labels;
  std::vector<Example> entries;
  entries.reserve(rows.size());
  for (auto& [example, row_line] : rows) {
    auto [it, inserted] = labels.emplace(example.trace, example.label);
    if (!inserted && it->second != example.label)
      fail_at(row_line, "trace appears with both labels");
    entries.push_back(std::move(example));
  }
  LabeledSample sample(std::move(alphabet), entries);
  sample.set_comments(std::move(comments));
  return sample;
}

LabeledSample parse_sample_text(std::string_view text, std::vector<std::string>* warnings) {
  std::istringstream in{std::string(text)};
  return parse_sample(in, warnings);
}

LabeledSample load_sample(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in)
    throw SampleError("cannot open sample file '" + path + "'");
  return parse_sample(in, warnings);
}

void write_sample(std::ostream& out, const LabeledSample& sample) {
  for (const auto& c : sample.comments())
    out << c << '\n';
  out << "alphabet: ";
  for (std::size_t i = 0; i < sample.alphabet().size(); ++i)
    out << (i ? "," : "") << sample.alphabet().name(static_cast<std::uint32_t>(i));
  out << '\n';
  const std::size_t width = sample.alphabet().size();
  auto write_row = [&](const Trace& t) {
    for (std::size_t i = 0; i < t.length(); ++i) {
      if (i)
        out << ';';
      for (std::size_t k = 0; k < width; ++k)
        out << (k ? "," : "") << ((t[i] >> k) & 1U);
    }
    out << '\n';
  };
  for (const auto& e : sample.entries())
    if (e.label)
      write_row(e.trace);
  out << "---\n";
  for (const auto& e : sample.entries())
    if (!e.label)
      write_row(e.trace);
}

std::string sample_to_text(const LabeledSample& sample) {
  std::ostringstream out;
  write_sample(out, sample);
  return out.str();
}

void save_sample(const std::string& path, const LabeledSample& sample) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw SampleError("cannot write sample file '" + path + "'");
  write_sample(out, sample);
}

// ---------------------------------------------------------------------------
// Weights and losses

WeightFn::WeightFn(std::vector<Rational> weights) : weights_(std::move(weights)) {
  Rational total = 0;
  for (const auto& w : weights_) {
    if (w <= 0)
      throw std::invalid_argument("weights must be positive");
    total += w;
  }
  if (total != Rational(1))
    throw std::invalid_argument("weights sum to " + to_string(total) + ", expected 1");
}

WeightFn WeightFn::normalized(std::vector<Rational> weights) {
  Rational total = 0;
  for (const auto& w : weights)
    total += w;
  if (total <= 0)
    throw std::invalid_argument("weights must be positive");
  for (auto& w : weights)
    w /= total;
  return WeightFn(std::move(weights));
}

WeightFn omega_uniform(const LabeledSample& s) {
  return WeightFn(std::vector<Rational>(s.size(), Rational(1, static_cast<std::int64_t>(s.size()))));
}

WeightFn omega_rebalanced(const LabeledSample& s) {
  if (!s.has_both_classes())
    throw std::invalid_argument("rebalanced weights need positive and negative traces");
  const Rational pos(1, 2 * static_cast<std::int64_t>(s.positives()));
  const Rational neg(1, 2 * static_cast<std::int64_t>(s.negatives()));
  std::vector<Rational> w;
  w.reserve(s.size());
  for (const auto& e : s.entries())
    w.push_back(e.label ? pos : neg);
  return WeightFn(std::move(w));
}

Rational loss(const LabeledSample& s, const Formula& f) {
  std::int64_t wrong = 0;
  for (const auto& e : s.entries())
    wrong += satisfies(f, e.trace) != e.label ? 1 : 0;
  return Rational(wrong, static_cast<std::int64_t>(s.size()));
}

Rational weighted_loss(const LabeledSample& s, const Formula& f, const WeightFn& omega) {
  if (omega.size() != s.size())
    throw std::invalid_argument("weight function covers " + std::to_string(omega.size()) +
                                " traces, sample has " + std::to_string(s.size()));
  Rational total = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (satisfies(f, s[i].trace) != s[i].label)
      total += omega[i];
  return total;
}

LabeledSample invert_labels(const LabeledSample& s) {
  std::vector<Example> flipped;
  flipped.reserve(s.size());
  for (const auto& e : s.entries())
    flipped.push_back({e.trace, !e.label});
  LabeledSample out(s.alphabet(), flipped);
  out.set_comments(s.comments());
  return out;
}

Rational positive_fraction(const LabeledSample& s) {
  return Rational(static_cast<std::int64_t>(s.positives()), static_cast<std::int64_t>(s.size()));
}

Rational negative_fraction(const LabeledSample& s) {
  return Rational(static_cast<std::int64_t>(s.negatives()), static_cast<std::int64_t>(s.size()));
}

} // namespace ltlf
