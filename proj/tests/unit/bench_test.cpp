#include <gtest/gtest.h>

#include "ltlf/bench.hpp"
#include "oracles.hpp"

using namespace ltlf;

TEST(Catalog, TwelvePatternsParse) {
  const auto& c = pattern_catalog();
  ASSERT_EQ(c.size(), 12u);
  std::map<std::string, int> groups;
  for (const auto& p : c) {
    ++groups[p.group];
    EXPECT_NO_THROW(parse_formula(p.text, Alphabet::numbered(6))) << p.name;
  }
  EXPECT_EQ(groups.size(), 4u);
  for (const auto& [g, n] : groups)
    EXPECT_EQ(n, 3) << g;
  EXPECT_EQ(find_pattern("absence1").width, 1u);
  EXPECT_EQ(find_pattern("disjunction3").width, 6u);
  EXPECT_THROW(find_pattern("nope"), std::invalid_argument);
}

TEST(Generate, PatternConsistent) {
  for (const auto& p : pattern_catalog()) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      GenSpec spec{.pattern = p.name, .num_traces = 30, .max_length = 8, .seed = seed};
      const auto s = generate_sample(spec);
      const auto f = parse_formula(p.text, s.alphabet());
      EXPECT_EQ(oracle::loss(s, f), Rational(0)) << p.name;
      EXPECT_EQ(s.size(), 30u);
      EXPECT_EQ(s.positives(), 15u);
      for (const auto& e : s.entries())
        EXPECT_LE(e.trace.length(), 8u);
    }
  }
}

TEST(Generate, AbsenceAndExistence) {
  const auto s = generate_sample({.pattern = "absence1", .num_traces = 20, .max_length = 5});
  for (const auto& e : s.entries()) {
    bool any = false;
    for (std::size_t i = 0; i < e.trace.length(); ++i)
      any |= e.trace.holds(i, 0);
    EXPECT_EQ(e.label, !any);
  }
  const auto t = generate_sample({.pattern = "existence1", .num_traces = 20, .max_length = 5});
  for (const auto& e : t.entries()) {
    bool any = false;
    for (std::size_t i = 0; i < e.trace.length(); ++i)
      any |= e.trace.holds(i, 0);
    EXPECT_EQ(e.label, any);
  }
}

TEST(Generate, DeterministicAndRecorded) {
  GenSpec spec{.pattern = "universality2", .num_traces = 40, .max_length = 10, .seed = 7};
  const auto a = sample_to_text(generate_sample(spec));
  EXPECT_EQ(a, sample_to_text(generate_sample(spec)));
  spec.seed = 8;
  EXPECT_NE(a, sample_to_text(generate_sample(spec)));
  const auto s = parse_sample_text(a);
  EXPECT_EQ(s.comment_value("pattern"), "universality2");
  EXPECT_EQ(s.comment_value("seed"), "7");
  EXPECT_EQ(s.comment_value("flips"), "0");
  EXPECT_EQ(s.alphabet().size(), 3u);
}

TEST(Generate, Errors) {
  EXPECT_THROW(generate_sample({.pattern = "absence1", .num_traces = 1}), std::invalid_argument);
  EXPECT_THROW(generate_sample({.pattern = "absence1", .max_length = 0}), std::invalid_argument);
  EXPECT_THROW(generate_sample({.pattern = "disjunction3", .props = 3}), std::invalid_argument);
  // only one trace of length 1 over one proposition satisfies G p0
  EXPECT_THROW(generate_sample({.pattern = "universality1",
                                .num_traces = 6,
                                .max_length = 1,
                                .props = 1,
                                .max_attempts = 5000}),
               GenerationError);
}

TEST(Noise, FlipCountAndLoss) {
  const auto base = generate_sample({.pattern = "absence1", .num_traces = 100, .seed = 3});
  const auto f = parse_formula("G(!p0)", base.alphabet());
  std::set<std::size_t> seen;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto r = inject_noise(base, Rational(5, 100), seed);
    EXPECT_LE(r.flips, 5u);
    seen.insert(r.flips);
    EXPECT_EQ(r.sample.size(), base.size());
    EXPECT_EQ(oracle::loss(r.sample, f),
              Rational(static_cast<std::int64_t>(r.flips), static_cast<std::int64_t>(r.sample.size())));
    EXPECT_EQ(r.sample.comment_value("flips"), std::to_string(r.flips));
    EXPECT_EQ(sample_to_text(r.sample), sample_to_text(inject_noise(base, Rational(5, 100), seed).sample));
  }
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Noise, ZeroRateIsIdentity) {
  const auto base = generate_sample({.pattern = "existence2", .num_traces = 30, .seed = 1});
  const auto r = inject_noise(base, Rational(0), 99);
  EXPECT_EQ(r.flips, 0u);
  EXPECT_EQ(r.sample, base);
  EXPECT_THROW(inject_noise(base, Rational(3, 2), 0), std::invalid_argument);
}

TEST(Noise, UniformBelowRange) {
  std::mt19937_64 rng(1);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i)
    ++hist[uniform_below(rng, 7)];
  for (int h : hist)
    EXPECT_GT(h, 800);
  EXPECT_THROW(uniform_below(rng, 0), std::invalid_argument);
}
