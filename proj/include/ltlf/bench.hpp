#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltlf/sample.hpp"

namespace ltlf {

struct Pattern {
  std::string name;  // e.g. "absence2"
  std::string group; // Absence, Existence, Universality, Disjunction
  std::string text;  // over p0..p5
  std::size_t width; // propositions used (highest index + 1)
};

// The twelve named patterns, grouped, in catalog order.
const std::vector<Pattern>& pattern_catalog();

// Throws std::invalid_argument for an unknown name.
const Pattern& find_pattern(std::string_view name);

class GenerationError : public std::runtime_error {
public:
  explicit GenerationError(const std::string& message) : std::runtime_error(message) {}
};

struct GenSpec {
  std::string pattern; // catalog name
  std::size_t num_traces = 50;
  std::size_t max_length = 10;
  std::size_t props = 0; // 0: max(pattern width + 1, 3)
  std::uint64_t seed = 0;
  Rational noise_rate = 0;
  std::size_t max_attempts = 1'000'000;

  std::size_t alphabet_size() const;
  // Throws std::invalid_argument.
  void validate() const;
};

// Uniform integer in [0, n) that does not depend on the standard library's
// distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

// Distinct random traces labeled by the pattern, half of them positive
// (the odd one out is negative). Symbols are uniform over all proposition
// subsets, lengths uniform in [1, max_length]. Noise is not applied here.
// Throws GenerationError when the attempt budget runs out.
LabeledSample generate_sample(const GenSpec& spec);

struct NoiseResult {
  LabeledSample sample;
  std::size_t flips = 0;
};

// Flips the labels of k distinct entries, k uniform in {0..floor(rate*|S|)}.
// Records rate, seed and k as header comments.
NoiseResult inject_noise(const LabeledSample& s, const Rational& rate, std::uint64_t seed);

// Seed of the noise stream derived from a generation seed.
std::uint64_t noise_seed(std::uint64_t seed);

} // namespace ltlf
