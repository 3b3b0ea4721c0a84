#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rfmx {

/// Uniform random string over ACGT.
std::string random_dna(std::uint64_t n, std::uint64_t seed);

/// Per-position mutation probabilities.
struct MutationRates {
  double substitution = 0.0;
  double insertion = 0.0;
  double deletion = 0.0;
};

/// Applies independent substitutions (always to a different base),
/// insertions and deletions to a DNA string.
std::string mutate_dna(const std::string& s, const MutationRates& rates, std::uint64_t seed);

/// Mix of substrings of `text` and uniform random DNA strings, with lengths
/// uniform in [min_len, max_len].
std::vector<std::string> random_patterns(const std::string& text, std::uint64_t count,
                                         std::uint64_t min_len, std::uint64_t max_len,
                                         std::uint64_t seed, double substring_share = 0.75);

}  // namespace rfmx
