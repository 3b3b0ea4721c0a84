#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rfmx/succinct.hpp"
#include "rfmx/textcore.hpp"

namespace rfmx {

inline constexpr std::uint64_t kDefaultSampleRate = 32;

/// Inclusive row interval in BWT order; empty when lo > hi.
struct SuffixRange {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;

  bool empty() const { return lo > hi; }
  std::uint64_t size() const { return empty() ? 0 : hi - lo + 1; }
  bool operator==(const SuffixRange& other) const {
    return (empty() && other.empty()) || (lo == other.lo && hi == other.hi);
  }
};

/// Suffix-array sample taken at text positions 1, 1+r, 1+2r, ... plus the
/// sentinel position n+1.
struct SASample {
  std::uint64_t rate = kDefaultSampleRate;
  BitArray marks;                      // over BWT rows; 1 = sampled row
  std::vector<std::uint64_t> to_text;  // sampled-row rank -> suffix start
  std::vector<std::uint64_t> inverse;  // k -> row of text position 1 + k*rate

  /// Whether text position `pos` (a suffix start) is sampled.
  bool is_sampled_position(std::uint64_t pos, std::uint64_t text_length) const {
    return pos == text_length + 1 || (pos - 1) % rate == 0;
  }

  bool operator==(const SASample&) const = default;
};

class FMIndex {
 public:
  FMIndex() = default;

  static FMIndex build(const Text& text, std::uint64_t rate = kDefaultSampleRate);
  static FMIndex build(const Text& text, const SuffixArray& sa,
                       std::uint64_t rate = kDefaultSampleRate);

  /// Text length n (BWT length is n+1).
  std::uint64_t length() const { return bwt_.size() - 1; }
  std::uint64_t rows() const { return bwt_.size(); }
  const Alphabet& alphabet() const { return alphabet_; }
  const WaveletSequence& bwt() const { return bwt_; }
  const CumulativeCounts& counts() const { return counts_; }
  const SASample& sample() const { return sample_; }

  SuffixRange full_range() const { return {1, rows()}; }
  SuffixRange backward_extend(SuffixRange range, Symbol a) const;
  /// Range of rows whose suffixes start with `pattern`.
  SuffixRange find(std::span<const Symbol> pattern) const;
  std::uint64_t count(std::span<const Symbol> pattern) const;
  /// Counts a byte pattern; bytes outside the alphabet give 0.
  std::uint64_t count(std::string_view pattern) const;

  std::uint64_t lf(std::uint64_t row) const;
  /// Suffix start for `row`; the walk takes fewer than `rate` LF steps.
  std::uint64_t locate_row(std::uint64_t row, std::uint64_t* steps = nullptr) const;
  /// Sorted text positions of all rows in `range`.
  std::vector<std::uint64_t> locate(SuffixRange range) const;
  std::vector<std::uint64_t> locate(std::string_view pattern) const;

  /// Symbols of S[i..j], 1 <= i <= j <= n.
  std::vector<Symbol> extract(std::uint64_t i, std::uint64_t j) const;
  std::string extract_string(std::uint64_t i, std::uint64_t j) const;

  /// Serialized FMI1 section body.
  std::vector<std::uint8_t> serialize() const;
  static FMIndex deserialize(std::span<const std::uint8_t> bytes, Alphabet alphabet);

 private:
  Alphabet alphabet_;
  WaveletSequence bwt_;
  CumulativeCounts counts_;
  SASample sample_;
};

/// Encodes a byte pattern; returns false if any byte is outside the alphabet.
bool encode_pattern(const Alphabet& alphabet, std::string_view pattern,
                    std::vector<Symbol>& out);

}  // namespace rfmx
