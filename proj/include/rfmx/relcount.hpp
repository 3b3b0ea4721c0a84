#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "rfmx/fmindex.hpp"
#include "rfmx/lcsalign.hpp"
#include "rfmx/succinct.hpp"

namespace rfmx {

/// Target cumulative counts stored as differences against the reference.
/// Only symbols whose frequencies differ are listed; for each, `s2_after`
/// holds the target count of symbols <= that symbol.
struct CountDelta {
  std::vector<Symbol> symbols;
  std::vector<std::uint64_t> s2_after;

  static CountDelta build(const CumulativeCounts& ref, const CumulativeCounts& target);
  /// Target count of symbols < a.
  std::uint64_t before(Symbol a, const CumulativeCounts& ref) const;

  bool empty() const { return symbols.empty(); }
  bool operator==(const CountDelta&) const = default;
};

/// Counting-capable index for a target string, stored relative to a
/// reference FM-index through a common subsequence C of the two BWTs.
///   B1, B2: 0 marks rows in C (reference / target BWT)
///   D1, D2: reference / target BWT symbols outside C
class RelativeIndex {
 public:
  RelativeIndex() = default;

  /// Validates `align` against both BWTs; throws std::invalid_argument
  /// ("not a common subsequence") if it does not certify one.
  static RelativeIndex build(std::shared_ptr<const FMIndex> ref,
                             std::span<const Symbol> target_bwt, const Alignment& align);

  const FMIndex& reference() const { return *ref_; }
  std::shared_ptr<const FMIndex> reference_ptr() const { return ref_; }
  std::uint64_t length() const { return n2_; }
  std::uint64_t rows() const { return n2_ + 1; }
  std::uint64_t common_length() const { return b2_.zeros(); }

  const BitArray& b1() const { return b1_; }
  const BitArray& b2() const { return b2_; }
  const WaveletSequence& d1() const { return d1_; }
  const WaveletSequence& d2() const { return d2_; }
  const CountDelta& delta() const { return delta_; }

  /// Reference row paired with target row i in C, as B1.select0(B2.rank0(i)).
  std::uint64_t mirror_row(std::uint64_t i) const;

  /// rank_a over the first i target BWT symbols via the three-term formula.
  std::uint64_t rank(Symbol a, std::uint64_t i) const;
  /// Target BWT symbol at row i.
  Symbol access(std::uint64_t i) const;
  /// Number of target symbols (sentinel included) smaller than a.
  std::uint64_t cumulative(Symbol a) const { return delta_.before(a, ref_->counts()); }

  SuffixRange full_range() const { return {1, rows()}; }
  SuffixRange backward_extend(SuffixRange range, Symbol a) const;
  SuffixRange find(std::span<const Symbol> pattern) const;
  std::uint64_t count(std::span<const Symbol> pattern) const { return find(pattern).size(); }
  std::uint64_t count(std::string_view pattern) const;
  std::uint64_t lf(std::uint64_t row) const;

  /// Bits attributable to the difference structures: D payloads, the
  /// count delta, and the set bits of B1/B2.
  std::uint64_t difference_bits() const;

  std::vector<std::uint8_t> serialize(std::uint64_t reference_digest) const;
  /// Throws FormatError("reference mismatch") if the stored reference digest
  /// differs from `reference_digest`.
  static RelativeIndex deserialize(std::span<const std::uint8_t> bytes,
                                   std::shared_ptr<const FMIndex> ref,
                                   std::uint64_t reference_digest);

 private:
  std::shared_ptr<const FMIndex> ref_;
  std::uint64_t n2_ = 0;
  BitArray b1_, b2_;
  WaveletSequence d1_, d2_;
  CountDelta delta_;
};

}  // namespace rfmx
