#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rfmx/fmindex.hpp"
#include "rfmx/lcsalign.hpp"
#include "rfmx/relcount.hpp"
#include "rfmx/succinct.hpp"
#include "rfmx/textcore.hpp"

namespace rfmx {

// Character positions here are 1-based over the sentinel-terminated texts;
// position n+1 is the sentinel. The BWT row holding character i is the row
// of suffix i+1 (suffix 1 for the sentinel).

/// For each S1 character i in [1, n1+1], up to two S2 character positions
/// taken from S2 suffixes next to suffix i+1 of S1 in the merged suffix
/// order of S1#S2. 0 = undefined.
///   values[i-1][0]: the entry right after S1's suffix, if it is an S2 suffix
///   values[i-1][1]: the largest S2 suffix before it
/// A candidate is kept only if the characters agree.
struct TwoChoiceArray {
  std::vector<std::array<std::uint64_t, 2>> values;

  std::uint64_t size() const { return values.size(); }
  std::uint64_t at(std::uint64_t i, unsigned b) const { return values[i - 1][b - 1]; }
};

TwoChoiceArray build_candidates(const Text& s1, const Text& s2);

/// Chosen (index, choice) pairs with strictly increasing indexes and values.
struct ChoiceSelection {
  std::vector<std::uint64_t> index;
  std::vector<std::uint8_t> choice;  // 1 or 2

  std::uint64_t size() const { return index.size(); }
};

/// Longest chain A[i_1][b_1] < ... < A[i_l][b_l] with i_1 < ... < i_l,
/// O(n log n). Values of one index are offered larger-first so an index is
/// never used twice.
ChoiceSelection two_choice_lis(const TwoChoiceArray& a);

/// Common subsequence G of two texts: S1[i_pos[k]] == S2[j_pos[k]].
struct InvariantAlignment {
  std::vector<std::uint64_t> i_pos;
  std::vector<std::uint64_t> j_pos;
  std::vector<std::uint8_t> choice;  // candidate slot per pair, when known

  std::uint64_t size() const { return i_pos.size(); }
};

InvariantAlignment invariant_subsequence(const Text& s1, const Text& s2);

/// Whether `g` keeps the same relative row order in both BWTs. Throws
/// std::invalid_argument if `g` is not a common subsequence of the texts.
bool check_bwt_invariant(const Text& s1, const Text& s2, const InvariantAlignment& g);
bool check_bwt_invariant(const Text& s1, const Text& s2, const SuffixArray& sa1,
                         const SuffixArray& sa2, const InvariantAlignment& g);

/// The BWT alignment G' induced by an invariant `g`: paired rows of G's
/// characters, sorted. Throws std::invalid_argument if `g` is not invariant.
Alignment induced_bwt_alignment(const SuffixArray& sa1, const SuffixArray& sa2,
                                const InvariantAlignment& g);

/// Maps a target row through C' to a target character position using the
/// reference sample, or nullopt when the row is outside C' or its mirrored
/// reference row is unsampled:
///   M2.select0(M1.rank0(A[R.rank1(B1.select0(B2.rank0(row)))]))
/// `sample_at(k)` returns the character position of the k-th sampled row.
template <class SampleAt>
std::optional<std::uint64_t> map_through_invariant(const BitArray& b1, const BitArray& b2,
                                                   const BitArray& r, SampleAt&& sample_at,
                                                   const BitArray& m1, const BitArray& m2,
                                                   std::uint64_t row) {
  if (b2.get(row)) return std::nullopt;
  const std::uint64_t mirror = b1.select0(b2.rank0(row));
  if (!r.get(mirror)) return std::nullopt;
  const std::uint64_t pos1 = sample_at(r.rank1(mirror));
  return m2.select0(m1.rank0(pos1));
}

/// Reuses the reference SA sample for a target through an invariant
/// alignment. Target rows whose LF-walk would not reach a reusable sample
/// within `rate` steps get an explicit escape sample.
class RelativeSample {
 public:
  RelativeSample() = default;

  static RelativeSample build(std::shared_ptr<const FMIndex> ref, const SuffixArray& target_sa,
                              const InvariantAlignment& g);

  const BitArray& m1() const { return m1_; }
  const BitArray& m2() const { return m2_; }
  const BitArray& escape_marks() const { return escape_marks_; }
  std::span<const std::uint64_t> escape_values() const { return escape_values_; }
  std::uint64_t rate() const { return rate_; }

  std::vector<std::uint8_t> serialize(std::uint64_t reference_digest) const;
  static RelativeSample deserialize(std::span<const std::uint8_t> bytes,
                                    std::shared_ptr<const FMIndex> ref,
                                    std::uint64_t reference_digest);

 private:
  std::shared_ptr<const FMIndex> ref_;
  std::uint64_t rate_ = kDefaultSampleRate;
  BitArray m1_, m2_;
  BitArray escape_marks_;
  std::vector<std::uint64_t> escape_values_;

  friend std::uint64_t rel_locate_row(const RelativeIndex&, const RelativeSample&,
                                      std::uint64_t, std::uint64_t*);
};

/// Suffix start in the target for target row `row`.
std::uint64_t rel_locate_row(const RelativeIndex& ri, const RelativeSample& rs,
                             std::uint64_t row, std::uint64_t* steps = nullptr);
/// Sorted target positions of all rows in `range`.
std::vector<std::uint64_t> rel_locate(const RelativeIndex& ri, const RelativeSample& rs,
                                      SuffixRange range);

/// Strings A B^{p1[1]} ... A B^{p1[n]} and A C^{p2[1]} ... A C^{p2[m]}.
/// Throws std::invalid_argument for invalid permutations or m > n.
std::pair<std::string, std::string> reduction_strings(std::span<const unsigned> p1,
                                                      std::span<const unsigned> p2);

}  // namespace rfmx
