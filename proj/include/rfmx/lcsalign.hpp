#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfmx/fmindex.hpp"
#include "rfmx/textcore.hpp"

namespace rfmx {

/// Common subsequence certificate: X[x_pos[k]] == Y[y_pos[k]], both position
/// lists strictly increasing, 1-based.
struct Alignment {
  std::vector<std::uint64_t> x_pos;
  std::vector<std::uint64_t> y_pos;

  std::uint64_t size() const { return x_pos.size(); }
  void push(std::uint64_t x, std::uint64_t y) {
    x_pos.push_back(x);
    y_pos.push_back(y);
  }
  bool operator==(const Alignment&) const = default;
};

/// True iff `a` certifies a common subsequence of x and y.
bool is_common_subsequence(std::span<const Symbol> x, std::span<const Symbol> y,
                           const Alignment& a);

inline constexpr std::uint64_t kExactLcsCellLimit = 100'000'000;

/// Quadratic dynamic programming. Throws std::length_error when
/// |x|*|y| exceeds kExactLcsCellLimit.
Alignment exact_lcs(std::span<const Symbol> x, std::span<const Symbol> y);

/// Indel distance if it is at most `max_d`, computed by the greedy
/// furthest-reaching-diagonal method; -1 otherwise.
std::int64_t indel_distance_bounded(std::span<const Symbol> x, std::span<const Symbol> y,
                                    std::uint64_t max_d);

/// Greedy O(ND) LCS (linear space, middle-snake recursion). Falls back to
/// common_run when the edit script needs more than `max_diag` diagonals.
Alignment greedy_lcs(std::span<const Symbol> x, std::span<const Symbol> y,
                     std::uint64_t max_diag, bool* fell_back = nullptr);

/// Aligns the first occurrences of the symbol maximizing
/// min(count_x(a), count_y(a)); ties go to the smaller symbol.
Alignment common_run(std::span<const Symbol> x, std::span<const Symbol> y);

struct PartitionSpec {
  std::uint64_t max_block = 1024;
  std::uint64_t max_depth = 32;
  std::uint64_t max_diag = 50000;
  std::uint64_t hard_gap = 50000;
};

struct PartitionStats {
  std::uint64_t leaves = 0;
  std::uint64_t greedy_leaves = 0;
  std::uint64_t predicted_hard = 0;
  std::uint64_t fallbacks = 0;
};

/// Common subsequence of the two (sentinel-terminated) BWTs built by
/// partitioning rows on suffix prefixes and aligning each partition.
Alignment partitioned_bwt_lcs(const FMIndex& ix1, const FMIndex& ix2,
                              const PartitionSpec& spec = {},
                              PartitionStats* stats = nullptr);

/// (n1+1) + (n2+1) - 2*|alignment| over the sentinel-terminated BWTs.
std::uint64_t bw_distance(std::uint64_t n1, std::uint64_t n2, const Alignment& a);

}  // namespace rfmx
