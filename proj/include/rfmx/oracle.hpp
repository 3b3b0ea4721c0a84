#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rfmx/bwtinv.hpp"
#include "rfmx/textcore.hpp"

// Slow, obviously-correct reference implementations used by tests, the
// acceptance suite and `rfmx verify`.
namespace rfmx::oracle {

SuffixArray naive_suffix_array(const Text& text);

/// Recovers the sentinel-terminated text from its BWT by LF-walking from
/// the sentinel row.
std::vector<Symbol> invert_bwt(std::span<const Symbol> bwt, unsigned sigma);

/// Occurrences (overlapping) of `pattern` in `text`; an empty pattern
/// matches at every position including the end.
std::uint64_t naive_count(std::string_view text, std::string_view pattern);
/// 1-based starts, ascending.
std::vector<std::uint64_t> naive_locate(std::string_view text, std::string_view pattern);

std::uint64_t naive_rank(std::span<const Symbol> seq, Symbol a, std::uint64_t i);

/// LCS length by memoized recursion on suffix pairs.
std::uint64_t memo_lcs_length(std::span<const Symbol> x, std::span<const Symbol> y);
/// LCS length with the bit-parallel column recurrence; O(|x| |y| / 64).
std::uint64_t bitparallel_lcs_length(std::span<const Symbol> x, std::span<const Symbol> y);

/// Longest valid chain by trying every choice (none/1/2) per index.
std::uint64_t brute_force_two_choice_lis(const TwoChoiceArray& a);

/// Candidates computed from an explicitly sorted list of merged suffixes.
TwoChoiceArray naive_candidates(const Text& s1, const Text& s2);

/// Whether some length-|p2| subsequence of p1 is order-isomorphic to p2.
bool permutation_embeds(std::span<const unsigned> p1, std::span<const unsigned> p2);
/// Whether the reduction strings of (p1, p2) admit a BWT-invariant common
/// subsequence of |p2| 'A' characters.
bool invariant_a_subsequence_exists(std::span<const unsigned> p1, std::span<const unsigned> p2);

}  // namespace rfmx::oracle
