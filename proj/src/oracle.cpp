#include "rfmx/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace rfmx::oracle {

namespace {

// Calls `visit` with every increasing k-subset of [0, n).
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() == k) return visit(pick);
    for (std::size_t v = from; v + (k - pick.size()) <= n; ++v) {
      pick.push_back(v);
      if (rec(v + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  rec(0);
}

}  // namespace

SuffixArray naive_suffix_array(const Text& text) {
  const auto s = text.symbols();
  std::vector<std::uint64_t> order(s.size());
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    return std::lexicographical_compare(s.begin() + (a - 1), s.end(), s.begin() + (b - 1),
                                        s.end());
  });
  return SuffixArray(std::move(order));
}

std::vector<Symbol> invert_bwt(std::span<const Symbol> bwt, unsigned sigma) {
  const std::size_t len = bwt.size();
  std::vector<std::uint64_t> before(sigma + 1, 0);
  for (auto c : bwt) ++before[c + 1];
  for (unsigned a = 1; a <= sigma; ++a) before[a] += before[a - 1];
  std::vector<std::uint64_t> occ(len);  // rank of bwt[r] among equal symbols up to r
  std::vector<std::uint64_t> seen(sigma, 0);
  for (std::size_t r = 0; r < len; ++r) occ[r] = ++seen[bwt[r]];

  std::vector<Symbol> text(len, kSentinel);
  std::uint64_t row = 1;
  for (std::size_t k = len - 1; k-- > 0;) {
    const Symbol c = bwt[row - 1];
    text[k] = c;
    row = before[c] + occ[row - 1];
  }
  return text;
}

std::uint64_t naive_count(std::string_view text, std::string_view pattern) {
  return naive_locate(text, pattern).size();
}

std::vector<std::uint64_t> naive_locate(std::string_view text, std::string_view pattern) {
  std::vector<std::uint64_t> out;
  if (pattern.size() > text.size()) return out;
  for (std::size_t p = 0; p + pattern.size() <= text.size(); ++p) {
    if (text.compare(p, pattern.size(), pattern) == 0) out.push_back(p + 1);
  }
  if (pattern.empty()) out.push_back(text.size() + 1);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t naive_rank(std::span<const Symbol> seq, Symbol a, std::uint64_t i) {
  return static_cast<std::uint64_t>(std::count(seq.begin(), seq.begin() + i, a));
}

std::uint64_t memo_lcs_length(std::span<const Symbol> x, std::span<const Symbol> y) {
  const std::size_t w = y.size() + 1;
  std::vector<std::int32_t> memo((x.size() + 1) * w, -1);
  std::function<std::int32_t(std::size_t, std::size_t)> lcs = [&](std::size_t i, std::size_t j) {
    if (i == x.size() || j == y.size()) return 0;
    auto& m = memo[i * w + j];
    if (m >= 0) return m;
    if (x[i] == y[j]) {
      m = 1 + lcs(i + 1, j + 1);
    } else {
      m = std::max(lcs(i + 1, j), lcs(i, j + 1));
    }
    return m;
  };
  return static_cast<std::uint64_t>(lcs(0, 0));
}

std::uint64_t bitparallel_lcs_length(std::span<const Symbol> x, std::span<const Symbol> y) {
  if (x.empty() || y.empty()) return 0;
  const std::size_t words = (x.size() + 63) / 64;
  unsigned sigma = 0;
  for (auto c : x) sigma = std::max<unsigned>(sigma, c + 1u);
  for (auto c : y) sigma = std::max<unsigned>(sigma, c + 1u);
  std::vector<std::uint64_t> match(std::size_t{sigma} * words, 0);
  for (std::size_t i = 0; i < x.size(); ++i) match[x[i] * words + i / 64] |= 1ULL << (i % 64);

  std::vector<std::uint64_t> v(words, ~0ULL);
  for (auto c : y) {
    const std::uint64_t* m = &match[c * words];
    std::uint64_t carry = 0;
    for (std::size_t k = 0; k < words; ++k) {
      const std::uint64_t u = v[k] & m[k];
      const std::uint64_t sum = v[k] + u;
      const std::uint64_t sum2 = sum + carry;
      carry = (sum < v[k]) | (sum2 < sum);
      v[k] = sum2 | (v[k] & ~m[k]);
    }
  }
  std::uint64_t zeros = 0;
  for (std::size_t k = 0; k < words; ++k) {
    std::uint64_t word = ~v[k];
    if (k + 1 == words && x.size() % 64) word &= (1ULL << (x.size() % 64)) - 1;
    zeros += static_cast<std::uint64_t>(std::popcount(word));
  }
  return zeros;
}

std::uint64_t brute_force_two_choice_lis(const TwoChoiceArray& a) {
  std::uint64_t best = 0;
  std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)> rec =
      [&](std::uint64_t i, std::uint64_t last, std::uint64_t len) {
        if (i > a.size()) {
          best = std::max(best, len);
          return;
        }
        rec(i + 1, last, len);
        for (unsigned b = 1; b <= 2; ++b) {
          const auto v = a.at(i, b);
          if (v != 0 && v > last) rec(i + 1, v, len + 1);
        }
      };
  rec(1, 0, 0);
  return best;
}

TwoChoiceArray naive_candidates(const Text& s1, const Text& s2) {
  const std::uint64_t n1 = s1.length(), n2 = s2.length();
  std::vector<std::uint32_t> merged;
  for (std::uint64_t p = 1; p <= n1; ++p) merged.push_back(s1.at(p) + 1u);
  merged.push_back(1);
  for (std::uint64_t q = 1; q <= n2; ++q) merged.push_back(s2.at(q) + 1u);
  merged.push_back(0);
  std::vector<std::uint64_t> order(merged.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    return std::lexicographical_compare(merged.begin() + a, merged.end(), merged.begin() + b,
                                        merged.end());
  });

  TwoChoiceArray out;
  out.values.assign(n1 + 1, {0, 0});
  for (std::size_t e = 0; e < order.size(); ++e) {
    if (order[e] > n1) continue;
    const std::uint64_t start1 = order[e] + 1;
    const std::uint64_t i = start1 == 1 ? n1 + 1 : start1 - 1;
    if (e + 1 < order.size() && order[e + 1] > n1) {
      const std::uint64_t start2 = order[e + 1] - n1;
      const std::uint64_t j = start2 == 1 ? n2 + 1 : start2 - 1;
      if (s1.at(i) == s2.at(j)) out.values[i - 1][0] = j;
    }
    for (std::size_t f = e; f-- > 0;) {
      if (order[f] <= n1) continue;
      const std::uint64_t start2 = order[f] - n1;
      const std::uint64_t j = start2 == 1 ? n2 + 1 : start2 - 1;
      if (s1.at(i) == s2.at(j)) out.values[i - 1][1] = j;
      break;
    }
  }
  return out;
}

bool permutation_embeds(std::span<const unsigned> p1, std::span<const unsigned> p2) {
  bool found = false;
  for_each_subset(p1.size(), p2.size(), [&](const std::vector<std::size_t>& pick) {
    for (std::size_t a = 0; a < pick.size(); ++a) {
      for (std::size_t b = 0; b < pick.size(); ++b) {
        if ((p1[pick[a]] < p1[pick[b]]) != (p2[a] < p2[b])) return false;
      }
    }
    found = true;
    return true;
  });
  return found;
}

bool invariant_a_subsequence_exists(std::span<const unsigned> p1,
                                    std::span<const unsigned> p2) {
  const auto [str1, str2] = reduction_strings(p1, p2);
  const Alphabet alpha = Alphabet::from_bytes("ABC");
  const Text s1 = load_text(str1, InputFormat::plain, alpha);
  const Text s2 = load_text(str2, InputFormat::plain, alpha);
  const SuffixArray sa1 = naive_suffix_array(s1);
  const SuffixArray sa2 = naive_suffix_array(s2);
  std::vector<std::uint64_t> a1, a2;
  for (std::uint64_t p = 1; p <= s1.length(); ++p) {
    if (str1[p - 1] == 'A') a1.push_back(p);
  }
  for (std::uint64_t p = 1; p <= s2.length(); ++p) {
    if (str2[p - 1] == 'A') a2.push_back(p);
  }
  bool found = false;
  for_each_subset(a1.size(), a2.size(), [&](const std::vector<std::size_t>& pick) {
    InvariantAlignment g;
    for (std::size_t k = 0; k < pick.size(); ++k) {
      g.i_pos.push_back(a1[pick[k]]);
      g.j_pos.push_back(a2[k]);
    }
    found = check_bwt_invariant(s1, s2, sa1, sa2, g);
    return found;
  });
  return found;
}

}  // namespace rfmx::oracle
