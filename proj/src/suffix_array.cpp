#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rfmx/textcore.hpp"

namespace rfmx {

namespace {

constexpr std::int64_t kEmpty = -1;

// Induced sorting. `lms` lists LMS positions; they are dropped into bucket
// tails last-to-first so a sorted list keeps its order.
void induce(std::span<const std::uint32_t> s, const std::vector<bool>& stype,
            const std::vector<std::int64_t>& bucket_start,
            std::span<const std::int64_t> lms, std::vector<std::int64_t>& sa) {
  const std::size_t n = s.size();
  const std::size_t k = bucket_start.size() - 1;
  std::fill(sa.begin(), sa.end(), kEmpty);

  std::vector<std::int64_t> tail(bucket_start.begin() + 1, bucket_start.end());
  for (auto it = lms.rbegin(); it != lms.rend(); ++it) {
    sa[--tail[s[*it]]] = *it;
  }

  std::vector<std::int64_t> head(bucket_start.begin(), bucket_start.begin() + k);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t j = sa[i] - 1;
    if (sa[i] > 0 && !stype[j]) sa[head[s[j]]++] = j;
  }

  std::copy(bucket_start.begin() + 1, bucket_start.end(), tail.begin());
  for (std::size_t i = n; i-- > 0;) {
    const std::int64_t j = sa[i] - 1;
    if (sa[i] > 0 && stype[j]) sa[--tail[s[j]]] = j;
  }
}

void sais_rec(std::span<const std::uint32_t> s, std::uint32_t k,
              std::vector<std::int64_t>& sa) {
  const std::size_t n = s.size();
  sa.assign(n, kEmpty);
  if (n == 1) {
    sa[0] = 0;
    return;
  }

  std::vector<bool> stype(n, false);
  stype[n - 1] = true;
  for (std::size_t i = n - 1; i-- > 0;) {
    stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
  }
  auto is_lms = [&](std::size_t i) { return i > 0 && stype[i] && !stype[i - 1]; };

  std::vector<std::int64_t> bucket_start(k + 1, 0);
  for (auto c : s) ++bucket_start[c + 1];
  for (std::uint32_t c = 1; c <= k; ++c) bucket_start[c] += bucket_start[c - 1];

  std::vector<std::int64_t> lms;
  for (std::size_t i = 1; i < n; ++i) {
    if (is_lms(i)) lms.push_back(static_cast<std::int64_t>(i));
  }
  induce(s, stype, bucket_start, lms, sa);

  // Name the LMS substrings in sorted order.
  std::vector<std::int64_t> sorted_lms;
  sorted_lms.reserve(lms.size());
  for (auto p : sa) {
    if (p >= 0 && is_lms(static_cast<std::size_t>(p))) sorted_lms.push_back(p);
  }
  std::vector<std::int64_t> name_of(n, kEmpty);
  std::uint32_t names = 0;
  std::int64_t prev = kEmpty;
  for (auto p : sorted_lms) {
    bool same = prev != kEmpty;
    for (std::size_t d = 0; same; ++d) {
      const std::size_t a = static_cast<std::size_t>(prev) + d;
      const std::size_t b = static_cast<std::size_t>(p) + d;
      if (a >= n || b >= n || s[a] != s[b] || stype[a] != stype[b]) {
        same = false;
      } else if (d > 0 && (is_lms(a) || is_lms(b))) {
        same = is_lms(a) && is_lms(b);
        break;
      }
    }
    if (!same) ++names;
    name_of[p] = names - 1;
    prev = p;
  }

  std::vector<std::uint32_t> reduced;
  reduced.reserve(lms.size());
  for (auto p : lms) reduced.push_back(static_cast<std::uint32_t>(name_of[p]));

  std::vector<std::int64_t> reduced_sa;
  if (names < reduced.size()) {
    sais_rec(reduced, names, reduced_sa);
  } else {
    reduced_sa.assign(reduced.size(), 0);
    for (std::size_t i = 0; i < reduced.size(); ++i) reduced_sa[reduced[i]] = i;
  }

  for (std::size_t i = 0; i < reduced_sa.size(); ++i) sorted_lms[i] = lms[reduced_sa[i]];
  induce(s, stype, bucket_start, sorted_lms, sa);
}

}  // namespace

std::vector<std::uint64_t> sais(std::span<const std::uint32_t> seq,
                                std::uint32_t alphabet_size) {
  if (seq.empty() || seq.back() != 0) {
    throw std::invalid_argument("sais: sequence must end with a unique 0");
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (seq[i] == 0 || seq[i] >= alphabet_size) {
      throw std::invalid_argument("sais: symbol out of range");
    }
  }
  std::vector<std::int64_t> sa;
  sais_rec(seq, alphabet_size, sa);
  return {sa.begin(), sa.end()};
}

}  // namespace rfmx
