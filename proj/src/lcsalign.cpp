#include "rfmx/lcsalign.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <stdexcept>

namespace rfmx {

bool is_common_subsequence(std::span<const Symbol> x, std::span<const Symbol> y,
                           const Alignment& a) {
  if (a.x_pos.size() != a.y_pos.size()) return false;
  for (std::size_t k = 0; k < a.x_pos.size(); ++k) {
    const auto xp = a.x_pos[k];
    const auto yp = a.y_pos[k];
    if (xp == 0 || yp == 0 || xp > x.size() || yp > y.size()) return false;
    if (k > 0 && (xp <= a.x_pos[k - 1] || yp <= a.y_pos[k - 1])) return false;
    if (x[xp - 1] != y[yp - 1]) return false;
  }
  return true;
}

Alignment exact_lcs(std::span<const Symbol> x, std::span<const Symbol> y) {
  const std::uint64_t n = x.size(), m = y.size();
  if (n != 0 && m > kExactLcsCellLimit / n) {
    throw std::length_error("input too large for exact LCS");
  }
  // skip_x[(i-1)*m + (j-1)]: on a mismatch at (i, j), dropping x[i] keeps
  // the optimum. Ties prefer dropping x.
  std::vector<std::uint64_t> skip_x((n * m + 63) / 64, 0);
  std::vector<std::uint32_t> prev(m + 1, 0), cur(m + 1, 0);
  for (std::uint64_t i = 1; i <= n; ++i) {
    cur[0] = 0;
    for (std::uint64_t j = 1; j <= m; ++j) {
      if (x[i - 1] == y[j - 1]) {
        cur[j] = prev[j - 1] + 1;
      } else if (prev[j] >= cur[j - 1]) {
        cur[j] = prev[j];
        const std::uint64_t cell = (i - 1) * m + (j - 1);
        skip_x[cell / 64] |= std::uint64_t{1} << (cell % 64);
      } else {
        cur[j] = cur[j - 1];
      }
    }
    std::swap(prev, cur);
  }
  Alignment out;
  std::uint64_t i = n, j = m;
  while (i > 0 && j > 0) {
    if (x[i - 1] == y[j - 1]) {
      out.push(i, j);
      --i;
      --j;
    } else {
      const std::uint64_t cell = (i - 1) * m + (j - 1);
      if ((skip_x[cell / 64] >> (cell % 64)) & 1) {
        --i;
      } else {
        --j;
      }
    }
  }
  std::reverse(out.x_pos.begin(), out.x_pos.end());
  std::reverse(out.y_pos.begin(), out.y_pos.end());
  return out;
}

std::int64_t indel_distance_bounded(std::span<const Symbol> x, std::span<const Symbol> y,
                                    std::uint64_t max_d) {
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  const std::int64_t m = static_cast<std::int64_t>(y.size());
  const std::int64_t limit = static_cast<std::int64_t>(
      std::min<std::uint64_t>(max_d, static_cast<std::uint64_t>(n + m)));
  const std::int64_t off = limit + 1;
  // v[k] = furthest x on diagonal k (y = x - k), -1 when unreachable.
  std::vector<std::int64_t> v(2 * limit + 3, -1);
  for (std::int64_t d = 0; d <= limit; ++d) {
    for (std::int64_t k = -d; k <= d; k += 2) {
      std::int64_t px = -1;
      if (d == 0) {
        px = 0;
      } else {
        if (k + 1 <= d - 1 && v[off + k + 1] >= 0 && v[off + k + 1] - k <= m) {
          px = v[off + k + 1];
        }
        if (k - 1 >= -(d - 1) && v[off + k - 1] >= 0 && v[off + k - 1] + 1 <= n) {
          px = std::max(px, v[off + k - 1] + 1);
        }
      }
      if (px < 0) {
        v[off + k] = -1;
        continue;
      }
      std::int64_t py = px - k;
      while (px < n && py < m && x[px] == y[py]) {
        ++px;
        ++py;
      }
      v[off + k] = px;
      if (px == n && py == m) return d;
    }
  }
  return -1;
}

namespace {

// Split point on an optimal edit path, found by searching from both ends
// until the furthest-reaching paths overlap. Both inputs nonempty.
std::optional<std::pair<std::int64_t, std::int64_t>> bisect(std::span<const Symbol> a,
                                                            std::span<const Symbol> b) {
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  const std::int64_t m = static_cast<std::int64_t>(b.size());
  const std::int64_t max_d = (n + m + 1) / 2;
  const std::int64_t off = max_d;
  const std::int64_t len = 2 * max_d;
  std::vector<std::int64_t> vf(len + 2, -1), vb(len + 2, -1);
  vf[off + 1] = 0;
  vb[off + 1] = 0;
  const std::int64_t delta = n - m;
  const bool front = (delta % 2) != 0;
  std::int64_t kf_start = 0, kf_end = 0, kb_start = 0, kb_end = 0;
  for (std::int64_t d = 0; d < max_d; ++d) {
    for (std::int64_t k = -d + kf_start; k <= d - kf_end; k += 2) {
      const std::int64_t ko = off + k;
      std::int64_t x = (k == -d || (k != d && vf[ko - 1] < vf[ko + 1])) ? vf[ko + 1]
                                                                        : vf[ko - 1] + 1;
      std::int64_t y = x - k;
      while (x < n && y < m && a[x] == b[y]) {
        ++x;
        ++y;
      }
      vf[ko] = x;
      if (x > n) {
        kf_end += 2;
      } else if (y > m) {
        kf_start += 2;
      } else if (front) {
        const std::int64_t kbo = off + delta - k;
        if (kbo >= 0 && kbo < len && vb[kbo] != -1 && x >= n - vb[kbo]) {
          return std::pair{x, y};
        }
      }
    }
    // Backward search runs on the reversed inputs.
    for (std::int64_t k = -d + kb_start; k <= d - kb_end; k += 2) {
      const std::int64_t ko = off + k;
      std::int64_t x = (k == -d || (k != d && vb[ko - 1] < vb[ko + 1])) ? vb[ko + 1]
                                                                        : vb[ko - 1] + 1;
      std::int64_t y = x - k;
      while (x < n && y < m && a[n - x - 1] == b[m - y - 1]) {
        ++x;
        ++y;
      }
      vb[ko] = x;
      if (x > n) {
        kb_end += 2;
      } else if (y > m) {
        kb_start += 2;
      } else if (!front) {
        const std::int64_t kfo = off + delta - k;
        if (kfo >= 0 && kfo < len && vf[kfo] != -1) {
          const std::int64_t fx = vf[kfo];
          const std::int64_t fy = off + fx - kfo;
          if (fx >= n - x) return std::pair{fx, fy};
        }
      }
    }
  }
  return std::nullopt;
}

void myers_rec(std::span<const Symbol> a, std::span<const Symbol> b, std::uint64_t ox,
               std::uint64_t oy, Alignment& out) {
  std::size_t pre = 0;
  while (pre < a.size() && pre < b.size() && a[pre] == b[pre]) {
    out.push(ox + pre + 1, oy + pre + 1);
    ++pre;
  }
  a = a.subspan(pre);
  b = b.subspan(pre);
  ox += pre;
  oy += pre;
  std::size_t suf = 0;
  while (suf < a.size() && suf < b.size() &&
         a[a.size() - 1 - suf] == b[b.size() - 1 - suf]) {
    ++suf;
  }
  a = a.first(a.size() - suf);
  b = b.first(b.size() - suf);
  if (!a.empty() && !b.empty()) {
    if (auto split = bisect(a, b)) {
      const auto [sx, sy] = *split;
      myers_rec(a.first(sx), b.first(sy), ox, oy, out);
      myers_rec(a.subspan(sx), b.subspan(sy), ox + sx, oy + sy, out);
    }
  }
  for (std::size_t t = 0; t < suf; ++t) {
    out.push(ox + a.size() + t + 1, oy + b.size() + t + 1);
  }
}

}  // namespace

Alignment greedy_lcs(std::span<const Symbol> x, std::span<const Symbol> y,
                     std::uint64_t max_diag, bool* fell_back) {
  if (fell_back) *fell_back = false;
  if (indel_distance_bounded(x, y, max_diag) < 0) {
    if (fell_back) *fell_back = true;
    return common_run(x, y);
  }
  Alignment out;
  myers_rec(x, y, 0, 0, out);
  return out;
}

Alignment common_run(std::span<const Symbol> x, std::span<const Symbol> y) {
  std::array<std::uint64_t, 256> cx{}, cy{};
  for (auto s : x) ++cx[s];
  for (auto s : y) ++cy[s];
  unsigned best = 0;
  std::uint64_t best_count = 0;
  for (unsigned a = 0; a < 256; ++a) {
    const std::uint64_t c = std::min(cx[a], cy[a]);
    if (c > best_count) {
      best_count = c;
      best = a;
    }
  }
  Alignment out;
  if (best_count == 0) return out;
  out.x_pos.reserve(best_count);
  out.y_pos.reserve(best_count);
  for (std::uint64_t i = 0; i < x.size() && out.x_pos.size() < best_count; ++i) {
    if (x[i] == best) out.x_pos.push_back(i + 1);
  }
  for (std::uint64_t j = 0; j < y.size() && out.y_pos.size() < best_count; ++j) {
    if (y[j] == best) out.y_pos.push_back(j + 1);
  }
  return out;
}

Alignment partitioned_bwt_lcs(const FMIndex& ix1, const FMIndex& ix2,
                              const PartitionSpec& spec, PartitionStats* stats) {
  if (!(ix1.alphabet() == ix2.alphabet())) throw std::invalid_argument("alphabet mismatch");
  if (spec.max_block == 0 || spec.max_depth == 0 || spec.max_diag == 0 || spec.hard_gap == 0) {
    throw std::invalid_argument("partition parameters must be positive");
  }
  PartitionStats local;
  PartitionStats& st = stats ? *stats : local;
  st = {};

  const auto bwt1 = ix1.bwt().to_vector();
  const auto bwt2 = ix2.bwt().to_vector();
  const unsigned sigma = ix1.alphabet().size();
  const auto catch_all = ix1.alphabet().catch_all();
  Alignment out;

  auto align_leaf = [&](const std::vector<Symbol>& pattern, SuffixRange r1, SuffixRange r2) {
    if (r1.empty() || r2.empty()) return;
    ++st.leaves;
    const std::span<const Symbol> x(bwt1.data() + r1.lo - 1, r1.size());
    const std::span<const Symbol> y(bwt2.data() + r2.lo - 1, r2.size());
    const std::uint64_t gap = x.size() > y.size() ? x.size() - y.size() : y.size() - x.size();
    const bool catch_all_run =
        catch_all && pattern.size() == spec.max_depth &&
        std::all_of(pattern.begin(), pattern.end(), [&](Symbol s) { return s == *catch_all; });
    Alignment leaf;
    if (gap > spec.hard_gap || catch_all_run) {
      ++st.predicted_hard;
      leaf = common_run(x, y);
    } else {
      bool fell_back = false;
      leaf = greedy_lcs(x, y, spec.max_diag, &fell_back);
      ++st.greedy_leaves;
      if (fell_back) ++st.fallbacks;
    }
    for (std::size_t k = 0; k < leaf.size(); ++k) {
      out.push(leaf.x_pos[k] + r1.lo - 1, leaf.y_pos[k] + r2.lo - 1);
    }
  };

  // Children of pattern x are x.a for every symbol a, in symbol order, so
  // leaves come out in lexicographic (row) order on both sides.
  std::vector<Symbol> pattern;
  std::function<void(SuffixRange, SuffixRange)> visit = [&](SuffixRange r1, SuffixRange r2) {
    if (r1.empty() && r2.empty()) return;
    if (r1.size() <= spec.max_block || r2.size() <= spec.max_block ||
        pattern.size() >= spec.max_depth) {
      align_leaf(pattern, r1, r2);
      return;
    }
    for (unsigned a = 0; a < sigma; ++a) {
      pattern.push_back(static_cast<Symbol>(a));
      visit(ix1.find(pattern), ix2.find(pattern));
      pattern.pop_back();
    }
  };
  visit(ix1.full_range(), ix2.full_range());
  return out;
}

std::uint64_t bw_distance(std::uint64_t n1, std::uint64_t n2, const Alignment& a) {
  if (a.size() > n1 + 1 || a.size() > n2 + 1 || a.x_pos.size() != a.y_pos.size()) {
    throw std::invalid_argument("invalid alignment");
  }
  return (n1 + 1) + (n2 + 1) - 2 * a.size();
}

}  // namespace rfmx
