#include "rfmx/bwtinv.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rfmx/serialize.hpp"

namespace rfmx {

namespace {

// Suffix start holding character position `pos` in its preceding slot.
std::uint64_t suffix_after(std::uint64_t pos, std::uint64_t n) {
  return pos == n + 1 ? 1 : pos + 1;
}

// Character position preceding suffix `start`.
std::uint64_t char_before(std::uint64_t start, std::uint64_t n) {
  return start == 1 ? n + 1 : start - 1;
}

bool texts_common(const Text& s1, const Text& s2, const InvariantAlignment& g) {
  if (g.i_pos.size() != g.j_pos.size()) return false;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto i = g.i_pos[k], j = g.j_pos[k];
    if (i == 0 || j == 0 || i > s1.length() + 1 || j > s2.length() + 1) return false;
    if (k > 0 && (i <= g.i_pos[k - 1] || j <= g.j_pos[k - 1])) return false;
    if (s1.at(i) != s2.at(j)) return false;
  }
  return true;
}

}  // namespace

TwoChoiceArray build_candidates(const Text& s1, const Text& s2) {
  if (!(s1.alphabet() == s2.alphabet())) throw std::invalid_argument("alphabet mismatch");
  const std::uint64_t n1 = s1.length(), n2 = s2.length();
  // S1 # S2 $ with # strictly between the sentinel and every real symbol.
  std::vector<std::uint32_t> merged;
  merged.reserve(n1 + n2 + 2);
  for (std::uint64_t p = 1; p <= n1; ++p) merged.push_back(s1.at(p) + 1u);
  merged.push_back(1);
  for (std::uint64_t q = 1; q <= n2; ++q) merged.push_back(s2.at(q) + 1u);
  merged.push_back(0);
  const auto order = sais(merged, s1.alphabet().size() + 1);

  TwoChoiceArray a;
  a.values.assign(n1 + 1, {0, 0});
  auto consider = [&](std::uint64_t start1, std::uint64_t start2, unsigned slot) {
    const std::uint64_t i = char_before(start1, n1);
    const std::uint64_t j = char_before(start2, n2);
    if (s1.at(i) == s2.at(j)) a.values[i - 1][slot] = j;
  };
  auto is_s1 = [&](std::uint64_t p0) { return p0 <= n1; };

  std::uint64_t last2 = 0;
  for (auto p0 : order) {
    if (is_s1(p0)) {
      if (last2) consider(p0 + 1, last2, 1);
    } else {
      last2 = p0 - n1;
    }
  }
  for (std::size_t e = 0; e + 1 < order.size(); ++e) {
    if (is_s1(order[e]) && !is_s1(order[e + 1])) consider(order[e] + 1, order[e + 1] - n1, 0);
  }
  return a;
}

ChoiceSelection two_choice_lis(const TwoChoiceArray& a) {
  struct Node {
    std::uint64_t value;
    std::uint64_t index;
    std::uint8_t choice;
    std::int64_t parent;
  };
  std::vector<Node> nodes;
  std::vector<std::int64_t> tails;       // node ids
  std::vector<std::uint64_t> tail_vals;  // strictly increasing
  for (std::uint64_t i = 1; i <= a.size(); ++i) {
    std::array<std::pair<std::uint64_t, std::uint8_t>, 2> offers{
        std::pair{a.at(i, 1), std::uint8_t{1}}, std::pair{a.at(i, 2), std::uint8_t{2}}};
    if (offers[0].first < offers[1].first) std::swap(offers[0], offers[1]);
    for (const auto& [v, b] : offers) {
      if (v == 0) continue;
      const auto pos = static_cast<std::size_t>(
          std::lower_bound(tail_vals.begin(), tail_vals.end(), v) - tail_vals.begin());
      const std::int64_t id = static_cast<std::int64_t>(nodes.size());
      nodes.push_back({v, i, b, pos > 0 ? tails[pos - 1] : -1});
      if (pos == tails.size()) {
        tails.push_back(id);
        tail_vals.push_back(v);
      } else {
        tails[pos] = id;
        tail_vals[pos] = v;
      }
    }
  }
  ChoiceSelection out;
  for (std::int64_t id = tails.empty() ? -1 : tails.back(); id >= 0; id = nodes[id].parent) {
    out.index.push_back(nodes[id].index);
    out.choice.push_back(nodes[id].choice);
  }
  std::reverse(out.index.begin(), out.index.end());
  std::reverse(out.choice.begin(), out.choice.end());
  return out;
}

InvariantAlignment invariant_subsequence(const Text& s1, const Text& s2) {
  const TwoChoiceArray a = build_candidates(s1, s2);
  const ChoiceSelection sel = two_choice_lis(a);
  InvariantAlignment g;
  g.i_pos = sel.index;
  g.choice = sel.choice;
  g.j_pos.reserve(sel.size());
  for (std::size_t k = 0; k < sel.size(); ++k) g.j_pos.push_back(a.at(sel.index[k], sel.choice[k]));
  return g;
}

bool check_bwt_invariant(const Text& s1, const Text& s2, const InvariantAlignment& g) {
  return check_bwt_invariant(s1, s2, build_suffix_array(s1), build_suffix_array(s2), g);
}

bool check_bwt_invariant(const Text& s1, const Text& s2, const SuffixArray& sa1,
                         const SuffixArray& sa2, const InvariantAlignment& g) {
  if (!texts_common(s1, s2, g)) throw std::invalid_argument("not a common subsequence");
  const auto isa1 = sa1.inverse();
  const auto isa2 = sa2.inverse();
  const std::uint64_t n1 = s1.length(), n2 = s2.length();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    rows[k] = {isa1[suffix_after(g.i_pos[k], n1) - 1], isa2[suffix_after(g.j_pos[k], n2) - 1]};
  }
  std::sort(rows.begin(), rows.end());
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].second <= rows[k - 1].second) return false;
  }
  return true;
}

Alignment induced_bwt_alignment(const SuffixArray& sa1, const SuffixArray& sa2,
                                const InvariantAlignment& g) {
  const auto isa1 = sa1.inverse();
  const auto isa2 = sa2.inverse();
  const std::uint64_t n1 = sa1.size() - 1, n2 = sa2.size() - 1;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    rows[k] = {isa1[suffix_after(g.i_pos[k], n1) - 1], isa2[suffix_after(g.j_pos[k], n2) - 1]};
  }
  std::sort(rows.begin(), rows.end());
  Alignment out;
  out.x_pos.reserve(rows.size());
  out.y_pos.reserve(rows.size());
  for (const auto& [v, w] : rows) {
    if (!out.y_pos.empty() && w <= out.y_pos.back()) {
      throw std::invalid_argument("alignment is not BWT-invariant");
    }
    out.push(v, w);
  }
  return out;
}

RelativeSample RelativeSample::build(std::shared_ptr<const FMIndex> ref,
                                     const SuffixArray& target_sa,
                                     const InvariantAlignment& g) {
  if (!ref) throw std::invalid_argument("missing reference index");
  const std::uint64_t n1 = ref->length();
  const std::uint64_t n2 = target_sa.size() - 1;
  RelativeSample rs;
  rs.rate_ = ref->sample().rate;

  BitBuilder m1(n1 + 1), m2(n2 + 1);
  for (std::uint64_t p = 1; p <= n1 + 1; ++p) m1.set(p);
  for (std::uint64_t p = 1; p <= n2 + 1; ++p) m2.set(p);
  std::vector<bool> reusable(n2 + 2, false);  // by target suffix start
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto i = g.i_pos[k], j = g.j_pos[k];
    if (i == 0 || i > n1 + 1 || j == 0 || j > n2 + 1) {
      throw std::invalid_argument("invariant alignment out of range");
    }
    m1.set(i, false);
    m2.set(j, false);
    if (ref->sample().is_sampled_position(suffix_after(i, n1), n1)) {
      reusable[suffix_after(j, n2)] = true;
    }
  }
  rs.m1_ = std::move(m1).build();
  rs.m2_ = std::move(m2).build();

  // Walks visit suffix starts s, s-1, ...; every start must find a reusable
  // or escape sample within rate-1 steps without wrapping past 1.
  const auto isa2 = target_sa.inverse();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> escapes;  // (row, start)
  std::uint64_t last_stop = 0;
  for (std::uint64_t s = 1; s <= n2 + 1; ++s) {
    if (reusable[s]) {
      last_stop = s;
    } else if (last_stop == 0 || s - last_stop >= rs.rate_) {
      escapes.emplace_back(isa2[s - 1], s);
      last_stop = s;
    }
  }
  std::sort(escapes.begin(), escapes.end());
  BitBuilder marks(n2 + 1);
  for (const auto& [row, start] : escapes) {
    marks.set(row);
    rs.escape_values_.push_back(start);
  }
  rs.escape_marks_ = std::move(marks).build();
  rs.ref_ = std::move(ref);
  return rs;
}

std::uint64_t rel_locate_row(const RelativeIndex& ri, const RelativeSample& rs,
                             std::uint64_t row, std::uint64_t* steps) {
  const FMIndex& ref = ri.reference();
  const std::uint64_t n1 = ref.length();
  const std::uint64_t n2 = ri.length();
  const SASample& sample = ref.sample();
  auto sample_at = [&](std::uint64_t k) { return char_before(sample.to_text[k - 1], n1); };
  for (std::uint64_t t = 0; t <= n2 + 1; ++t) {
    if (rs.escape_marks_.get(row)) {
      if (steps) *steps = t;
      return rs.escape_values_[rs.escape_marks_.rank1(row) - 1] + t;
    }
    if (auto pos2 = map_through_invariant(ri.b1(), ri.b2(), sample.marks, sample_at, rs.m1_,
                                          rs.m2_, row)) {
      if (steps) *steps = t;
      return suffix_after(*pos2, n2) + t;
    }
    row = ri.lf(row);
  }
  throw std::logic_error("relative locate exceeded the step cap");
}

std::vector<std::uint64_t> rel_locate(const RelativeIndex& ri, const RelativeSample& rs,
                                      SuffixRange range) {
  std::vector<std::uint64_t> out;
  if (range.empty()) return out;
  out.reserve(range.size());
  for (std::uint64_t row = range.lo; row <= range.hi; ++row) {
    out.push_back(rel_locate_row(ri, rs, row));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint8_t> RelativeSample::serialize(std::uint64_t reference_digest) const {
  ByteWriter w;
  w.u64(reference_digest);
  w.u64(rate_);
  m1_.write(w);
  m2_.write(w);
  escape_marks_.write(w);
  w.u64_array(escape_values_);
  return std::move(w).take();
}

RelativeSample RelativeSample::deserialize(std::span<const std::uint8_t> bytes,
                                           std::shared_ptr<const FMIndex> ref,
                                           std::uint64_t reference_digest) {
  ByteReader r(bytes);
  if (r.u64() != reference_digest) throw FormatError("reference mismatch");
  RelativeSample rs;
  rs.ref_ = std::move(ref);
  rs.rate_ = r.u64();
  rs.m1_ = BitArray::read(r);
  rs.m2_ = BitArray::read(r);
  rs.escape_marks_ = BitArray::read(r);
  rs.escape_values_ = r.u64_array();
  if (!r.done()) throw FormatError("trailing bytes in INV1");
  if (rs.rate_ != rs.ref_->sample().rate || rs.m1_.size() != rs.ref_->rows() ||
      rs.m1_.zeros() != rs.m2_.zeros() || rs.escape_marks_.size() != rs.m2_.size() ||
      rs.escape_marks_.ones() != rs.escape_values_.size()) {
    throw FormatError("INV1 section inconsistent");
  }
  for (auto v : rs.escape_values_) {
    if (v == 0 || v > rs.m2_.size()) throw FormatError("INV1 escape sample out of range");
  }
  return rs;
}

std::pair<std::string, std::string> reduction_strings(std::span<const unsigned> p1,
                                                      std::span<const unsigned> p2) {
  auto valid = [](std::span<const unsigned> p) {
    std::vector<bool> seen(p.size() + 1, false);
    for (auto v : p) {
      if (v == 0 || v > p.size() || seen[v]) return false;
      seen[v] = true;
    }
    return !p.empty();
  };
  if (!valid(p1) || !valid(p2)) throw std::invalid_argument("invalid permutation");
  if (p2.size() > p1.size()) throw std::invalid_argument("pattern longer than permutation");
  std::string s1, s2;
  for (auto v : p1) {
    s1.push_back('A');
    s1.append(v, 'B');
  }
  for (auto v : p2) {
    s2.push_back('A');
    s2.append(v, 'C');
  }
  return {s1, s2};
}

}  // namespace rfmx
