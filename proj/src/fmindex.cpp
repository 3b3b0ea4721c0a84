#include "rfmx/fmindex.hpp"

#include <algorithm>
#include <stdexcept>

#include "rfmx/serialize.hpp"

namespace rfmx {

bool encode_pattern(const Alphabet& alphabet, std::string_view pattern,
                    std::vector<Symbol>& out) {
  out.clear();
  out.reserve(pattern.size());
  for (unsigned char c : pattern) {
    auto code = alphabet.find(c);
    if (!code) return false;
    out.push_back(*code);
  }
  return true;
}

FMIndex FMIndex::build(const Text& text, std::uint64_t rate) {
  return build(text, build_suffix_array(text), rate);
}

FMIndex FMIndex::build(const Text& text, const SuffixArray& sa, std::uint64_t rate) {
  if (rate == 0) throw std::invalid_argument("sample rate must be positive");
  FMIndex ix;
  ix.alphabet_ = text.alphabet();
  const unsigned sigma = text.alphabet().size();
  const auto b = rfmx::bwt(text, sa);
  ix.bwt_ = WaveletSequence(b, sigma);
  ix.counts_ = char_counts(text);

  const std::uint64_t n = text.length();
  SASample& s = ix.sample_;
  s.rate = rate;
  BitBuilder marks(n + 1);
  s.inverse.assign((n + rate) / rate, 0);  // positions 1, 1+r, ... <= n+1
  for (std::uint64_t row = 1; row <= n + 1; ++row) {
    const std::uint64_t pos = sa.at(row);
    if (s.is_sampled_position(pos, n)) {
      marks.set(row);
      s.to_text.push_back(pos);
    }
    if ((pos - 1) % rate == 0) s.inverse[(pos - 1) / rate] = row;
  }
  s.marks = std::move(marks).build();
  return ix;
}

SuffixRange FMIndex::backward_extend(SuffixRange range, Symbol a) const {
  if (range.empty()) return {1, 0};
  const std::uint64_t base = counts_.before(a);
  return {base + bwt_.rank(a, range.lo - 1) + 1, base + bwt_.rank(a, range.hi)};
}

SuffixRange FMIndex::find(std::span<const Symbol> pattern) const {
  SuffixRange range = full_range();
  for (auto it = pattern.rbegin(); it != pattern.rend() && !range.empty(); ++it) {
    if (*it >= alphabet_.size()) return {1, 0};
    range = backward_extend(range, *it);
  }
  return range;
}

std::uint64_t FMIndex::count(std::span<const Symbol> pattern) const {
  return find(pattern).size();
}

std::uint64_t FMIndex::count(std::string_view pattern) const {
  std::vector<Symbol> codes;
  if (!encode_pattern(alphabet_, pattern, codes)) return 0;
  return count(codes);
}

std::uint64_t FMIndex::lf(std::uint64_t row) const {
  const auto [a, r] = bwt_.access_rank(row);
  return counts_.before(a) + r;
}

std::uint64_t FMIndex::locate_row(std::uint64_t row, std::uint64_t* steps) const {
  std::uint64_t t = 0;
  while (!sample_.marks.get(row)) {
    row = lf(row);
    ++t;
  }
  if (steps) *steps = t;
  return sample_.to_text[sample_.marks.rank1(row) - 1] + t;
}

std::vector<std::uint64_t> FMIndex::locate(SuffixRange range) const {
  std::vector<std::uint64_t> out;
  if (range.empty()) return out;
  out.reserve(range.size());
  for (std::uint64_t row = range.lo; row <= range.hi; ++row) out.push_back(locate_row(row));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> FMIndex::locate(std::string_view pattern) const {
  std::vector<Symbol> codes;
  if (!encode_pattern(alphabet_, pattern, codes)) return {};
  return locate(find(codes));
}

std::vector<Symbol> FMIndex::extract(std::uint64_t i, std::uint64_t j) const {
  const std::uint64_t n = length();
  if (i < 1 || i > j || j > n) throw std::out_of_range("out of range");
  const std::uint64_t rate = sample_.rate;
  // Nearest sampled suffix start q >= j+1.
  const std::uint64_t k = (j + rate - 1) / rate;
  std::uint64_t q = 1 + k * rate;
  std::uint64_t row;
  if (q > n + 1 || k >= sample_.inverse.size()) {
    q = n + 1;
    row = 1;
  } else {
    row = sample_.inverse[k];
  }
  std::vector<Symbol> out(j - i + 1);
  // BWT[row(q)] = S[q-1]; LF moves to row(q-1).
  for (std::uint64_t p = q - 1; p >= i; --p) {
    const auto [a, r] = bwt_.access_rank(row);
    if (p <= j) out[p - i] = a;
    row = counts_.before(a) + r;
    if (p == 1) break;
  }
  return out;
}

std::string FMIndex::extract_string(std::uint64_t i, std::uint64_t j) const {
  std::string out;
  for (auto s : extract(i, j)) out.push_back(alphabet_.decode(s));
  return out;
}

std::vector<std::uint8_t> FMIndex::serialize() const {
  ByteWriter w;
  bwt_.write(w);
  w.u64_array(counts_.values());
  w.u64(sample_.rate);
  sample_.marks.write(w);
  w.u64_array(sample_.to_text);
  w.u64_array(sample_.inverse);
  return std::move(w).take();
}

FMIndex FMIndex::deserialize(std::span<const std::uint8_t> bytes, Alphabet alphabet) {
  ByteReader r(bytes);
  FMIndex ix;
  ix.alphabet_ = std::move(alphabet);
  ix.bwt_ = WaveletSequence::read(r);
  ix.counts_ = CumulativeCounts(r.u64_array());
  ix.sample_.rate = r.u64();
  ix.sample_.marks = BitArray::read(r);
  ix.sample_.to_text = r.u64_array();
  ix.sample_.inverse = r.u64_array();
  if (!r.done()) throw FormatError("trailing bytes in FMI1");
  const std::uint64_t rows = ix.bwt_.size();
  if (rows == 0 || ix.bwt_.sigma() != ix.alphabet_.size() ||
      ix.counts_.sigma() != ix.alphabet_.size() || ix.counts_.total() != rows ||
      ix.sample_.rate == 0 || ix.sample_.marks.size() != rows ||
      ix.sample_.marks.ones() != ix.sample_.to_text.size() ||
      ix.sample_.inverse.size() != (rows - 1 + ix.sample_.rate) / ix.sample_.rate ||
      !ix.sample_.marks.get(1)) {
    throw FormatError("FMI1 section inconsistent");
  }
  for (auto v : ix.sample_.to_text) {
    if (v == 0 || v > rows) throw FormatError("FMI1 sample out of range");
  }
  for (auto v : ix.sample_.inverse) {
    if (v == 0 || v > rows) throw FormatError("FMI1 inverse sample out of range");
  }
  return ix;
}

}  // namespace rfmx
