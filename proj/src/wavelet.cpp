#include <bit>
#include <stdexcept>

#include "rfmx/serialize.hpp"
#include "rfmx/succinct.hpp"

namespace rfmx {

namespace {

unsigned level_count(unsigned sigma) {
  return sigma <= 2 ? 1u : static_cast<unsigned>(std::bit_width(sigma - 1));
}

}  // namespace

WaveletSequence::WaveletSequence(std::span<const Symbol> symbols, unsigned sigma)
    : length_(symbols.size()), sigma_(sigma) {
  if (sigma == 0 || sigma > 256) throw std::invalid_argument("wavelet sigma out of range");
  const unsigned depth = level_count(sigma);
  std::vector<Symbol> cur(symbols.begin(), symbols.end());
  for (auto s : cur) {
    if (s >= sigma) throw std::invalid_argument("symbol out of alphabet");
  }
  std::vector<Symbol> next(cur.size());
  levels_.reserve(depth);
  for (unsigned l = 0; l < depth; ++l) {
    const unsigned shift = depth - 1 - l;
    BitBuilder bits(length_);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if ((cur[i] >> shift) & 1) bits.set(i + 1);
    }
    levels_.push_back(std::move(bits).build());
    if (l + 1 == depth) break;
    // Stable counting sort by the top l+1 bits keeps each node contiguous.
    const unsigned prefix_shift = shift;
    std::vector<std::uint64_t> start((std::size_t{1} << (l + 1)) + 1, 0);
    for (auto s : cur) ++start[(s >> prefix_shift) + 1];
    for (std::size_t k = 1; k < start.size(); ++k) start[k] += start[k - 1];
    for (auto s : cur) next[start[s >> prefix_shift]++] = s;
    cur.swap(next);
  }
}

Symbol WaveletSequence::access(std::uint64_t i) const { return access_rank(i).first; }

std::uint64_t WaveletSequence::rank(Symbol a, std::uint64_t i) const {
  if (a >= sigma_) throw std::out_of_range("symbol out of alphabet");
  if (i > length_) throw std::out_of_range("out of range");
  const unsigned depth = levels();
  std::uint64_t begin = 0, end = length_;  // node range [begin, end)
  std::uint64_t count = i;                  // prefix length within node
  for (unsigned l = 0; l < depth && count > 0; ++l) {
    const BitArray& bits = levels_[l];
    const std::uint64_t ones_begin = bits.rank1(begin);
    const std::uint64_t ones_end = bits.rank1(end);
    const std::uint64_t ones_prefix = bits.rank1(begin + count);
    const std::uint64_t zeros_node = (end - begin) - (ones_end - ones_begin);
    if ((a >> (depth - 1 - l)) & 1) {
      count = ones_prefix - ones_begin;
      begin += zeros_node;
    } else {
      count -= ones_prefix - ones_begin;
      end = begin + zeros_node;
    }
  }
  return count;
}

std::pair<Symbol, std::uint64_t> WaveletSequence::access_rank(std::uint64_t i) const {
  if (i == 0 || i > length_) throw std::out_of_range("out of range");
  const unsigned depth = levels();
  std::uint64_t begin = 0, end = length_;
  std::uint64_t pos = i;  // 1-based position within node
  unsigned symbol = 0;
  for (unsigned l = 0; l < depth; ++l) {
    const BitArray& bits = levels_[l];
    const std::uint64_t ones_begin = bits.rank1(begin);
    const std::uint64_t ones_end = bits.rank1(end);
    const std::uint64_t ones_prefix = bits.rank1(begin + pos);
    const std::uint64_t zeros_node = (end - begin) - (ones_end - ones_begin);
    const bool bit = bits.get(begin + pos);
    symbol = (symbol << 1) | (bit ? 1u : 0u);
    if (bit) {
      pos = ones_prefix - ones_begin;
      begin += zeros_node;
    } else {
      pos -= ones_prefix - ones_begin;
      end = begin + zeros_node;
    }
  }
  return {static_cast<Symbol>(symbol), pos};
}

std::vector<Symbol> WaveletSequence::to_vector() const {
  std::vector<Symbol> out(length_);
  for (std::uint64_t i = 0; i < length_; ++i) out[i] = access(i + 1);
  return out;
}

std::uint64_t WaveletSequence::payload_bytes() const {
  std::uint64_t total = 8 + 4 + 4;
  for (const auto& l : levels_) total += l.payload_bytes();
  return total;
}

void WaveletSequence::write(ByteWriter& out) const {
  out.u64(length_);
  out.u32(sigma_);
  out.u32(levels());
  for (const auto& l : levels_) l.write(out);
}

WaveletSequence WaveletSequence::read(ByteReader& in) {
  const std::uint64_t length = in.u64();
  const std::uint32_t sigma = in.u32();
  const std::uint32_t depth = in.u32();
  if (sigma == 0 || sigma > 256 || depth != level_count(sigma)) {
    throw FormatError("wavelet header inconsistent");
  }
  std::vector<BitArray> levels;
  levels.reserve(depth);
  for (std::uint32_t l = 0; l < depth; ++l) {
    levels.push_back(BitArray::read(in));
    if (levels.back().size() != length) throw FormatError("wavelet level length mismatch");
  }
  return WaveletSequence(length, sigma, std::move(levels));
}

}  // namespace rfmx
