#include <bit>
#include <stdexcept>

#include "rfmx/serialize.hpp"
#include "rfmx/succinct.hpp"

namespace rfmx {

namespace {
constexpr std::uint64_t kWordsPerBlock = BitArray::kBlockBits / 64;
constexpr std::uint64_t kBlocksPerSuper = BitArray::kSuperBits / BitArray::kBlockBits;
}  // namespace

BitArray::BitArray(std::vector<std::uint64_t> words, std::uint64_t length)
    : words_(std::move(words)), length_(length) {
  if (words_.size() != (length_ + 63) / 64) {
    throw std::invalid_argument("bit array word count does not match length");
  }
  if (length_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (length_ % 64)) - 1;
  }
  build_directory();
}

BitArray BitArray::from_string(std::string_view bits) {
  BitBuilder b(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      b.set(i + 1);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string must contain only 0 and 1");
    }
  }
  return std::move(b).build();
}

void BitArray::build_directory() {
  const std::uint64_t blocks = length_ / kBlockBits + 1;
  block_.assign(blocks, 0);
  super_.assign(blocks / kBlocksPerSuper + 1, 0);
  std::uint64_t total = 0;
  std::uint64_t super_base = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    if (b % kBlocksPerSuper == 0) {
      super_base = total;
      super_[b / kBlocksPerSuper] = total;
    }
    block_[b] = static_cast<std::uint16_t>(total - super_base);
    for (std::uint64_t w = b * kWordsPerBlock;
         w < std::min<std::uint64_t>((b + 1) * kWordsPerBlock, words_.size()); ++w) {
      total += static_cast<std::uint64_t>(std::popcount(words_[w]));
    }
  }
  ones_ = total;
}

std::uint64_t BitArray::checked(std::uint64_t i) const {
  if (i > length_) throw std::out_of_range("out of range");
  return i;
}

bool BitArray::get(std::uint64_t pos) const {
  if (pos == 0 || pos > length_) throw std::out_of_range("out of range");
  const std::uint64_t i = pos - 1;
  return (words_[i / 64] >> (i % 64)) & 1;
}

std::uint64_t BitArray::rank1(std::uint64_t i) const {
  checked(i);
  const std::uint64_t block = i / kBlockBits;
  std::uint64_t r = ones_before_block(block);
  const std::uint64_t last_word = i / 64;
  for (std::uint64_t w = block * kWordsPerBlock; w < last_word; ++w) {
    r += static_cast<std::uint64_t>(std::popcount(words_[w]));
  }
  if (i % 64 != 0) {
    const std::uint64_t mask = (std::uint64_t{1} << (i % 64)) - 1;
    r += static_cast<std::uint64_t>(std::popcount(words_[last_word] & mask));
  }
  return r;
}

namespace {

// Position (0-based) of the k-th (1-based) set bit of `word`.
unsigned select_in_word(std::uint64_t word, std::uint64_t k) {
  for (std::uint64_t i = 1; i < k; ++i) word &= word - 1;
  return static_cast<unsigned>(std::countr_zero(word));
}

}  // namespace

std::uint64_t BitArray::select1(std::uint64_t j) const {
  if (j == 0 || j > ones_) throw std::out_of_range("select overflow");
  // Last block whose preceding count is < j.
  std::uint64_t lo = 0, hi = block_.size() - 1;
  while (lo < hi) {
    const std::uint64_t mid = (lo + hi + 1) / 2;
    if (ones_before_block(mid) < j) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  std::uint64_t remaining = j - ones_before_block(lo);
  for (std::uint64_t w = lo * kWordsPerBlock; w < words_.size(); ++w) {
    const auto c = static_cast<std::uint64_t>(std::popcount(words_[w]));
    if (remaining <= c) return w * 64 + select_in_word(words_[w], remaining) + 1;
    remaining -= c;
  }
  throw std::logic_error("select1: directory inconsistent");
}

std::uint64_t BitArray::select0(std::uint64_t j) const {
  if (j == 0 || j > zeros()) throw std::out_of_range("select overflow");
  std::uint64_t lo = 0, hi = block_.size() - 1;
  while (lo < hi) {
    const std::uint64_t mid = (lo + hi + 1) / 2;
    if (mid * kBlockBits - ones_before_block(mid) < j) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  std::uint64_t remaining = j - (lo * kBlockBits - ones_before_block(lo));
  for (std::uint64_t w = lo * kWordsPerBlock; w < words_.size(); ++w) {
    std::uint64_t inv = ~words_[w];
    if (w == words_.size() - 1 && length_ % 64 != 0) {
      inv &= (std::uint64_t{1} << (length_ % 64)) - 1;
    }
    const auto c = static_cast<std::uint64_t>(std::popcount(inv));
    if (remaining <= c) return w * 64 + select_in_word(inv, remaining) + 1;
    remaining -= c;
  }
  throw std::logic_error("select0: directory inconsistent");
}

void BitArray::write(ByteWriter& out) const {
  out.u64(length_);
  for (auto w : words_) out.u64(w);
}

BitArray BitArray::read(ByteReader& in) {
  const std::uint64_t length = in.u64();
  const std::uint64_t nwords = (length + 63) / 64;
  if (nwords > in.remaining() / 8) throw FormatError("bit array exceeds payload");
  std::vector<std::uint64_t> words(nwords);
  for (auto& w : words) w = in.u64();
  if (length % 64 != 0 && nwords > 0 && (words.back() >> (length % 64)) != 0) {
    throw FormatError("bit array padding not zero");
  }
  return BitArray(std::move(words), length);
}

}  // namespace rfmx
