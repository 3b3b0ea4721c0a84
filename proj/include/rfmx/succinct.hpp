#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rfmx/textcore.hpp"

namespace rfmx {

class ByteWriter;
class ByteReader;

/// Immutable bit sequence with rank/select. Positions are 1-based:
/// rank(v, i) counts v-bits among positions 1..i, select(v, j) is the
/// position of the j-th v-bit.
///
/// Rank directory: absolute counts every 65536 bits, 16-bit relative counts
/// every 512 bits. Select binary-searches the directory.
class BitArray {
 public:
  static constexpr std::uint64_t kBlockBits = 512;
  static constexpr std::uint64_t kSuperBits = 65536;

  BitArray() { build_directory(); }
  BitArray(std::vector<std::uint64_t> words, std::uint64_t length);

  /// Parses a string of '0'/'1' characters.
  static BitArray from_string(std::string_view bits);

  std::uint64_t size() const { return length_; }
  bool get(std::uint64_t pos) const;
  bool operator[](std::uint64_t pos) const { return get(pos); }

  std::uint64_t rank1(std::uint64_t i) const;
  std::uint64_t rank0(std::uint64_t i) const { return checked(i) - rank1(i); }
  std::uint64_t rank(bool v, std::uint64_t i) const { return v ? rank1(i) : rank0(i); }

  std::uint64_t select1(std::uint64_t j) const;
  std::uint64_t select0(std::uint64_t j) const;
  std::uint64_t select(bool v, std::uint64_t j) const { return v ? select1(j) : select0(j); }

  std::uint64_t ones() const { return ones_; }
  std::uint64_t zeros() const { return length_ - ones_; }
  std::uint64_t count(bool v) const { return v ? ones_ : zeros(); }

  std::span<const std::uint64_t> words() const { return words_; }
  /// Serialized payload size: 64-bit length plus the padded words.
  std::uint64_t payload_bytes() const { return 8 + 8 * words_.size(); }

  void write(ByteWriter& out) const;
  static BitArray read(ByteReader& in);

  bool operator==(const BitArray& other) const {
    return length_ == other.length_ && words_ == other.words_;
  }

 private:
  std::uint64_t checked(std::uint64_t i) const;
  void build_directory();
  std::uint64_t ones_before_block(std::uint64_t block) const {
    return super_[block / (kSuperBits / kBlockBits)] + block_[block];
  }

  std::vector<std::uint64_t> words_;
  std::uint64_t length_ = 0;
  std::uint64_t ones_ = 0;
  std::vector<std::uint64_t> super_;
  std::vector<std::uint16_t> block_;
};

/// Mutable helper for assembling a BitArray. Positions are 1-based.
class BitBuilder {
 public:
  explicit BitBuilder(std::uint64_t length)
      : length_(length), words_((length + 63) / 64, 0) {}

  void set(std::uint64_t pos, bool value = true) {
    const std::uint64_t i = pos - 1;
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) {
      words_[i / 64] |= mask;
    } else {
      words_[i / 64] &= ~mask;
    }
  }
  BitArray build() && { return BitArray(std::move(words_), length_); }

 private:
  std::uint64_t length_;
  std::vector<std::uint64_t> words_;
};

/// Balanced wavelet tree stored level by level. Supports access and
/// per-symbol rank in O(log sigma) bit-array operations.
class WaveletSequence {
 public:
  WaveletSequence() : WaveletSequence(std::span<const Symbol>{}, 1) {}
  WaveletSequence(std::span<const Symbol> symbols, unsigned sigma);

  std::uint64_t size() const { return length_; }
  unsigned sigma() const { return sigma_; }
  unsigned levels() const { return static_cast<unsigned>(levels_.size()); }

  /// Symbol at 1-based position i.
  Symbol access(std::uint64_t i) const;
  /// Occurrences of `a` among positions 1..i.
  std::uint64_t rank(Symbol a, std::uint64_t i) const;
  /// (S[i], rank_{S[i]}(i)) in a single descent.
  std::pair<Symbol, std::uint64_t> access_rank(std::uint64_t i) const;

  /// Decodes the whole sequence.
  std::vector<Symbol> to_vector() const;

  /// Bits of level payload (length * levels).
  std::uint64_t payload_bits() const { return length_ * levels(); }
  std::uint64_t payload_bytes() const;

  void write(ByteWriter& out) const;
  static WaveletSequence read(ByteReader& in);

  bool operator==(const WaveletSequence& other) const {
    return length_ == other.length_ && sigma_ == other.sigma_ && levels_ == other.levels_;
  }

 private:
  WaveletSequence(std::uint64_t length, unsigned sigma, std::vector<BitArray> levels)
      : length_(length), sigma_(sigma), levels_(std::move(levels)) {}

  std::uint64_t length_ = 0;
  unsigned sigma_ = 1;
  std::vector<BitArray> levels_;
};

}  // namespace rfmx
