#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rfmx {

using Symbol = std::uint8_t;

inline constexpr Symbol kSentinel = 0;

/// Thrown for malformed or unusable input text.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InputFormat { plain, fasta };

enum class AlphabetKind : std::uint8_t { general = 0, dna = 1 };

/// Dense mapping between input bytes and symbol codes. Code 0 is the
/// sentinel and is produced by no input byte; code order equals byte order.
class Alphabet {
 public:
  Alphabet();

  /// Fixed DNA alphabet $ < A < C < G < N < T. Unknown bytes map to N.
  static Alphabet dna();
  /// Byte-value ordered alphabet over the distinct bytes of `text`.
  static Alphabet from_bytes(std::string_view text);
  /// Rebuilds an alphabet from its serialized parts.
  static Alphabet from_parts(AlphabetKind kind, std::vector<std::uint8_t> bytes,
                             std::optional<Symbol> catch_all);

  AlphabetKind kind() const { return kind_; }
  /// Number of codes including the sentinel.
  unsigned size() const { return static_cast<unsigned>(byte_of_.size()); }
  std::optional<Symbol> catch_all() const { return catch_all_; }

  /// Code of `byte` if the byte belongs to the alphabet.
  std::optional<Symbol> find(std::uint8_t byte) const;
  /// Code of `byte`, falling back to the catch-all symbol.
  /// Throws InputError when the byte is unknown and there is no catch-all.
  Symbol encode(std::uint8_t byte) const;
  /// Byte for a non-sentinel code; '$' for the sentinel.
  char decode(Symbol code) const;

  /// Input bytes for codes 1..size()-1.
  std::span<const std::uint8_t> bytes() const {
    return std::span<const std::uint8_t>(byte_of_).subspan(1);
  }

  bool operator==(const Alphabet& other) const = default;

 private:
  AlphabetKind kind_ = AlphabetKind::general;
  std::array<std::int16_t, 256> code_of_{};
  std::vector<std::uint8_t> byte_of_;
  std::optional<Symbol> catch_all_;
};

/// Sentinel-terminated symbol sequence. symbols().size() == length() + 1.
class Text {
 public:
  Text() = default;
  Text(std::vector<Symbol> symbols, Alphabet alphabet);

  std::uint64_t length() const { return symbols_.size() - 1; }
  std::span<const Symbol> symbols() const { return symbols_; }
  const Alphabet& alphabet() const { return alphabet_; }
  /// 1-based access over [1, length()+1].
  Symbol at(std::uint64_t pos) const { return symbols_.at(pos - 1); }
  /// The user text (without sentinel) decoded back to bytes.
  std::string to_string() const;

 private:
  std::vector<Symbol> symbols_{kSentinel};
  Alphabet alphabet_;
};

/// Strips FASTA framing (first record only) or a trailing line break in
/// plain mode, returning the residue bytes.
std::string preprocess_input(std::string_view bytes, InputFormat format);

/// Ingests `bytes`, building the alphabet from scratch.
Text load_text(std::string_view bytes, InputFormat format,
               AlphabetKind kind = AlphabetKind::general);
/// Ingests `bytes` against an existing alphabet (e.g. a reference's).
Text load_text(std::string_view bytes, InputFormat format,
               const Alphabet& alphabet);

/// Reads a whole file into memory. Throws InputError on failure.
std::string read_file(const std::string& path);

/// Suffix order of a sentinel-terminated text. Values are 1-based text
/// positions; rank r (1-based) holds the start of the r-th smallest suffix.
class SuffixArray {
 public:
  SuffixArray() = default;
  explicit SuffixArray(std::vector<std::uint64_t> order)
      : order_(std::move(order)) {}

  std::uint64_t size() const { return order_.size(); }
  std::uint64_t at(std::uint64_t rank) const { return order_[rank - 1]; }
  std::span<const std::uint64_t> order() const { return order_; }
  /// inverse()[p - 1] is the rank of the suffix starting at p.
  std::vector<std::uint64_t> inverse() const;

 private:
  std::vector<std::uint64_t> order_;
};

/// SA-IS over an integer sequence whose last element is a unique 0 and
/// whose values lie in [0, alphabet_size). Returns 0-based starts.
std::vector<std::uint64_t> sais(std::span<const std::uint32_t> seq,
                                std::uint32_t alphabet_size);

SuffixArray build_suffix_array(const Text& text);

/// BWT of the sentinel-terminated text, length n+1.
std::vector<Symbol> bwt(const Text& text, const SuffixArray& sa);

/// before(a) = number of symbols (sentinel included) strictly smaller than a,
/// for a in [0, sigma]; before(sigma) is the total length.
class CumulativeCounts {
 public:
  CumulativeCounts() = default;
  explicit CumulativeCounts(std::vector<std::uint64_t> before)
      : before_(std::move(before)) {}

  std::uint64_t before(Symbol a) const { return before_.at(a); }
  std::uint64_t total() const { return before_.back(); }
  unsigned sigma() const { return static_cast<unsigned>(before_.size() - 1); }
  /// Number of occurrences of `a`.
  std::uint64_t frequency(Symbol a) const { return before_.at(a + 1) - before_.at(a); }
  std::span<const std::uint64_t> values() const { return before_; }

  bool operator==(const CumulativeCounts&) const = default;

 private:
  std::vector<std::uint64_t> before_{0};
};

CumulativeCounts char_counts(std::span<const Symbol> symbols, unsigned sigma);
CumulativeCounts char_counts(const Text& text);

}  // namespace rfmx
