#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rfmx/bwtinv.hpp"
#include "rfmx/fmindex.hpp"
#include "rfmx/relcount.hpp"

namespace rfmx {

inline constexpr std::uint32_t kContainerVersion = 1;

// Layout: "RFMX" | version u32 | count u32 | count x (tag[4], offset u64,
// length u64) | payloads | FNV-1a digest u64 of everything before it.
struct Section {
  std::string tag;  // exactly 4 bytes
  std::vector<std::uint8_t> payload;
};

std::vector<std::uint8_t> pack_container(const std::vector<Section>& sections);
/// Throws FormatError on bad magic, version, table, or digest.
std::vector<Section> unpack_container(std::span<const std::uint8_t> bytes);
const Section* find_section(const std::vector<Section>& sections, std::string_view tag);

enum class IndexKind : std::uint8_t { standalone = 0, relative = 1 };

struct Meta {
  IndexKind kind = IndexKind::standalone;
  Alphabet alphabet;
  std::uint64_t length = 0;
  std::uint64_t reference_digest = 0;

  std::vector<std::uint8_t> serialize() const;
  static Meta deserialize(std::span<const std::uint8_t> bytes);
};

/// A loaded container. For a standalone index `fm` is the index itself;
/// for a relative one it is the supplied reference.
struct IndexFile {
  Meta meta;
  std::shared_ptr<const FMIndex> fm;
  std::optional<RelativeIndex> rel;
  std::optional<RelativeSample> inv;
  std::map<std::string, std::uint64_t> section_bytes;

  bool relative() const { return meta.kind == IndexKind::relative; }
  std::uint64_t length() const { return meta.length; }
  std::uint64_t count(std::string_view pattern) const;
  bool can_locate() const { return !relative() || inv.has_value(); }
  /// Throws std::logic_error for relative indexes without INV1.
  std::vector<std::uint64_t> locate(std::string_view pattern) const;
};

/// Content digest of a reference index (digest of its FMI1 payload).
std::uint64_t reference_digest(const FMIndex& fm);

std::vector<std::uint8_t> encode_standalone(const FMIndex& fm);
std::vector<std::uint8_t> encode_relative(const FMIndex& ref, const RelativeIndex& rel,
                                          const RelativeSample* inv);

/// Relative containers need `ref`; a digest mismatch throws
/// FormatError("reference mismatch").
IndexFile decode_index(std::span<const std::uint8_t> bytes,
                       std::shared_ptr<const FMIndex> ref = nullptr);

/// Throws InputError on I/O failure.
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);
IndexFile load_index(const std::string& path, std::shared_ptr<const FMIndex> ref = nullptr);

}  // namespace rfmx
