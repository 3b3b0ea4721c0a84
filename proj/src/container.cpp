#include "rfmx/container.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "rfmx/serialize.hpp"

namespace rfmx {

namespace {

constexpr char kMagic[4] = {'R', 'F', 'M', 'X'};
constexpr std::size_t kHeaderBytes = 12;
constexpr std::size_t kEntryBytes = 20;
constexpr std::uint8_t kNoCatchAll = 0xFF;

std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace

std::vector<std::uint8_t> pack_container(const std::vector<Section>& sections) {
  ByteWriter w;
  w.raw(as_bytes(std::string_view(kMagic, 4)));
  w.u32(kContainerVersion);
  w.u32(static_cast<std::uint32_t>(sections.size()));
  std::uint64_t offset = kHeaderBytes + kEntryBytes * sections.size();
  for (const auto& s : sections) {
    if (s.tag.size() != 4) throw std::invalid_argument("section tag must be 4 bytes");
    w.raw(as_bytes(s.tag));
    w.u64(offset);
    w.u64(s.payload.size());
    offset += s.payload.size();
  }
  for (const auto& s : sections) w.raw(s.payload);
  const std::uint64_t digest = digest64(w.bytes());
  w.u64(digest);
  return std::move(w).take();
}

std::vector<Section> unpack_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes + 8) throw FormatError("container truncated");
  const auto body = bytes.first(bytes.size() - 8);
  ByteReader footer(bytes.last(8));
  if (footer.u64() != digest64(body)) throw FormatError("container digest mismatch");

  ByteReader r(body);
  if (std::memcmp(r.raw(4).data(), kMagic, 4) != 0) throw FormatError("bad magic");
  const std::uint32_t version = r.u32();
  if (version != kContainerVersion) throw FormatError("unsupported container version");
  const std::uint32_t count = r.u32();
  if (count > r.remaining() / kEntryBytes) throw FormatError("section table truncated");

  struct Entry {
    std::string tag;
    std::uint64_t offset, length;
  };
  std::vector<Entry> entries(count);
  for (auto& e : entries) {
    const auto tag = r.raw(4);
    e.tag.assign(tag.begin(), tag.end());
    e.offset = r.u64();
    e.length = r.u64();
  }
  const std::uint64_t payload_start = kHeaderBytes + kEntryBytes * std::uint64_t{count};
  std::vector<std::pair<std::uint64_t, std::uint64_t>> spans;
  std::vector<Section> out;
  for (const auto& e : entries) {
    if (e.offset < payload_start || e.offset > body.size() || e.length > body.size() - e.offset) {
      throw FormatError("section out of bounds");
    }
    spans.emplace_back(e.offset, e.length);
    const auto payload = body.subspan(e.offset, e.length);
    out.push_back({e.tag, {payload.begin(), payload.end()}});
  }
  std::sort(spans.begin(), spans.end());
  for (std::size_t k = 1; k < spans.size(); ++k) {
    if (spans[k - 1].first + spans[k - 1].second > spans[k].first) {
      throw FormatError("overlapping sections");
    }
  }
  return out;
}

const Section* find_section(const std::vector<Section>& sections, std::string_view tag) {
  for (const auto& s : sections) {
    if (s.tag == tag) return &s;
  }
  return nullptr;
}

std::vector<std::uint8_t> Meta::serialize() const {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(kind));
  w.u8(static_cast<std::uint8_t>(alphabet.kind()));
  const auto bytes = alphabet.bytes();
  w.u16(static_cast<std::uint16_t>(bytes.size()));
  w.raw(bytes);
  w.u8(alphabet.catch_all() ? *alphabet.catch_all() : kNoCatchAll);
  w.u64(length);
  w.u64(reference_digest);
  return std::move(w).take();
}

Meta Meta::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  Meta m;
  const std::uint8_t kind = r.u8();
  const std::uint8_t akind = r.u8();
  if (kind > 1 || akind > 1) throw FormatError("META kind out of range");
  m.kind = static_cast<IndexKind>(kind);
  const std::uint16_t count = r.u16();
  if (count > 250) throw FormatError("META alphabet too large");
  const auto raw = r.raw(count);
  std::vector<std::uint8_t> alpha(raw.begin(), raw.end());
  const std::uint8_t catch_all = r.u8();
  m.length = r.u64();
  m.reference_digest = r.u64();
  if (!r.done()) throw FormatError("trailing bytes in META");
  if (!std::is_sorted(alpha.begin(), alpha.end()) ||
      std::adjacent_find(alpha.begin(), alpha.end()) != alpha.end()) {
    throw FormatError("META alphabet not strictly ordered");
  }
  if (catch_all != kNoCatchAll && (catch_all == 0 || catch_all > count)) {
    throw FormatError("META catch-all out of range");
  }
  m.alphabet = Alphabet::from_parts(
      static_cast<AlphabetKind>(akind), std::move(alpha),
      catch_all == kNoCatchAll ? std::nullopt : std::optional<Symbol>(catch_all));
  return m;
}

std::uint64_t IndexFile::count(std::string_view pattern) const {
  return relative() ? rel->count(pattern) : fm->count(pattern);
}

std::vector<std::uint64_t> IndexFile::locate(std::string_view pattern) const {
  if (!relative()) return fm->locate(pattern);
  if (!inv) throw std::logic_error("relative index has no locate support");
  std::vector<Symbol> codes;
  if (!encode_pattern(meta.alphabet, pattern, codes)) return {};
  return rel_locate(*rel, *inv, rel->find(codes));
}

std::uint64_t reference_digest(const FMIndex& fm) { return digest64(fm.serialize()); }

std::vector<std::uint8_t> encode_standalone(const FMIndex& fm) {
  Meta meta;
  meta.kind = IndexKind::standalone;
  meta.alphabet = fm.alphabet();
  meta.length = fm.length();
  auto fmi = fm.serialize();
  meta.reference_digest = digest64(fmi);
  return pack_container({{"META", meta.serialize()}, {"FMI1", std::move(fmi)}});
}

std::vector<std::uint8_t> encode_relative(const FMIndex& ref, const RelativeIndex& rel,
                                          const RelativeSample* inv) {
  Meta meta;
  meta.kind = IndexKind::relative;
  meta.alphabet = ref.alphabet();
  meta.length = rel.length();
  meta.reference_digest = reference_digest(ref);
  std::vector<Section> sections{{"META", meta.serialize()},
                                {"RFM1", rel.serialize(meta.reference_digest)}};
  if (inv) sections.push_back({"INV1", inv->serialize(meta.reference_digest)});
  return pack_container(sections);
}

IndexFile decode_index(std::span<const std::uint8_t> bytes, std::shared_ptr<const FMIndex> ref) {
  const auto sections = unpack_container(bytes);
  IndexFile f;
  for (const auto& s : sections) f.section_bytes[s.tag] += s.payload.size();
  const Section* meta = find_section(sections, "META");
  if (!meta) throw FormatError("missing META section");
  f.meta = Meta::deserialize(meta->payload);

  if (!f.relative()) {
    const Section* fmi = find_section(sections, "FMI1");
    if (!fmi) throw FormatError("missing FMI1 section");
    if (digest64(fmi->payload) != f.meta.reference_digest) {
      throw FormatError("FMI1 content digest mismatch");
    }
    auto fm = std::make_shared<FMIndex>(FMIndex::deserialize(fmi->payload, f.meta.alphabet));
    if (fm->length() != f.meta.length) throw FormatError("META length mismatch");
    f.fm = std::move(fm);
    return f;
  }

  if (!ref) throw FormatError("relative index requires a reference");
  const std::uint64_t digest = reference_digest(*ref);
  if (digest != f.meta.reference_digest || !(ref->alphabet() == f.meta.alphabet)) {
    throw FormatError("reference mismatch");
  }
  const Section* rfm = find_section(sections, "RFM1");
  if (!rfm) throw FormatError("missing RFM1 section");
  f.fm = ref;
  f.rel = RelativeIndex::deserialize(rfm->payload, ref, digest);
  if (f.rel->length() != f.meta.length) throw FormatError("META length mismatch");
  if (const Section* inv = find_section(sections, "INV1")) {
    f.inv = RelativeSample::deserialize(inv->payload, ref, digest);
    if (f.inv->m2().size() != f.rel->rows()) throw FormatError("INV1 length mismatch");
  }
  return f;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("write failed: " + path);
}

IndexFile load_index(const std::string& path, std::shared_ptr<const FMIndex> ref) {
  const std::string data = read_file(path);
  return decode_index(as_bytes(data), std::move(ref));
}

}  // namespace rfmx
