#include "rfmx/textcore.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace rfmx {

namespace {

constexpr std::size_t kMaxDistinctBytes = 250;

std::uint8_t upper(std::uint8_t c) {
  return static_cast<std::uint8_t>(std::toupper(c));
}

}  // namespace

Alphabet::Alphabet() : byte_of_{0} { code_of_.fill(-1); }

Alphabet Alphabet::dna() {
  return from_parts(AlphabetKind::dna, {'A', 'C', 'G', 'N', 'T'}, Symbol{4});
}

Alphabet Alphabet::from_bytes(std::string_view text) {
  std::array<bool, 256> seen{};
  for (unsigned char c : text) seen[c] = true;
  std::vector<std::uint8_t> bytes;
  for (unsigned b = 0; b < 256; ++b) {
    if (seen[b]) bytes.push_back(static_cast<std::uint8_t>(b));
  }
  if (bytes.size() > kMaxDistinctBytes) throw InputError("alphabet overflow");
  return from_parts(AlphabetKind::general, std::move(bytes), std::nullopt);
}

Alphabet Alphabet::from_parts(AlphabetKind kind, std::vector<std::uint8_t> bytes,
                              std::optional<Symbol> catch_all) {
  if (bytes.size() > kMaxDistinctBytes) throw InputError("alphabet overflow");
  if (!std::is_sorted(bytes.begin(), bytes.end()) ||
      std::adjacent_find(bytes.begin(), bytes.end()) != bytes.end()) {
    throw InputError("alphabet bytes must be strictly increasing");
  }
  if (catch_all && (*catch_all == kSentinel || *catch_all > bytes.size())) {
    throw InputError("catch-all symbol out of alphabet");
  }
  Alphabet a;
  a.kind_ = kind;
  a.catch_all_ = catch_all;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    a.code_of_[bytes[i]] = static_cast<std::int16_t>(i + 1);
    a.byte_of_.push_back(bytes[i]);
  }
  return a;
}

std::optional<Symbol> Alphabet::find(std::uint8_t byte) const {
  if (kind_ == AlphabetKind::dna) byte = upper(byte);
  const auto code = code_of_[byte];
  if (code < 0) return std::nullopt;
  return static_cast<Symbol>(code);
}

Symbol Alphabet::encode(std::uint8_t byte) const {
  if (auto code = find(byte)) return *code;
  if (catch_all_) return *catch_all_;
  throw InputError("byte " + std::to_string(byte) + " not in alphabet");
}

char Alphabet::decode(Symbol code) const {
  if (code == kSentinel) return '$';
  return static_cast<char>(byte_of_.at(code));
}

Text::Text(std::vector<Symbol> symbols, Alphabet alphabet)
    : symbols_(std::move(symbols)), alphabet_(std::move(alphabet)) {
  if (symbols_.empty() || symbols_.back() != kSentinel) {
    throw InputError("text must end with the sentinel");
  }
  for (std::size_t i = 0; i + 1 < symbols_.size(); ++i) {
    if (symbols_[i] == kSentinel || symbols_[i] >= alphabet_.size()) {
      throw InputError("text symbol out of alphabet");
    }
  }
}

std::string Text::to_string() const {
  std::string out;
  out.reserve(length());
  for (std::size_t i = 0; i + 1 < symbols_.size(); ++i) {
    out.push_back(alphabet_.decode(symbols_[i]));
  }
  return out;
}

std::string preprocess_input(std::string_view bytes, InputFormat format) {
  std::string out;
  if (format == InputFormat::plain) {
    out.assign(bytes);
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
    return out;
  }
  // FASTA: first record only.
  bool in_record = false;
  bool seen_header = false;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view line = bytes.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.front() == '>') {
      if (seen_header) break;
      seen_header = true;
      in_record = true;
      continue;
    }
    if (!in_record && !line.empty()) in_record = true;  // headerless FASTA
    for (unsigned char c : line) {
      if (std::isspace(c)) continue;
      out.push_back(static_cast<char>(upper(c)));
    }
  }
  return out;
}

namespace {

Text encode_text(const std::string& residues, const Alphabet& alphabet) {
  if (residues.empty()) throw InputError("empty input");
  std::vector<Symbol> symbols;
  symbols.reserve(residues.size() + 1);
  for (unsigned char c : residues) symbols.push_back(alphabet.encode(c));
  symbols.push_back(kSentinel);
  return Text(std::move(symbols), alphabet);
}

}  // namespace

Text load_text(std::string_view bytes, InputFormat format, AlphabetKind kind) {
  std::string residues = preprocess_input(bytes, format);
  if (residues.empty()) throw InputError("empty input");
  Alphabet alphabet =
      kind == AlphabetKind::dna ? Alphabet::dna() : Alphabet::from_bytes(residues);
  return encode_text(residues, alphabet);
}

Text load_text(std::string_view bytes, InputFormat format, const Alphabet& alphabet) {
  return encode_text(preprocess_input(bytes, format), alphabet);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw InputError("read error on " + path);
  return std::move(ss).str();
}

std::vector<std::uint64_t> SuffixArray::inverse() const {
  std::vector<std::uint64_t> inv(order_.size());
  for (std::size_t r = 0; r < order_.size(); ++r) inv[order_[r] - 1] = r + 1;
  return inv;
}

SuffixArray build_suffix_array(const Text& text) {
  const auto symbols = text.symbols();
  std::vector<std::uint32_t> seq(symbols.begin(), symbols.end());
  auto order = sais(seq, text.alphabet().size());
  for (auto& v : order) ++v;
  return SuffixArray(std::move(order));
}

std::vector<Symbol> bwt(const Text& text, const SuffixArray& sa) {
  const auto symbols = text.symbols();
  std::vector<Symbol> out(symbols.size());
  for (std::size_t r = 0; r < out.size(); ++r) {
    const std::uint64_t start = sa.order()[r];
    out[r] = start == 1 ? symbols.back() : symbols[start - 2];
  }
  return out;
}

CumulativeCounts char_counts(std::span<const Symbol> symbols, unsigned sigma) {
  std::vector<std::uint64_t> before(sigma + 1, 0);
  for (Symbol s : symbols) ++before.at(s + 1);
  for (unsigned a = 1; a <= sigma; ++a) before[a] += before[a - 1];
  return CumulativeCounts(std::move(before));
}

CumulativeCounts char_counts(const Text& text) {
  return char_counts(text.symbols(), text.alphabet().size());
}

}  // namespace rfmx
