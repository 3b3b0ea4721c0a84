#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rfmx/textcore.hpp"

namespace testutil {

inline rfmx::Text general(std::string_view s) {
  return rfmx::load_text(s, rfmx::InputFormat::plain, rfmx::AlphabetKind::general);
}

inline rfmx::Text with(std::string_view s, const rfmx::Alphabet& a) {
  return rfmx::load_text(s, rfmx::InputFormat::plain, a);
}

inline rfmx::Text dna(std::string_view s) { return with(s, rfmx::Alphabet::dna()); }

inline std::vector<rfmx::Symbol> codes(std::string_view s, const rfmx::Alphabet& a) {
  std::vector<rfmx::Symbol> out;
  for (char c : s) out.push_back(c == '$' ? rfmx::kSentinel : a.encode(static_cast<std::uint8_t>(c)));
  return out;
}

inline std::string decode(const std::vector<rfmx::Symbol>& v, const rfmx::Alphabet& a) {
  std::string s;
  for (auto c : v) s.push_back(a.decode(c));
  return s;
}

inline std::string strip_sentinel(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), '$'), s.end());
  return s;
}

// The two running example strings.
inline constexpr std::string_view kS1 = "AAGTTGAGAGTGAGT";
inline constexpr std::string_view kS2 = "AGAGAGTCGAAGTT";

}  // namespace testutil
