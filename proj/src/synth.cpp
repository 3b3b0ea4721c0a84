#include "rfmx/synth.hpp"

#include <algorithm>
#include <random>

namespace rfmx {

namespace {

constexpr char kBases[4] = {'A', 'C', 'G', 'T'};

char random_base(std::mt19937_64& rng) { return kBases[rng() & 3]; }

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::string random_dna(std::uint64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string s(n, 'A');
  for (auto& c : s) c = random_base(rng);
  return s;
}

std::string mutate_dna(const std::string& s, const MutationRates& rates, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string out;
  out.reserve(s.size() + s.size() / 8);
  for (char c : s) {
    if (unit(rng) < rates.insertion) out.push_back(random_base(rng));
    const double u = unit(rng);
    if (u < rates.deletion) continue;
    if (u < rates.deletion + rates.substitution) {
      char d = c;
      while (d == c) d = random_base(rng);
      out.push_back(d);
    } else {
      out.push_back(c);
    }
  }
  if (out.empty()) out.push_back(random_base(rng));
  return out;
}

std::vector<std::string> random_patterns(const std::string& text, std::uint64_t count,
                                         std::uint64_t min_len, std::uint64_t max_len,
                                         std::uint64_t seed, double substring_share) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t len = min_len + rng() % (max_len - min_len + 1);
    if (unit(rng) < substring_share && len <= text.size()) {
      const std::uint64_t start = rng() % (text.size() - len + 1);
      out.push_back(text.substr(start, len));
    } else {
      std::string p(len, 'A');
      for (auto& c : p) c = random_base(rng);
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace rfmx
