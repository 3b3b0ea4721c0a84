// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "rfmx/bwtinv.hpp"
#include "rfmx/commands.hpp"
#include "rfmx/container.hpp"
#include "rfmx/oracle.hpp"
#include "rfmx/serialize.hpp"
#include "rfmx/synth.hpp"

using namespace rfmx;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Detail {
 public:
  template <class T>
  Detail& operator()(const char* key, const T& value) {
    if (!s_.str().empty()) s_ << ' ';
    s_ << key << '=' << value;
    return *this;
  }
  std::string str() const { return s_.str(); }

 private:
  std::ostringstream s_;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double took = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = limit_s <= 0 || took < limit_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  char timing[96];
  if (limit_s > 0) {
    std::snprintf(timing, sizeof timing, "%.2fs < %.0fs%s", took, limit_s, in_time ? "" : " EXCEEDED");
  } else {
    std::snprintf(timing, sizeof timing, "%.2fs", took);
  }
  std::printf("%s [%d] %s: %s (%s)\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), timing);
  std::fflush(stdout);
}

Text dna(const std::string& s) { return load_text(s, InputFormat::plain, AlphabetKind::dna); }

std::shared_ptr<const FMIndex> shared_index(const std::string& s, std::uint64_t rate = kDefaultSampleRate) {
  return std::make_shared<const FMIndex>(FMIndex::build(dna(s), rate));
}

// S1 of length 1e5 and its 0.5% substitution + 0.1% indel mutant.
struct CountingPair {
  std::string s1, s2;
};

const CountingPair& counting_pair() {
  static const CountingPair p = [] {
    CountingPair c;
    c.s1 = random_dna(100000, 2024);
    c.s2 = mutate_dna(c.s1, {0.005, 0.0005, 0.0005}, 2025);
    return c;
  }();
  return p;
}

Outcome counting_equivalence() {
  const auto& [s1, s2] = counting_pair();
  const auto ref = shared_index(s1);
  const RelativeBuild rb = build_relative(ref, dna(s2), RelativeMode::lcs);
  const FMIndex own = FMIndex::build(dna(s2));
  const auto patterns = random_patterns(s2, 1000, 1, 56, 7);
  std::uint64_t mismatches = 0, occurrences = 0;
  for (const auto& p : patterns) {
    const std::uint64_t naive = oracle::naive_count(s2, p);
    occurrences += naive;
    if (rb.rel.count(p) != naive || own.count(p) != naive) ++mismatches;
  }
  return {mismatches == 0,
          Detail()("patterns", patterns.size())("occurrences", occurrences)("mismatches", mismatches).str()};
}

Outcome rank_equivalence() {
  const auto& [s1, s2] = counting_pair();
  const auto ref = shared_index(s1);
  const RelativeBuild rb = build_relative(ref, dna(s2), RelativeMode::lcs);
  const Text t2 = dna(s2);
  const auto b2 = bwt(t2, build_suffix_array(t2));
  const unsigned sigma = t2.alphabet().size();
  std::vector<std::vector<std::uint64_t>> prefix(sigma, std::vector<std::uint64_t>(b2.size() + 1, 0));
  for (std::size_t k = 0; k < b2.size(); ++k) {
    for (unsigned a = 0; a < sigma; ++a) prefix[a][k + 1] = prefix[a][k] + (b2[k] == a);
  }
  std::mt19937_64 rng(11);
  std::uint64_t checks = 0, mismatches = 0;
  for (int q = 0; q < 10000; ++q) {
    const std::uint64_t i = rng() % (b2.size() + 1);
    for (unsigned a = 0; a < sigma; ++a) {
      ++checks;
      if (rb.rel.rank(static_cast<Symbol>(a), i) != prefix[a][i]) ++mismatches;
    }
  }
  return {mismatches == 0, Detail()("positions", 10000)("symbols", sigma)("checks", checks)("mismatches", mismatches).str()};
}

Outcome partitioned_quality() {
  double ratio_sum = 0;
  bool valid = true;
  std::ostringstream per_seed;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::string s1 = random_dna(50000, 300 + seed);
    const std::string s2 = mutate_dna(s1, {0.005, 0.0, 0.0}, 400 + seed);
    const FMIndex ix1 = FMIndex::build(dna(s1)), ix2 = FMIndex::build(dna(s2));
    const Alignment a = partitioned_bwt_lcs(ix1, ix2);
    const auto b1 = ix1.bwt().to_vector(), b2 = ix2.bwt().to_vector();
    valid = valid && is_common_subsequence(b1, b2, a);
    const std::uint64_t exact = oracle::bitparallel_lcs_length(b1, b2);
    const double ratio = static_cast<double>(a.size()) / static_cast<double>(exact);
    ratio_sum += ratio;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.4f", seed > 1 ? "," : "", ratio);
    per_seed << buf;
  }
  const double mean = ratio_sum / 5;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", mean);
  return {valid && mean >= 0.90,
          Detail()("mean_ratio", buf)("min_required", "0.90")("per_seed", per_seed.str())("all_valid", valid).str()};
}

Outcome invariant_vs_lcs() {
  bool ok = true;
  std::ostringstream g_share, lcs_share;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::string s1 = random_dna(100000, 500 + seed);
    const std::string s2 = mutate_dna(s1, {0.01, 0.0005, 0.0005}, 600 + seed);
    const Text t1 = dna(s1), t2 = dna(s2);
    const InvariantAlignment g = invariant_subsequence(t1, t2);
    const FMIndex ix1 = FMIndex::build(t1), ix2 = FMIndex::build(t2);
    const Alignment lcs = partitioned_bwt_lcs(ix1, ix2);
    const double gs = static_cast<double>(g.size()) / static_cast<double>(s1.size() + 1);
    const double ls = static_cast<double>(lcs.size()) / static_cast<double>(s1.size() + 1);
    ok = ok && gs >= 0.80 && g.size() <= lcs.size();
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%.4f", seed > 1 ? "," : "", gs);
    g_share << buf;
    std::snprintf(buf, sizeof buf, "%s%.4f", seed > 1 ? "," : "", ls);
    lcs_share << buf;
  }
  return {ok, Detail()("g_over_n", g_share.str())("lcs_over_n", lcs_share.str())("min_required", "0.80").str()};
}

Outcome locating_equivalence() {
  const auto& [s1, s2] = counting_pair();
  const auto ref = shared_index(s1, 32);
  const RelativeBuild rb = build_relative(ref, dna(s2), RelativeMode::invariant);
  std::uint64_t mismatches = 0, positions = 0;
  const auto patterns = random_patterns(s2, 200, 1, 16, 13);
  for (const auto& p : patterns) {
    std::vector<Symbol> codes;
    const auto expect = oracle::naive_locate(s2, p);
    positions += expect.size();
    if (!encode_pattern(ref->alphabet(), p, codes)) {
      if (!expect.empty()) ++mismatches;
      continue;
    }
    if (rel_locate(rb.rel, *rb.inv, rb.rel.find(codes)) != expect) ++mismatches;
  }
  return {mismatches == 0, Detail()("rate", 32)("patterns", patterns.size())("positions", positions)
                               ("escape_samples", rb.inv->escape_values().size())("mismatches", mismatches).str()};
}

Outcome lemma_checker() {
  std::mt19937_64 rng(17);
  std::uint64_t passed = 0;
  const int pairs = 50;
  for (int k = 0; k < pairs; ++k) {
    const std::uint64_t n = 100 + rng() % 9901;
    const std::string s1 = random_dna(n, rng());
    const double rate = 0.001 * static_cast<double>(1 + rng() % 50);
    const std::string s2 = k % 5 == 4 ? random_dna(100 + rng() % 9901, rng())
                                      : mutate_dna(s1, {rate, rate / 10, rate / 10}, rng());
    const Text t1 = dna(s1), t2 = dna(s2);
    if (check_bwt_invariant(t1, t2, invariant_subsequence(t1, t2))) ++passed;
  }
  return {passed == static_cast<std::uint64_t>(pairs), Detail()("pairs", pairs)("invariant", passed).str()};
}

Outcome reduction_equivalence() {
  std::uint64_t cases = 0, embeds = 0, disagreements = 0;
  for (unsigned n = 1; n <= 6; ++n) {
    std::vector<unsigned> p1(n);
    std::iota(p1.begin(), p1.end(), 1u);
    do {
      for (unsigned m = 1; m <= std::min(n, 4u); ++m) {
        std::vector<unsigned> p2(m);
        std::iota(p2.begin(), p2.end(), 1u);
        do {
          const bool e = oracle::permutation_embeds(p1, p2);
          if (oracle::invariant_a_subsequence_exists(p1, p2) != e) ++disagreements;
          ++cases;
          embeds += e;
        } while (std::next_permutation(p2.begin(), p2.end()));
      }
    } while (std::next_permutation(p1.begin(), p1.end()));
  }
  return {disagreements == 0, Detail()("pairs", cases)("embedding", embeds)("disagreements", disagreements).str()};
}

Outcome space_proportionality() {
  const std::string s1 = random_dna(100000, 700);
  const auto ref = shared_index(s1);
  const std::uint64_t digest = reference_digest(*ref);
  std::vector<std::uint64_t> sizes;
  std::uint64_t standalone_at_half = 0;
  std::ostringstream list;
  for (double rate : {0.001, 0.005, 0.01, 0.02, 0.05}) {
    const std::string s2 = mutate_dna(s1, {rate, 0.0, 0.0}, 701);
    const RelativeBuild rb = build_relative(ref, dna(s2), RelativeMode::lcs);
    sizes.push_back(rb.rel.serialize(digest).size());
    if (rate == 0.005) standalone_at_half = rb.standalone_bytes;
    list << (sizes.size() > 1 ? "," : "") << sizes.back();
  }
  const bool monotone = std::is_sorted(sizes.begin(), sizes.end());
  const double share = static_cast<double>(sizes[1]) / static_cast<double>(standalone_at_half);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", share);
  return {monotone && share <= 0.50,
          Detail()("rfm1_bytes", list.str())("monotone", monotone)("share_at_0.5pct", buf)("max_share", "0.50").str()};
}

Outcome oracle_microsuite() {
  std::mt19937_64 rng(19);
  std::uint64_t failures_seen = 0;
  for (int t = 0; t < 50; ++t) {
    std::string s(1 + rng() % 2000, 'a');
    const unsigned sigma = 1 + rng() % 6;
    for (auto& c : s) c = static_cast<char>('a' + rng() % sigma);
    const Text text = load_text(s, InputFormat::plain, AlphabetKind::general);
    const SuffixArray fast = build_suffix_array(text), slow = oracle::naive_suffix_array(text);
    if (!std::equal(fast.order().begin(), fast.order().end(), slow.order().begin(), slow.order().end())) ++failures_seen;
    const auto back = oracle::invert_bwt(bwt(text, fast), text.alphabet().size());
    if (!std::equal(back.begin(), back.end(), text.symbols().begin(), text.symbols().end())) ++failures_seen;
  }
  for (int t = 0; t < 1000; ++t) {
    TwoChoiceArray a;
    const std::size_t n = rng() % 13;
    for (std::size_t i = 0; i < n; ++i) {
      a.values.push_back({rng() % 3 ? 1 + rng() % 16 : 0, rng() % 3 ? 1 + rng() % 16 : 0});
    }
    if (two_choice_lis(a).size() != oracle::brute_force_two_choice_lis(a)) ++failures_seen;
  }
  for (int t = 0; t < 200; ++t) {
    const unsigned sigma = 1 + rng() % 5;
    std::vector<Symbol> x(rng() % 201), y(rng() % 201);
    for (auto& c : x) c = static_cast<Symbol>(rng() % sigma);
    for (auto& c : y) c = static_cast<Symbol>(rng() % sigma);
    const Alignment a = exact_lcs(x, y);
    if (!is_common_subsequence(x, y, a) || a.size() != oracle::memo_lcs_length(x, y)) ++failures_seen;
  }
  return {failures_seen == 0,
          Detail()("suffix_arrays", 50)("lis_instances", 1000)("lcs_pairs", 200)("failures", failures_seen).str()};
}

Outcome persistence() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("rfmx_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string s1 = random_dna(20000, 800);
  const std::string s2 = mutate_dna(s1, {0.01, 0.001, 0.001}, 801);
  const auto ref = shared_index(s1, 16);
  const RelativeBuild rb = build_relative(ref, dna(s2), RelativeMode::invariant);
  const auto standalone = encode_standalone(*ref);
  const auto relative = encode_relative(*ref, rb.rel, &*rb.inv);
  write_file((dir / "ref.rfmx").string(), standalone);
  write_file((dir / "rel.rfmx").string(), relative);
  const IndexFile loaded_ref = load_index((dir / "ref.rfmx").string());
  const IndexFile loaded_rel = load_index((dir / "rel.rfmx").string(), loaded_ref.fm);
  fs::remove_all(dir);

  const FMIndex own = FMIndex::build(dna(s2), 16);
  std::uint64_t mismatches = 0;
  const auto probes_ref = random_patterns(s1, 500, 1, 24, 802);
  const auto probes_rel = random_patterns(s2, 500, 1, 24, 803);
  for (const auto& p : probes_ref) {
    if (loaded_ref.count(p) != ref->count(p) || loaded_ref.locate(p) != ref->locate(p)) ++mismatches;
  }
  for (const auto& p : probes_rel) {
    if (loaded_rel.count(p) != own.count(p) || loaded_rel.locate(p) != own.locate(p)) ++mismatches;
  }

  std::mt19937_64 rng(804);
  std::uint64_t detected = 0;
  for (int k = 0; k < 100; ++k) {
    const bool rel = k % 2;
    auto bad = rel ? relative : standalone;
    bad[rng() % bad.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    try {
      decode_index(bad, rel ? ref : nullptr);
    } catch (const FormatError&) {
      ++detected;
    }
  }
  return {mismatches == 0 && detected == 100,
          Detail()("probes", probes_ref.size() + probes_rel.size())("mismatches", mismatches)
                  ("corruptions", 100)("detected", detected).str()};
}

}  // namespace

int main() {
  criterion(1, "counting equivalence", 60, counting_equivalence);
  criterion(2, "rank formula equivalence", 30, rank_equivalence);
  criterion(3, "partitioned LCS quality", 120, partitioned_quality);
  criterion(4, "invariant subsequence vs partitioned LCS", 300, invariant_vs_lcs);
  criterion(5, "locating equivalence", 120, locating_equivalence);
  criterion(6, "invariance checker on heuristic output", 0, lemma_checker);
  criterion(7, "reduction equivalence", 60, reduction_equivalence);
  criterion(8, "space proportionality", 300, space_proportionality);
  criterion(9, "oracle microsuite", 60, oracle_microsuite);
  criterion(10, "persistence", 0, persistence);
  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
