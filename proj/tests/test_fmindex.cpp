#include "doctest.h"

#include <random>
#include <set>

#include "helpers.hpp"
#include "rfmx/fmindex.hpp"
#include "rfmx/oracle.hpp"
#include "rfmx/serialize.hpp"
#include "rfmx/synth.hpp"

using namespace rfmx;
using testutil::general;

TEST_CASE("backward_extend examples") {
  const FMIndex ix = FMIndex::build(general("ABAB"));
  const SuffixRange b = ix.backward_extend(ix.full_range(), 2);
  CHECK(b == SuffixRange{4, 5});
  CHECK(ix.backward_extend(b, 1) == SuffixRange{2, 3});
  CHECK(ix.backward_extend(SuffixRange{}, 1).empty());
  CHECK(ix.backward_extend(ix.full_range(), kSentinel) == SuffixRange{1, 1});
}

TEST_CASE("count examples") {
  const FMIndex ix = FMIndex::build(general("ABAB"));
  CHECK(ix.count("AB") == 2);
  CHECK(ix.count("ABAB") == 1);
  CHECK(ix.count("BB") == 0);
  CHECK(ix.count("ABABA") == 0);
  CHECK(ix.count("AZ") == 0);

  const FMIndex s1 = FMIndex::build(testutil::dna(testutil::kS1));
  CHECK(s1.count("AG") == 4);
}

TEST_CASE("lf examples") {
  const FMIndex ix = FMIndex::build(general("ABAB"));
  CHECK(ix.bwt().access(3) == kSentinel);
  CHECK(ix.lf(3) == 1);
  std::string spelled;
  std::uint64_t row = 1;
  for (int k = 0; k < 4; ++k) {
    spelled.push_back(ix.alphabet().decode(ix.bwt().access(row)));
    row = ix.lf(row);
  }
  CHECK(spelled == "BABA");
}

TEST_CASE("lf is a permutation that spells the reversed text") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::string s = random_dna(1 + rng() % 1000, rng());
    const FMIndex ix = FMIndex::build(testutil::dna(s));
    std::vector<bool> hit(ix.rows() + 1, false);
    for (std::uint64_t r = 1; r <= ix.rows(); ++r) {
      const auto to = ix.lf(r);
      REQUIRE(to >= 1);
      REQUIRE(to <= ix.rows());
      REQUIRE(!hit[to]);
      hit[to] = true;
    }
    std::string rev;
    std::uint64_t row = 1;
    for (std::uint64_t k = 0; k < ix.rows(); ++k) {
      rev.push_back(ix.alphabet().decode(ix.bwt().access(row)));
      row = ix.lf(row);
    }
    CHECK(rev == std::string(s.rbegin(), s.rend()) + "$");
  }
}

TEST_CASE("locate examples") {
  const FMIndex ix = FMIndex::build(general("ABAB"), 2);
  CHECK(ix.locate("AB") == std::vector<std::uint64_t>{1, 3});
  CHECK(ix.locate(SuffixRange{1, 1}) == std::vector<std::uint64_t>{5});
  CHECK(ix.locate("BB").empty());
}

TEST_CASE("rate 1 samples every row") {
  const FMIndex ix = FMIndex::build(general("MISSISSIPPI"), 1);
  for (std::uint64_t r = 1; r <= ix.rows(); ++r) {
    std::uint64_t steps = 99;
    ix.locate_row(r, &steps);
    CHECK(steps == 0);
  }
}

TEST_CASE("locate equals naive positions for all short patterns") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 6; ++trial) {
    const std::uint64_t n = 50 + rng() % 5000;
    const std::uint64_t rate = 1 + rng() % 40;
    const std::string s = random_dna(n, rng());
    const FMIndex ix = FMIndex::build(testutil::dna(s), rate);
    std::vector<std::string> patterns{""};
    for (int len = 1; len <= 4; ++len) {
      std::vector<std::string> next;
      for (const auto& p : patterns) {
        for (char c : std::string("ACGT")) next.push_back(p + c);
      }
      patterns = next;
      for (const auto& p : patterns) {
        const auto expect = oracle::naive_locate(s, p);
        REQUIRE(ix.count(p) == expect.size());
        REQUIRE(ix.locate(p) == expect);
      }
    }
    for (std::uint64_t r = 1; r <= ix.rows(); ++r) {
      std::uint64_t steps = 0;
      ix.locate_row(r, &steps);
      REQUIRE(steps < rate);
    }
  }
}

TEST_CASE("extract examples and round trip") {
  const FMIndex abab = FMIndex::build(general("ABAB"));
  CHECK(abab.extract_string(2, 3) == "BA");
  const FMIndex s2 = FMIndex::build(testutil::dna(testutil::kS2), 3);
  CHECK(s2.extract_string(7, 10) == "TCGA");
  CHECK_THROWS_AS(s2.extract(0, 2), std::out_of_range);
  CHECK_THROWS_AS(s2.extract(3, 2), std::out_of_range);
  CHECK_THROWS_AS(s2.extract(1, 15), std::out_of_range);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::string s = random_dna(1 + rng() % 5000, rng());
    const FMIndex ix = FMIndex::build(testutil::dna(s), 1 + rng() % 64);
    REQUIRE(ix.extract_string(1, s.size()) == s);
    for (int q = 0; q < 50; ++q) {
      std::uint64_t i = 1 + rng() % s.size(), j = 1 + rng() % s.size();
      if (i > j) std::swap(i, j);
      REQUIRE(ix.extract_string(i, j) == s.substr(i - 1, j - i + 1));
    }
  }
}

TEST_CASE("count equals naive scan on random texts") {
  std::mt19937_64 rng(37);
  const std::string s = random_dna(20000, 4);
  const FMIndex ix = FMIndex::build(testutil::dna(s));
  for (const auto& p : random_patterns(s, 500, 1, 30, 8)) {
    REQUIRE(ix.count(p) == oracle::naive_count(s, p));
  }
}

TEST_CASE("fm index serialization round trip") {
  const Text t = testutil::dna(random_dna(3000, 9));
  const FMIndex ix = FMIndex::build(t, 7);
  const auto bytes = ix.serialize();
  const FMIndex back = FMIndex::deserialize(bytes, t.alphabet());
  CHECK(back.bwt() == ix.bwt());
  CHECK(back.sample() == ix.sample());
  CHECK(back.counts() == ix.counts());
  CHECK(back.locate("ACG") == ix.locate("ACG"));
  CHECK(back.serialize() == bytes);

  auto cut = bytes;
  cut.pop_back();
  CHECK_THROWS_AS(FMIndex::deserialize(cut, t.alphabet()), FormatError);
}
