#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "rfmx/bwtinv.hpp"
#include "rfmx/commands.hpp"
#include "rfmx/oracle.hpp"
#include "rfmx/serialize.hpp"
#include "rfmx/synth.hpp"

using namespace rfmx;

namespace {

std::string random_text(std::mt19937_64& rng, std::size_t n, std::string_view letters) {
  std::string s(n, 'A');
  for (auto& c : s) c = letters[rng() % letters.size()];
  return s;
}

InvariantAlignment pairs(std::vector<std::pair<std::uint64_t, std::uint64_t>> v) {
  std::sort(v.begin(), v.end());
  InvariantAlignment g;
  for (auto [i, j] : v) {
    g.i_pos.push_back(i);
    g.j_pos.push_back(j);
  }
  return g;
}

SuffixRange find(const RelativeIndex& ri, const std::string& p) {
  std::vector<Symbol> codes;
  REQUIRE(encode_pattern(ri.reference().alphabet(), p, codes));
  return ri.find(codes);
}

}  // namespace

TEST_CASE("candidates equal the sorted-suffix construction") {
  const Text s1 = testutil::dna(testutil::kS1), s2 = testutil::dna(testutil::kS2);
  CHECK(build_candidates(s1, s2).values == oracle::naive_candidates(s1, s2).values);
  CHECK(build_candidates(s1, s2).size() == s1.length() + 1);

  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 300; ++trial) {
    const Alphabet abc = Alphabet::from_bytes("ABC");
    const Text a = testutil::with(random_text(rng, 1 + rng() % 40, "ABC"), abc);
    const Text b = testutil::with(random_text(rng, 1 + rng() % 40, trial % 2 ? "AB" : "ABC"), abc);
    const TwoChoiceArray fast = build_candidates(a, b);
    REQUIRE(fast.values == oracle::naive_candidates(a, b).values);
    for (std::uint64_t i = 1; i <= fast.size(); ++i) {
      for (unsigned slot = 1; slot <= 2; ++slot) {
        const std::uint64_t j = fast.at(i, slot);
        if (j) REQUIRE(a.symbols()[i - 1] == b.symbols()[j - 1]);
      }
    }
  }
}

TEST_CASE("two_choice_lis example") {
  TwoChoiceArray a;
  a.values = {{5, 1}, {2, 6}, {3, 0}, {4, 0}};
  // Frozen from the exhaustive search: 1 < 2 < 3 < 4 uses every index.
  CHECK(oracle::brute_force_two_choice_lis(a) == 4);
  const ChoiceSelection sel = two_choice_lis(a);
  CHECK(sel.size() == 4);
  CHECK(sel.choice == std::vector<std::uint8_t>{2, 1, 1, 1});

  TwoChoiceArray none;
  none.values = {{0, 0}, {0, 0}};
  CHECK(two_choice_lis(none).size() == 0);

  TwoChoiceArray same;
  same.values = {{3, 3}, {1, 2}};
  CHECK(two_choice_lis(same).size() == 1);
}

TEST_CASE("two_choice_lis equals brute force for n <= 12") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 2000; ++trial) {
    TwoChoiceArray a;
    const std::size_t n = rng() % 13;
    const std::uint64_t range = 1 + rng() % 20;
    for (std::size_t i = 0; i < n; ++i) {
      a.values.push_back({rng() % 3 ? 1 + rng() % range : 0, rng() % 3 ? 1 + rng() % range : 0});
    }
    const ChoiceSelection sel = two_choice_lis(a);
    REQUIRE(sel.size() == oracle::brute_force_two_choice_lis(a));
    for (std::size_t k = 0; k < sel.size(); ++k) {
      REQUIRE(a.at(sel.index[k], sel.choice[k]) != 0);
      if (k) {
        REQUIRE(sel.index[k - 1] < sel.index[k]);
        REQUIRE(a.at(sel.index[k - 1], sel.choice[k - 1]) < a.at(sel.index[k], sel.choice[k]));
      }
    }
  }
}

TEST_CASE("invariant_subsequence is always BWT-invariant") {
  std::mt19937_64 rng(83);
  const Alphabet abc = Alphabet::from_bytes("ABC");
  bool transitions[3][3] = {};
  for (int trial = 0; trial < 1500; ++trial) {
    const Text s1 = testutil::with(random_text(rng, 1 + rng() % 60, "ABC"), abc);
    const Text s2 = testutil::with(random_text(rng, 1 + rng() % 60, trial % 3 ? "AB" : "ABC"), abc);
    const InvariantAlignment g = invariant_subsequence(s1, s2);
    REQUIRE(check_bwt_invariant(s1, s2, g));
    for (std::size_t k = 1; k < g.choice.size(); ++k) transitions[g.choice[k - 1]][g.choice[k]] = true;
  }
  for (int b = 1; b <= 2; ++b) {
    for (int c = 1; c <= 2; ++c) CHECK(transitions[b][c]);
  }

  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const std::string a = random_dna(20000, seed);
    const std::string b = mutate_dna(a, {0.01, 0.001, 0.001}, seed + 3);
    const Text t1 = testutil::dna(a), t2 = testutil::dna(b);
    const InvariantAlignment g = invariant_subsequence(t1, t2);
    CHECK(check_bwt_invariant(t1, t2, g));
    CHECK(g.size() > a.size() * 8 / 10);
  }
}

TEST_CASE("invariant subsequence of the running example") {
  const Text s1 = testutil::dna(testutil::kS1), s2 = testutil::dna(testutil::kS2);
  const InvariantAlignment g = invariant_subsequence(s1, s2);
  CHECK(check_bwt_invariant(s1, s2, g));
  CHECK(g.size() <= exact_lcs(s1.symbols(), s2.symbols()).size());
  CHECK(g.i_pos.back() == s1.length() + 1);
  CHECK(g.j_pos.back() == s2.length() + 1);
}

TEST_CASE("induced BWT alignment of the running example") {
  const Text s1 = testutil::dna(testutil::kS1), s2 = testutil::dna(testutil::kS2);
  const SuffixArray sa1 = build_suffix_array(s1), sa2 = build_suffix_array(s2);
  const InvariantAlignment g = invariant_subsequence(s1, s2);
  const Alignment rows = induced_bwt_alignment(sa1, sa2, g);
  CHECK(rows.size() == g.size());
  const auto b1 = bwt(s1, sa1), b2 = bwt(s2, sa2);
  CHECK(is_common_subsequence(b1, b2, rows));
}

TEST_CASE("invariance checker rejects a crossing pair") {
  const Alphabet ab = Alphabet::from_bytes("AB");
  const Text s1 = testutil::with("AB", ab), s2 = testutil::with("BA", ab);
  // A alone is invariant; so is B alone.
  CHECK(check_bwt_invariant(s1, s2, pairs({{1, 2}})));
  CHECK(check_bwt_invariant(s1, s2, pairs({{2, 1}})));

  bool found = false;
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 400 && !found; ++trial) {
    const Text x = testutil::with(random_text(rng, 3 + rng() % 10, "AB"), ab);
    const Text y = testutil::with(random_text(rng, 3 + rng() % 10, "AB"), ab);
    const Alignment a = exact_lcs(x.symbols(), y.symbols());
    InvariantAlignment g;
    g.i_pos = a.x_pos;
    g.j_pos = a.y_pos;
    if (!check_bwt_invariant(x, y, g)) {
      found = true;
      CHECK_THROWS_WITH_AS(induced_bwt_alignment(build_suffix_array(x), build_suffix_array(y), g),
                           "alignment is not BWT-invariant", std::invalid_argument);
    }
  }
  CHECK(found);
}

TEST_CASE("appendix sample mapping") {
  const BitArray b1 = BitArray::from_string("0001000001010101");
  const BitArray b2 = BitArray::from_string("010000010001010");
  const BitArray r = BitArray::from_string("1000110010010001");
  const BitArray m1 = BitArray::from_string("0001100111000000");
  const BitArray m2 = BitArray::from_string("000100111000000");
  const std::vector<std::uint64_t> a{16, 13, 1, 7, 10, 4};
  auto sample_at = [&](std::uint64_t k) { return a[k - 1]; };

  CHECK(b1.select0(b2.rank0(10)) == 9);
  CHECK(r.get(9));
  CHECK(map_through_invariant(b1, b2, r, sample_at, m1, m2, 10) == std::optional<std::uint64_t>{6});
  CHECK_FALSE(map_through_invariant(b1, b2, r, sample_at, m1, m2, 2).has_value());

}

TEST_CASE("relative locate equals naive positions") {
  std::mt19937_64 rng(97);
  for (std::uint64_t rate : {1u, 3u, 8u, 32u}) {
    const std::string s1 = random_dna(1000 + rng() % 6000, rng());
    const std::string s2 = mutate_dna(s1, {0.01 + 0.01 * (rng() % 3), 0.002, 0.002}, rng());
    auto ref = std::make_shared<const FMIndex>(FMIndex::build(testutil::dna(s1), rate));
    const RelativeBuild rb = build_relative(ref, testutil::dna(s2), RelativeMode::invariant);
    REQUIRE(rb.inv.has_value());
    CHECK(rb.inv->rate() == rate);
    for (const auto& p : random_patterns(s2, 300, 1, 25, rng())) {
      REQUIRE(rel_locate(rb.rel, *rb.inv, find(rb.rel, p)) == oracle::naive_locate(s2, p));
    }
    const SuffixArray sa2 = build_suffix_array(testutil::dna(s2));
    for (std::uint64_t row = 1; row <= rb.rel.rows(); ++row) {
      std::uint64_t steps = 0;
      REQUIRE(rel_locate_row(rb.rel, *rb.inv, row, &steps) == sa2.at(row));
      REQUIRE(steps <= rate);
    }
  }
}

TEST_CASE("relative locate of an identical target needs no escapes") {
  const std::string s = random_dna(4000, 101);
  auto ref = std::make_shared<const FMIndex>(FMIndex::build(testutil::dna(s), 16));
  const RelativeBuild rb = build_relative(ref, testutil::dna(s), RelativeMode::invariant);
  CHECK(rb.g.size() == s.size() + 1);
  CHECK(rb.inv->escape_values().empty());
  CHECK(rb.inv->m1().ones() == 0);
  CHECK(rb.inv->m2().ones() == 0);
  for (const auto& p : random_patterns(s, 100, 1, 10, 102)) {
    REQUIRE(rel_locate(rb.rel, *rb.inv, find(rb.rel, p)) == ref->locate(p));
  }
}

TEST_CASE("relative sample serialization") {
  const std::string s1 = random_dna(3000, 103);
  const std::string s2 = mutate_dna(s1, {0.02, 0.002, 0.002}, 104);
  auto ref = std::make_shared<const FMIndex>(FMIndex::build(testutil::dna(s1), 8));
  const RelativeBuild rb = build_relative(ref, testutil::dna(s2), RelativeMode::invariant);
  const auto bytes = rb.inv->serialize(7);
  const RelativeSample back = RelativeSample::deserialize(bytes, ref, 7);
  CHECK(back.m1() == rb.inv->m1());
  CHECK(back.m2() == rb.inv->m2());
  CHECK(back.escape_marks() == rb.inv->escape_marks());
  CHECK(std::equal(back.escape_values().begin(), back.escape_values().end(),
                   rb.inv->escape_values().begin(), rb.inv->escape_values().end()));
  CHECK(back.serialize(7) == bytes);
  CHECK_THROWS_WITH_AS(RelativeSample::deserialize(bytes, ref, 8), "reference mismatch", FormatError);
}

TEST_CASE("reduction strings") {
  const std::vector<unsigned> p{4, 2, 1, 3};
  const std::vector<unsigned> one{1};
  const auto [a, b] = reduction_strings(p, one);
  CHECK(a == "ABBBBABBABABBB");
  CHECK(b == "AC");
  CHECK(reduction_strings(p, p).second == "ACCCCACCACACCC");
  const std::vector<unsigned> dup{1, 1}, gap{1, 3}, empty{};
  CHECK_THROWS_WITH_AS(reduction_strings(p, dup), "invalid permutation", std::invalid_argument);
  CHECK_THROWS_WITH_AS(reduction_strings(gap, one), "invalid permutation", std::invalid_argument);
  CHECK_THROWS_AS(reduction_strings(p, empty), std::invalid_argument);
  CHECK_THROWS_AS(reduction_strings(one, p), std::invalid_argument);
}

TEST_CASE("invariant A-subsequences exist exactly when the pattern embeds") {
  std::uint64_t cases = 0, positive = 0;
  for (unsigned n = 1; n <= 6; ++n) {
    std::vector<unsigned> p1(n);
    std::iota(p1.begin(), p1.end(), 1u);
    do {
      for (unsigned m = 1; m <= std::min(n, 4u); ++m) {
        std::vector<unsigned> p2(m);
        std::iota(p2.begin(), p2.end(), 1u);
        do {
          const bool embeds = oracle::permutation_embeds(p1, p2);
          REQUIRE(oracle::invariant_a_subsequence_exists(p1, p2) == embeds);
          ++cases;
          positive += embeds;
        } while (std::next_permutation(p2.begin(), p2.end()));
      }
    } while (std::next_permutation(p1.begin(), p1.end()));
  }
  CHECK(positive > 0);
  CHECK(positive < cases);
}
