#include <doctest.h>

#include <random>

#include "clinspell/distance.hpp"
#include "clinspell/lexicon.hpp"
#include "support/oracles.hpp"

using namespace clinspell;

namespace {

std::u32string random_string(std::mt19937_64& rng, std::size_t max_len, std::size_t alphabet) {
  std::u32string s(rng() % (max_len + 1), U'a');
  for (auto& c : s) c = static_cast<char32_t>(U'a' + rng() % alphabet);
  return s;
}

Lexicon lexicon_of(std::initializer_list<std::pair<const char*, std::uint64_t>> words) {
  WordList list{"test", SourceTag::General, {}};
  for (const auto& [w, f] : words) list.entries.push_back({w, f, {}});
  const std::vector<WordList> lists = {list};
  return Lexicon::build(lists);
}

}  // namespace

TEST_CASE("levenshtein examples") {
  CHECK(levenshtein("anemia", "anemia") == 0);
  CHECK(levenshtein("", "abc") == 3);
  CHECK(levenshtein("anmia", "anemia") == 1);
  CHECK(levenshtein("Anemia", "anemia") == 0);
  CHECK(levenshtein("анемия", "анимия") == 1);
}

TEST_CASE("damerau-levenshtein examples") {
  CHECK(damerau_levenshtein("ab", "ba") == 1);
  CHECK(levenshtein("ab", "ba") == 2);
  CHECK(damerau_levenshtein("anemia", "anemia") == 0);
  CHECK(damerau_levenshtein("ca", "abc") == 3);
  CHECK(oracle::bfs_edit_distance(U"ca", U"abc", true) == 2);
}

TEST_CASE("oracle equivalence on short strings") {
  const auto strings = oracle::all_strings(U"abc", 4);
  for (const auto& a : strings) {
    for (const auto& b : strings) {
      REQUIRE(levenshtein(a, b) == oracle::naive_levenshtein(a, b));
      REQUIRE(damerau_levenshtein(a, b) == oracle::naive_osa(a, b));
    }
  }
}

TEST_CASE("property: metric axioms and DL <= Lev") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_string(rng, 8, 3);
    const auto b = random_string(rng, 8, 3);
    const auto c = random_string(rng, 8, 3);
    const auto ab = levenshtein(a, b);
    CHECK(ab == levenshtein(b, a));
    CHECK((ab == 0) == (a == b));
    CHECK(levenshtein(a, c) <= ab + levenshtein(b, c));
    CHECK(damerau_levenshtein(a, b) <= ab);
    CHECK(damerau_levenshtein(a, b) == damerau_levenshtein(b, a));
  }
}

TEST_CASE("bounded distance agrees with the full computation") {
  CHECK(bounded_distance("anmia", "anemia", DistanceBudget{2}) == std::optional<std::size_t>(1));
  CHECK_FALSE(bounded_distance("a", "aaaaaa", DistanceBudget{2}).has_value());
  CHECK(bounded_distance("anemia", "anemia", DistanceBudget{0}) == std::optional<std::size_t>(0));
  CHECK_FALSE(bounded_distance("anemia", "anemic", DistanceBudget{0}).has_value());

  std::mt19937_64 rng(5);
  for (int i = 0; i < 5000; ++i) {
    const auto a = random_string(rng, 10, 4);
    const auto b = random_string(rng, 10, 4);
    const DistanceBudget budget{rng() % 5};
    for (auto metric : {DistanceMetric::DamerauOsa, DistanceMetric::Levenshtein}) {
      const auto full = metric == DistanceMetric::DamerauOsa ? damerau_levenshtein(a, b)
                                                             : levenshtein(a, b);
      const auto bounded = bounded_distance(a, b, budget, metric);
      if (full <= budget.max_distance) {
        REQUIRE(bounded.has_value());
        CHECK(*bounded == full);
      } else {
        CHECK_FALSE(bounded.has_value());
      }
    }
  }
}

TEST_CASE("default budget by length") {
  CHECK(DistanceBudget::for_length(3).max_distance == 2);
  CHECK(DistanceBudget::for_length(8).max_distance == 2);
  CHECK(DistanceBudget::for_length(9).max_distance == 3);
}

TEST_CASE("nearest by distance orders by distance, frequency, word") {
  const auto lex = lexicon_of({{"anemia", 0}, {"angina", 0}, {"anaemia", 0}});
  const auto found = nearest_by_distance("anmia", lex, DistanceBudget{2});
  REQUIRE_FALSE(found.empty());
  CHECK(found[0] == Candidate{"anemia", 1, 0});
  for (const auto& c : found) CHECK(c.distance == damerau_levenshtein("anmia", c.word));

  const auto self = nearest_by_distance("angina", lex, DistanceBudget{0});
  REQUIRE(self.size() == 1);
  CHECK(self[0].word == "angina");

  const auto med = lexicon_of({{"anemia", 0}, {"angina", 0}, {"stenosis", 0}, {"warfarin", 0}});
  CHECK(nearest_by_distance("zzzz", med, DistanceBudget{1}).empty());

  const auto tie = lexicon_of({{"cart", 3}, {"cast", 9}, {"card", 9}});
  const auto ranked = nearest_by_distance("cat", tie, DistanceBudget{2});
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].word == "cast");
  CHECK(ranked[1].word == "cart");
  CHECK(ranked[2].word == "card");
}

TEST_CASE("property: nearest_by_distance equals a filtered full scan") {
  std::mt19937_64 rng(9);
  WordList list{"rand", SourceTag::General, {}};
  std::vector<std::u32string> words;
  for (int i = 0; i < 300; ++i) {
    auto w = random_string(rng, 7, 4);
    if (w.empty()) continue;
    list.entries.push_back({oracle::utf8_of(w), rng() % 5, {}});
  }
  const std::vector<WordList> lists = {list};
  const auto lex = Lexicon::build(lists);
  for (int q = 0; q < 100; ++q) {
    const auto query = oracle::utf8_of(random_string(rng, 7, 4));
    const DistanceBudget budget{1 + rng() % 3};
    std::vector<Candidate> expected;
    for (const auto& [word, entry] : lex.entries()) {
      const auto d = damerau_levenshtein(std::string_view(query), std::string_view(word));
      if (d <= budget.max_distance) expected.push_back({word, d, entry.frequency});
    }
    std::sort(expected.begin(), expected.end(), [](const Candidate& x, const Candidate& y) {
      if (x.distance != y.distance) return x.distance < y.distance;
      if (x.frequency != y.frequency) return x.frequency > y.frequency;
      return x.word < y.word;
    });
    CHECK(nearest_by_distance(query, lex, budget) == expected);
  }
}
