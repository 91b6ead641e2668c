#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "clinspell/corpus_stats.hpp"
#include "clinspell/error.hpp"
#include "clinspell/lexicon.hpp"

using namespace clinspell;

namespace {

WordList list_of(std::string name, SourceTag tag, std::initializer_list<const char*> words) {
  WordList list{std::move(name), tag, {}};
  for (const char* w : words) list.entries.push_back({w, std::nullopt, {}});
  return list;
}

CorpusStats stats_from(std::string_view text, double k = kDefaultSmoothingK) {
  std::istringstream in{std::string(text)};
  return CorpusStats::from_stream(in, k);
}

}  // namespace

TEST_CASE("build merges sources of duplicate words") {
  const std::vector<WordList> lists = {list_of("med", SourceTag::MedicalTerm, {"anemia"}),
                                       list_of("gen", SourceTag::General, {"anemia"})};
  const auto lex = Lexicon::build(lists);
  REQUIRE(lex.size() == 1);
  const auto* entry = lex.find_normalized("anemia");
  REQUIRE(entry != nullptr);
  CHECK(entry->sources.contains(SourceTag::MedicalTerm));
  CHECK(entry->sources.contains(SourceTag::General));
  CHECK_FALSE(entry->sources.contains(SourceTag::Drug));
  CHECK(entry->frequency == 0);
}

TEST_CASE("build normalizes keys and lookups") {
  const std::vector<WordList> lists = {list_of("gen", SourceTag::General, {"Anemia", "ГБ"})};
  const auto lex = Lexicon::build(lists);
  CHECK(lex.find_normalized("anemia") != nullptr);
  CHECK(lex.find_normalized("Anemia") == nullptr);
  CHECK(lex.contains("anemia"));
  CHECK(lex.contains("ANEMIA"));
  CHECK(lex.contains("гб"));
  CHECK_FALSE(lex.contains("anmia"));
}

TEST_CASE("empty union is a configuration error") {
  CHECK_THROWS_AS(Lexicon::build({}), ConfigError);
  const std::vector<WordList> lists = {list_of("empty", SourceTag::General, {})};
  CHECK_THROWS_AS(Lexicon::build(lists), ConfigError);
}

TEST_CASE("abbreviation-only words are known") {
  const std::vector<WordList> lists = {list_of("abbr", SourceTag::Abbreviation, {"ACS"})};
  const auto lex = Lexicon::build(lists);
  CHECK(lex.contains("acs"));
  CHECK(lex.contains("ACS"));
}

TEST_CASE("word list parsing: comments, frequencies, tags") {
  std::istringstream in("# header\nanemia\t12\n\nwarfarin\t3\tdrug\n  \nstenting\n");
  const auto list = parse_word_list(in, "inline", SourceTag::MedicalTerm);
  REQUIRE(list.entries.size() == 3);
  CHECK(list.entries[0].word == "anemia");
  CHECK(list.entries[0].frequency == 12u);
  CHECK(list.entries[1].tags.contains(SourceTag::Drug));
  CHECK_FALSE(list.entries[2].frequency.has_value());

  std::istringstream bad("anemia\tmany\n");
  CHECK_THROWS_AS(parse_word_list(bad, "bad", SourceTag::General), FormatError);
}

TEST_CASE("unreadable word list names the source") {
  try {
    read_word_list("/nonexistent/words.txt", SourceTag::General);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/words.txt") != std::string::npos);
  }
}

TEST_CASE("corpus stats count adjacent words") {
  const auto stats = stats_from("a b a");
  CHECK(stats.count("a") == 2);
  CHECK(stats.count("b") == 1);
  CHECK(stats.count("a", "b") == 1);
  CHECK(stats.count("b", "a") == 1);
  CHECK(stats.count("a", "a") == 0);
  CHECK(stats.total_unigrams() == 3);
  CHECK(stats.vocab_size() == 2);

  const auto empty = stats_from("");
  CHECK(empty.total_unigrams() == 0);
  CHECK(empty.vocab_size() == 0);
  CHECK(empty.sorted_bigrams().empty());

  const auto single = stats_from("anemia");
  CHECK(single.total_unigrams() == 1);
  CHECK(single.sorted_bigrams().empty());
}

TEST_CASE("bigrams do not cross lines or non-word tokens") {
  const auto stats = stats_from("a b\nc, d 12 e\n");
  CHECK(stats.count("b", "c") == 0);
  CHECK(stats.count("c", "d") == 0);
  CHECK(stats.count("d", "e") == 0);
  CHECK(stats.count("a", "b") == 1);
  CHECK(stats.count("12") == 0);
}

TEST_CASE("bigram probability follows add-k smoothing") {
  const CorpusStats stats({{"a", 2}, {"b", 1}}, {{{"a", "b"}, 1}}, 1.0);
  CHECK(stats.bigram_probability("a", "b") == doctest::Approx(0.5));
  CHECK(stats.bigram_probability("zz", "yy") == doctest::Approx(0.5));
  CHECK(stats.bigram_probability("A", "B") == doctest::Approx(0.5));

  CHECK_THROWS_AS(CorpusStats({{"a", 1}}, {{{"a", "b"}, 1}}, 1.0), ConfigError);
  CHECK_THROWS_AS(CorpusStats({{"a", 1}}, {}, 0.0), ConfigError);
}

TEST_CASE("property: conditional bigram probabilities sum to one") {
  // Consistent tables: every token has a successor, so unigram counts equal
  // bigram row sums.
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    const std::size_t vocab = 2 + rng() % 12;
    std::vector<std::string> words;
    for (std::size_t i = 0; i < vocab; ++i) words.push_back("w" + std::to_string(i));
    CorpusStats::UnigramMap unigram;
    CorpusStats::BigramList bigram;
    for (const auto& w1 : words) {
      std::uint64_t row = 0;
      for (const auto& w2 : words) {
        if (rng() % 3 == 0) continue;
        const std::uint64_t c = 1 + rng() % 20;
        bigram.push_back({{w1, w2}, c});
        row += c;
      }
      unigram[w1] = row;
    }
    const double k = 0.1 + static_cast<double>(rng() % 100) / 50.0;
    const CorpusStats stats(unigram, bigram, k);
    for (const auto& w1 : words) {
      double sum = 0.0;
      for (const auto& w2 : words) {
        const double p = stats.bigram_probability(w1, w2);
        CHECK(p > 0.0);
        CHECK(p <= 1.0);
        sum += p;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("corpus stats save/load round trip and format errors") {
  const auto stats = stats_from("the cat sat on the mat\nthe cat ran\n");
  std::ostringstream out;
  stats.save(out);
  std::istringstream in(out.str());
  const auto loaded = CorpusStats::load(in, "mem");
  CHECK(loaded.total_unigrams() == stats.total_unigrams());
  CHECK(loaded.sorted_bigrams() == stats.sorted_bigrams());
  std::ostringstream again;
  loaded.save(again);
  CHECK(again.str() == out.str());

  std::istringstream bad("[unigram]\nthe\t2\n[bigram]\nthe\tcat\n");
  try {
    CorpusStats::load(bad, "bad.stats");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("augment adds frequent word-shaped corpus words") {
  std::string corpus;
  for (int i = 0; i < 120; ++i) corpus += "stenting\n";
  for (int i = 0; i < 300; ++i) corpus += "anemia\n";
  for (int i = 0; i < 900; ++i) corpus += "xq\n";
  for (int i = 0; i < 10; ++i) corpus += "rareword\n";
  const auto stats = stats_from(corpus);

  const std::vector<WordList> lists = {list_of("med", SourceTag::MedicalTerm, {"anemia", "angina"})};
  const auto base = Lexicon::build(lists);
  const auto lex = augment_from_corpus(base, stats, 50);

  const auto* stenting = lex.find_normalized("stenting");
  REQUIRE(stenting != nullptr);
  CHECK(stenting->frequency == 120);
  CHECK(stenting->sources == SourceSet(SourceTag::CorpusFrequent));

  const auto* anemia = lex.find_normalized("anemia");
  REQUIRE(anemia != nullptr);
  CHECK(anemia->frequency == 300);
  CHECK(anemia->sources == SourceSet(SourceTag::MedicalTerm));

  CHECK_FALSE(lex.contains("xq"));
  CHECK_FALSE(lex.contains("rareword"));
  CHECK(lex.frequency("angina") == 0);

  for (const auto& [word, entry] : base.entries()) CHECK(lex.contains(word));
  for (const auto& [word, entry] : lex.entries()) {
    CHECK_FALSE(entry.sources.empty());
    if (entry.sources.contains(SourceTag::CorpusFrequent)) CHECK(entry.frequency >= 50);
  }

  CHECK_THROWS_AS(augment_from_corpus(base, stats, 0), ConfigError);
}

TEST_CASE("lexicon save/load round trip") {
  const std::vector<WordList> lists = {list_of("med", SourceTag::MedicalTerm, {"anemia", "angina"}),
                                       list_of("drug", SourceTag::Drug, {"warfarin", "anemia"})};
  auto lex = Lexicon::build(lists);
  lex.set_frequency("anemia", 42);

  const auto path = std::filesystem::temp_directory_path() / "clinspell_lexicon_roundtrip.tsv";
  {
    std::ofstream out(path);
    lex.save(out);
  }
  const auto loaded = Lexicon::load(path);
  std::filesystem::remove(path);
  REQUIRE(loaded.size() == lex.size());
  for (const auto& [word, entry] : lex.entries()) {
    const auto* other = loaded.find_normalized(word);
    REQUIRE(other != nullptr);
    CHECK(other->frequency == entry.frequency);
    CHECK(other->sources == entry.sources);
  }
  const auto counts = loaded.count_by_source();
  CHECK(counts.at(SourceTag::MedicalTerm) == 2);
  CHECK(counts.at(SourceTag::Drug) == 2);
}

TEST_CASE("source set text form") {
  SourceSet set(SourceTag::General);
  set.insert(SourceTag::Drug);
  CHECK(set.to_string() == "general,drug");
  CHECK(SourceSet::parse("general,drug") == set);
  CHECK_FALSE(SourceSet::parse("general,bogus").has_value());
}
