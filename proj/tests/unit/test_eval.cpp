#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "clinspell/corpus_stats.hpp"
#include "clinspell/corrector.hpp"
#include "clinspell/error.hpp"
#include "clinspell/eval.hpp"
#include "clinspell/lexicon.hpp"
#include "clinspell/utf8.hpp"
#include "support/synthetic.hpp"

using namespace clinspell;

namespace {

Lexicon lexicon_of(const std::vector<std::string>& words) {
  WordList list{"test", SourceTag::MedicalTerm, {}};
  for (const auto& w : words) list.entries.push_back({w, 1, {}});
  const std::vector<WordList> lists = {list};
  return Lexicon::build(lists);
}

bool round4_equal(double a, double b) { return std::llround(a * 1e4) == std::llround(b * 1e4); }

}  // namespace

TEST_CASE("overall precision reproduces the published rows") {
  struct Row {
    double lexical, error, overall;
  };
  const Row rows[] = {{0.975, 0.52, 0.7475},  {0.975, 0.545, 0.76}, {0.975, 0.42, 0.6975},
                      {0.975, 0.375, 0.675}, {0.975, 0.405, 0.69}, {0.975, 0.745, 0.86}};
  for (const auto& r : rows) CHECK(round4_equal(overall_precision(r.lexical, r.error), r.overall));
  // The ensemble row prints 0.85; the mean of its own columns is 0.86.
  CHECK_FALSE(round4_equal(overall_precision(0.975, 0.745), 0.85));
  CHECK(round4_equal(overall_precision(0.975, 0.745), 0.86));
}

TEST_CASE("evaluate counts flags and exact corrections") {
  const auto lex = lexicon_of({"anemia", "angina", "hemolytic", "patient"});
  const auto stats = [] {
    std::istringstream in("hemolytic anemia\n");
    return CorpusStats::from_stream(in);
  }();
  const Resources res{&lex, &stats, {}};
  const std::vector<LabeledExample> examples = {
      {"anemia", "anemia", false},       {"angina", "angina", false},
      {"patient", "patient", false},     {"stenting", "stenting", false},
      {"anmia", "anemia", true},         {"hemolyticanemia", "hemolytic anemia", true},
      {"angna", "angina", true},         {"qqqqqq", "patient", true},
      {"Anemi", "anemia", true}};
  const Corrector corrector(res, CorrectorConfig{}, Method::DamerauLevenshtein);
  const auto report = evaluate(corrector, examples);
  CHECK(report.lexical_precision == doctest::Approx(0.75));
  CHECK(report.error_precision == doctest::Approx(0.8));
  CHECK(report.overall_precision == (report.lexical_precision + report.error_precision) / 2.0);
  REQUIRE(report.items.size() == examples.size());
  CHECK(report.items[3].flagged);
  CHECK(report.items[5].chosen == std::optional<std::string>("hemolytic anemia"));
  CHECK_FALSE(report.items[7].correct);
  CHECK(report.method_tag == "dl");

  auto shuffled = examples;
  std::mt19937_64 rng(4);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto again = evaluate(corrector, shuffled);
  CHECK(again.lexical_precision == report.lexical_precision);
  CHECK(again.error_precision == report.error_precision);
}

TEST_CASE("wrong correction of a flagged word is a failure") {
  const auto lex = lexicon_of({"cast", "cart"});
  const Corrector corrector(Resources{&lex, nullptr, {}}, CorrectorConfig{},
                            Method::DamerauLevenshtein);
  const std::vector<LabeledExample> examples = {{"cast", "cast", false}, {"cat", "cast", true}};
  const auto report = evaluate(corrector, examples);
  CHECK(report.items[1].flagged);
  CHECK(report.items[1].chosen == std::optional<std::string>("cart"));
  CHECK(report.error_precision == 0.0);
}

TEST_CASE("never-flag baseline scores one half") {
  const auto lex = lexicon_of({"anemia"});
  const Corrector corrector(Resources{&lex, nullptr, {}}, CorrectorConfig{}, Method::None);
  const std::vector<LabeledExample> examples = {
      {"anemia", "anemia", false}, {"foo", "foo", false}, {"anmia", "anemia", true}};
  const auto report = evaluate(corrector, examples);
  CHECK(report.lexical_precision == 1.0);
  CHECK(report.error_precision == 0.0);
  CHECK(report.overall_precision == 0.5);
}

TEST_CASE("perfect corrector scores one") {
  const auto lex = lexicon_of({"anemia"});
  const Corrector corrector(Resources{&lex, nullptr, {}}, CorrectorConfig{},
                            Method::DamerauLevenshtein);
  const std::vector<LabeledExample> examples = {{"anemia", "anemia", false},
                                                {"anmia", "anemia", true}};
  CHECK(evaluate(corrector, examples).overall_precision == 1.0);
}

TEST_CASE("empty subsets are rejected with their name") {
  const auto lex = lexicon_of({"anemia"});
  const Corrector corrector(Resources{&lex, nullptr, {}}, CorrectorConfig{}, Method::None);
  const std::vector<LabeledExample> only_correct = {{"anemia", "anemia", false}};
  try {
    evaluate(corrector, only_correct);
    FAIL("expected EvaluationInputError");
  } catch (const EvaluationInputError& e) {
    CHECK(std::string(e.what()).find("error") != std::string::npos);
  }
  const std::vector<LabeledExample> only_errors = {{"anmia", "anemia", true}};
  CHECK_THROWS_AS(evaluate(corrector, only_errors), EvaluationInputError);
}

TEST_CASE("test set file format") {
  std::istringstream in("# comment\nanemia\tanemia\t0\nanmia\tanemia\t1\n\nhemolyticanemia\themolytic anemia\t1\n");
  const auto examples = parse_testset(in, "mem");
  REQUIRE(examples.size() == 3);
  CHECK(examples[2].gold == "hemolytic anemia");
  CHECK(examples[1].is_error);

  std::ostringstream out;
  write_testset(out, examples);
  std::istringstream back(out.str());
  CHECK(parse_testset(back, "mem") == examples);

  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream bad(text);
    try {
      parse_testset(bad, "bad.tsv");
    } catch (const FormatError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("a\ta\t0\nb\tb\n") == 2);
  CHECK(line_of("a\ta\t2\n") == 1);
  CHECK(line_of("a\tb\t0\n") == 1);
}

TEST_CASE("metrics line and report") {
  EvalReport report;
  report.method_tag = "hybrid";
  report.lexical_precision = 0.975;
  report.error_precision = 0.745;
  report.overall_precision = overall_precision(0.975, 0.745);
  report.items = {{{"a", "a", false}, false, std::nullopt, true},
                  {{"b", "c", true}, true, std::string("c"), true}};
  CHECK(metrics_line(report) == "hybrid\t0.975000\t0.745000\t0.860000\t1\t1");
  std::ostringstream table;
  const std::vector<EvalReport> reports = {report};
  print_table(table, reports);
  CHECK(table.str().find("hybrid") != std::string::npos);
  CHECK(table.str().find("0.8600") != std::string::npos);
}

TEST_CASE("truncation drops trailing code points") {
  CHECK(truncate_word("anemia", 2) == "anem");
  CHECK(truncate_word("анемия", 2) == "анем");
}

TEST_CASE("synthetic test set is seeded and well formed") {
  auto words = synthetic::read_words(CLINSPELL_TEST_DATA_DIR "/web2_sample.txt");
  words.resize(500);
  const auto lex = lexicon_of(words);
  std::string text;
  for (std::size_t i = 0; i + 1 < words.size(); i += 2) text += words[i] + " " + words[i + 1] + "\n";
  std::istringstream in(text);
  const auto stats = CorpusStats::from_stream(in);

  CorruptionConfig config;
  config.correct_count = 50;
  config.error_count = 90;
  const auto a = generate_synthetic_testset(lex, stats, config, 1);
  const auto b = generate_synthetic_testset(lex, stats, config, 1);
  const auto c = generate_synthetic_testset(lex, stats, config, 2);
  CHECK(a == b);
  CHECK(a != c);
  REQUIRE(a.size() == 140);

  std::size_t controls = 0, splits = 0, truncations = 0;
  for (const auto& e : a) {
    if (!e.is_error) {
      ++controls;
      CHECK(e.observed == e.gold);
      CHECK(lex.contains(e.observed));
      continue;
    }
    CHECK_FALSE(lex.contains(e.observed));
    CHECK(e.observed != e.gold);
    if (e.gold.find(' ') != std::string::npos) {
      ++splits;
      std::string joined = e.gold;
      joined.erase(std::remove(joined.begin(), joined.end(), ' '), joined.end());
      CHECK(e.observed == joined);
      const auto space = e.gold.find(' ');
      CHECK(stats.count(e.gold.substr(0, space), e.gold.substr(space + 1)) > 0);
    } else {
      CHECK(lex.contains(e.gold));
      if (e.gold.starts_with(e.observed)) {
        const auto drop = utf8::length(e.gold) - utf8::length(e.observed);
        if (drop >= 2 && drop <= config.max_truncation) ++truncations;
      }
    }
  }
  CHECK(controls == 50);
  CHECK(splits > 10);
  CHECK(truncations > 10);

  CHECK_THROWS_AS(generate_synthetic_testset(lexicon_of({"ab"}), stats, config, 1), ConfigError);
}
