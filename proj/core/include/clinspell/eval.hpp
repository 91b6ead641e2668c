#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace clinspell {

class Corrector;
class Lexicon;
class CorpusStats;

struct LabeledExample {
  std::string observed;
  std::string gold;  // split golds are space-joined
  bool is_error = false;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

struct ItemJudgment {
  LabeledExample example;
  bool flagged = false;
  std::optional<std::string> chosen;
  bool correct = false;
};

struct EvalReport {
  double lexical_precision = 0.0;
  double error_precision = 0.0;
  double overall_precision = 0.0;
  std::vector<ItemJudgment> items;
  std::string method_tag;
  std::vector<std::pair<std::string, std::string>> config;
};

// Mean of lexical and error precision.
double overall_precision(double lexical, double error);

// Lexical precision over the correct subset (not flagged), error precision
// over the error subset (flagged and corrected to gold). Throws
// EvaluationInputError if either subset is empty.
EvalReport evaluate(const Corrector& corrector, std::span<const LabeledExample> examples);

// "observed<TAB>gold<TAB>0|1" lines, '#' comments allowed.
std::vector<LabeledExample> parse_testset(std::istream& in, const std::string& source_name);
std::vector<LabeledExample> read_testset(const std::filesystem::path& path);
void write_testset(std::ostream& out, std::span<const LabeledExample> examples);

// Config snapshot embedded in a report.
std::vector<std::pair<std::string, std::string>> describe(const Corrector& corrector);

// Fixed-width table, one row per report.
void print_table(std::ostream& out, std::span<const EvalReport> reports);
// "method<TAB>lexical<TAB>error<TAB>overall<TAB>n_correct<TAB>n_error"
std::string metrics_line(const EvalReport& report);
// Metrics line, config snapshot and per-item judgments.
void write_eval_report(std::ostream& out, const EvalReport& report);

struct CorruptionConfig {
  std::size_t correct_count = 200;
  std::size_t error_count = 200;
  double truncation_weight = 1.0;
  double symbol_noise_weight = 1.0;
  double concatenation_weight = 1.0;
  std::size_t min_word_length = 5;  // code points, for sampled words
  std::size_t max_truncation = 4;   // trailing code points dropped, at least 2
  std::size_t max_noise_edits = 2;
};

enum class CorruptionKind { Truncation, SymbolNoise, Concatenation };

// Drops `drop` trailing code points.
std::string truncate_word(std::string_view word, std::size_t drop);

// Seeded test set: sampled lexicon words as controls plus corrupted words
// from the three mistake types. Corrupted forms that are themselves lexicon
// words are redrawn. Throws ConfigError if the lexicon has no usable words.
std::vector<LabeledExample> generate_synthetic_testset(const Lexicon& lexicon,
                                                       const CorpusStats& stats,
                                                       const CorruptionConfig& config,
                                                       std::uint64_t seed);

}  // namespace clinspell
