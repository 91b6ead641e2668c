#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clinspell/distance.hpp"
#include "clinspell/text.hpp"

namespace clinspell {

class Lexicon;
class CorpusStats;
class EmbeddingModel;

enum class MistakeType { WordReduction, MissingOrMisspelledSymbols, MultipleWordsSeparation };

std::string_view to_string(MistakeType type);

enum class Method {
  None,  // never flags; evaluation baseline
  Levenshtein,
  DamerauLevenshtein,
  Embedding,  // cosine only, first model
  Hybrid,     // embedding shortlist reranked by DL, first model
  MeanEnsemble,
};

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

struct CorrectorConfig {
  std::size_t top_n = 20;
  std::size_t top_m = 5;
  std::optional<std::size_t> max_distance;  // unset: DistanceBudget::for_length
  double split_probability_threshold = 1e-4;
  std::size_t min_flag_length = 3;
  std::size_t max_split_parts = 3;
  std::size_t min_split_part_length = 3;

  // Throws ConfigError unless 1 <= top_m <= top_n and the threshold is in (0,1).
  void validate() const;
  DistanceBudget budget_for(std::string_view word) const;
};

struct RankedCandidate {
  std::string word;
  std::optional<double> similarity;
  std::optional<std::size_t> distance;
  std::uint64_t frequency = 0;

  friend bool operator==(const RankedCandidate&, const RankedCandidate&) = default;
};

struct Correction {
  Token original;
  std::vector<RankedCandidate> candidates;
  std::optional<std::string> chosen;  // split results are space-joined
  std::vector<std::string> split_parts;
  std::optional<MistakeType> mistake_type;
  std::string method_tag;
  bool out_of_vocabulary = false;

  bool is_split() const { return !split_parts.empty(); }
};

// Read-only resources shared by every correction call.
struct Resources {
  const Lexicon* lexicon = nullptr;
  const CorpusStats* stats = nullptr;  // no splitting without it
  std::vector<const EmbeddingModel*> models;
};

// Word tokens of at least min_flag_length code points not in the lexicon.
std::vector<Token> detect(const std::vector<Token>& tokens, const Lexicon& lexicon,
                          const CorrectorConfig& config);

// Best segmentation into 2..max_split_parts lexicon words scored by the
// geometric mean of adjacent bigram probabilities; nullopt when none reaches
// the threshold.
std::optional<std::vector<std::string>> try_split(std::string_view word, const Lexicon& lexicon,
                                                  const CorpusStats& stats,
                                                  const CorrectorConfig& config);

Correction correct_word_distance(std::string_view word, const Lexicon& lexicon,
                                 const CorrectorConfig& config,
                                 DistanceMetric metric = DistanceMetric::DamerauOsa);

Correction correct_word_embedding(std::string_view word, const EmbeddingModel& model,
                                  const Lexicon& lexicon, const CorrectorConfig& config);

Correction correct_word_hybrid(std::string_view word, const EmbeddingModel& model,
                               const Lexicon& lexicon, const CorrectorConfig& config);

Correction correct_word_mean_ensemble(std::string_view word,
                                      const std::vector<const EmbeddingModel*>& models,
                                      const Lexicon& lexicon, const CorrectorConfig& config);

// Requires correction.chosen.
MistakeType classify_mistake(std::string_view original, const Correction& correction);

struct CorrectionResult {
  std::string text;
  std::vector<Correction> corrections;  // one per flagged token, in order
};

// Owns nothing; resources must outlive it. Checks method/resource
// compatibility on construction.
class Corrector {
 public:
  Corrector(Resources resources, CorrectorConfig config, Method method);

  // Single-word strategy for a flagged, normalized word (no splitting).
  Correction correct_word(std::string_view word) const;

  CorrectionResult correct_text(std::string_view text) const;

  Method method() const { return method_; }
  const CorrectorConfig& config() const { return config_; }
  const Resources& resources() const { return resources_; }

 private:
  Resources resources_;
  CorrectorConfig config_;
  Method method_;
};

CorrectionResult correct_text(std::string_view text, const Resources& resources,
                              const CorrectorConfig& config, Method method = Method::Hybrid);

// Undoes every applied correction in `corrected`, recovering the input.
std::string revert_corrections(std::string_view corrected,
                               const std::vector<Correction>& corrections);

// Tab-separated record per correction:
// original  start  end  chosen|UNCORRECTED  mistake|-  method  word:dist:sim,...
void write_correction_report(std::ostream& out, const std::vector<Correction>& corrections);
std::string format_correction_record(const Correction& correction);

}  // namespace clinspell
