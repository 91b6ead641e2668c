#include "clinspell/corrector.hpp"

#include <algorithm>
#include <cmath>

#include "clinspell/corpus_stats.hpp"
#include "clinspell/embedding.hpp"
#include "clinspell/error.hpp"
#include "clinspell/lexicon.hpp"
#include "clinspell/utf8.hpp"

namespace clinspell {

namespace {

// Lexicon entries that can be spliced back into text as a single word.
const LexiconEntry* replacement_entry(const Lexicon& lexicon, std::string_view word) {
  const LexiconEntry* entry = lexicon.find_normalized(word);
  return entry != nullptr && entry->word_shaped ? entry : nullptr;
}

Token word_token(std::string_view word) {
  return Token{std::string(word), std::string(word), 0, word.size(), TokenClass::Word};
}

void finalize(Correction& correction) {
  if (!correction.candidates.empty() && !correction.chosen) {
    correction.chosen = correction.candidates.front().word;
  }
  if (correction.chosen) {
    correction.mistake_type = classify_mistake(correction.original.normalized, correction);
  }
}

std::string embedding_tag(const EmbeddingModel& model) {
  switch (model.kind()) {
    case ModelKind::Word2Vec: return "w2v";
    case ModelKind::FastTextCbow: return "ft-cbow";
    case ModelKind::FastTextSkipgram: return "ft-sg";
  }
  return "embedding";
}

std::vector<RankedCandidate> lexicon_neighbors(const std::vector<Neighbor>& neighbors,
                                               const Lexicon& lexicon) {
  std::vector<RankedCandidate> out;
  for (const auto& n : neighbors) {
    if (const auto* entry = replacement_entry(lexicon, n.word)) {
      out.push_back({n.word, n.similarity, std::nullopt, entry->frequency});
    }
  }
  return out;
}

// Second stage shared by the hybrid and mean-ensemble methods: order the
// embedding pool by DL distance and keep the top_m.
void rerank_by_distance(std::string_view word, std::vector<RankedCandidate>& pool,
                        const CorrectorConfig& config) {
  const std::u32string query = utf8::decode(word);
  for (auto& c : pool) c.distance = damerau_levenshtein(query, utf8::decode(c.word));
  std::sort(pool.begin(), pool.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
    if (*a.distance != *b.distance) return *a.distance < *b.distance;
    if (*a.similarity != *b.similarity) return *a.similarity > *b.similarity;
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.word < b.word;
  });
  if (pool.size() > config.top_m) pool.resize(config.top_m);
}

Correction pool_then_distance(std::string_view word, std::vector<RankedCandidate> pool,
                              const Lexicon& lexicon, const CorrectorConfig& config,
                              std::string tag, bool oov) {
  if (pool.empty()) {
    Correction fallback = correct_word_distance(word, lexicon, config, DistanceMetric::DamerauOsa);
    fallback.method_tag = tag + ">dl";
    fallback.out_of_vocabulary = oov;
    return fallback;
  }
  Correction correction;
  correction.original = word_token(word);
  correction.method_tag = std::move(tag);
  rerank_by_distance(word, pool, config);
  correction.candidates = std::move(pool);
  finalize(correction);
  return correction;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

}  // namespace

std::string_view to_string(MistakeType type) {
  switch (type) {
    case MistakeType::WordReduction: return "WordReduction";
    case MistakeType::MissingOrMisspelledSymbols: return "MissingOrMisspelledSymbols";
    case MistakeType::MultipleWordsSeparation: return "MultipleWordsSeparation";
  }
  return "unknown";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::None: return "none";
    case Method::Levenshtein: return "lev";
    case Method::DamerauLevenshtein: return "dl";
    case Method::Embedding: return "embedding";
    case Method::Hybrid: return "hybrid";
    case Method::MeanEnsemble: return "mean";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "none") return Method::None;
  if (name == "lev") return Method::Levenshtein;
  if (name == "dl") return Method::DamerauLevenshtein;
  if (name == "embedding" || name == "w2v" || name == "ft") return Method::Embedding;
  if (name == "hybrid") return Method::Hybrid;
  if (name == "mean") return Method::MeanEnsemble;
  return std::nullopt;
}

void CorrectorConfig::validate() const {
  if (top_n == 0 || top_m == 0 || top_m > top_n) {
    throw ConfigError("corrector requires 1 <= top_m <= top_n");
  }
  if (!(split_probability_threshold > 0.0 && split_probability_threshold < 1.0)) {
    throw ConfigError("split probability threshold must lie in (0, 1)");
  }
  if (max_split_parts < 2) throw ConfigError("max_split_parts must be at least 2");
  if (min_split_part_length == 0) throw ConfigError("min_split_part_length must be positive");
}

DistanceBudget CorrectorConfig::budget_for(std::string_view word) const {
  if (max_distance) return DistanceBudget{*max_distance};
  return DistanceBudget::for_length(utf8::length(word));
}

std::vector<Token> detect(const std::vector<Token>& tokens, const Lexicon& lexicon,
                          const CorrectorConfig& config) {
  std::vector<Token> flagged;
  for (const auto& token : tokens) {
    if (token.cls != TokenClass::Word) continue;
    if (utf8::length(token.normalized) < config.min_flag_length) continue;
    if (lexicon.find_normalized(token.normalized) != nullptr) continue;
    flagged.push_back(token);
  }
  return flagged;
}

std::optional<std::vector<std::string>> try_split(std::string_view word, const Lexicon& lexicon,
                                                  const CorpusStats& stats,
                                                  const CorrectorConfig& config) {
  const std::u32string chars = utf8::decode(word);
  const std::size_t min_part = config.min_split_part_length;
  if (chars.size() < 2 * min_part) return std::nullopt;

  struct Scored {
    std::vector<std::string> parts;
    double score;
    std::uint64_t frequency;
  };
  std::optional<Scored> best;
  auto better = [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.parts.size() != b.parts.size()) return a.parts.size() < b.parts.size();
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.parts < b.parts;
  };

  std::vector<std::string> parts;
  std::uint64_t frequency = 0;
  // Depth-first over cut positions; every part must be a lexicon word.
  auto extend = [&](auto& self, std::size_t start) -> void {
    const std::size_t remaining = chars.size() - start;
    for (std::size_t len = min_part; len <= remaining; ++len) {
      const bool last = len == remaining;
      if (!last && remaining - len < min_part) continue;
      if (!last && parts.size() + 1 >= config.max_split_parts) continue;
      std::string part = utf8::encode(std::u32string_view(chars).substr(start, len));
      const LexiconEntry* entry = replacement_entry(lexicon, part);
      if (entry == nullptr) continue;
      parts.push_back(std::move(part));
      frequency += entry->frequency;
      if (last) {
        if (parts.size() >= 2) {
          double product = 1.0;
          for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
            product *= stats.bigram_probability(parts[i], parts[i + 1]);
          }
          Scored s{parts, std::pow(product, 1.0 / static_cast<double>(parts.size() - 1)), frequency};
          if (!best || better(s, *best)) best = std::move(s);
        }
      } else {
        self(self, start + len);
      }
      frequency -= entry->frequency;
      parts.pop_back();
    }
  };
  extend(extend, 0);

  if (!best || best->score < config.split_probability_threshold) return std::nullopt;
  return std::move(best->parts);
}

Correction correct_word_distance(std::string_view word, const Lexicon& lexicon,
                                 const CorrectorConfig& config, DistanceMetric metric) {
  Correction correction;
  correction.original = word_token(word);
  correction.method_tag = std::string(to_string(metric));
  for (auto& c : nearest_by_distance(word, lexicon, config.budget_for(word), metric)) {
    if (c.word == word || replacement_entry(lexicon, c.word) == nullptr) continue;
    correction.candidates.push_back({std::move(c.word), std::nullopt, c.distance, c.frequency});
    if (correction.candidates.size() == config.top_n) break;
  }
  finalize(correction);
  return correction;
}

Correction correct_word_embedding(std::string_view word, const EmbeddingModel& model,
                                  const Lexicon& lexicon, const CorrectorConfig& config) {
  Correction correction;
  correction.original = word_token(word);
  correction.method_tag = embedding_tag(model);
  if (!model.can_embed(word)) {
    correction.out_of_vocabulary = true;
    return correction;
  }
  try {
    correction.candidates = lexicon_neighbors(model.top_n_similar(word, config.top_n), lexicon);
  } catch (const UndefinedSimilarityError&) {
    return correction;
  }
  finalize(correction);
  return correction;
}

Correction correct_word_hybrid(std::string_view word, const EmbeddingModel& model,
                               const Lexicon& lexicon, const CorrectorConfig& config) {
  std::vector<RankedCandidate> pool;
  const bool oov = !model.can_embed(word);
  if (!oov) {
    try {
      pool = lexicon_neighbors(model.top_n_similar(word, config.top_n), lexicon);
    } catch (const UndefinedSimilarityError&) {
      pool.clear();
    }
  }
  return pool_then_distance(word, std::move(pool), lexicon, config, "hybrid", oov);
}

Correction correct_word_mean_ensemble(std::string_view word,
                                      const std::vector<const EmbeddingModel*>& models,
                                      const Lexicon& lexicon, const CorrectorConfig& config) {
  const auto neighbors = ensemble_top_n_similar(models, word, config.top_n);
  const bool oov = std::none_of(models.begin(), models.end(),
                                [&](const EmbeddingModel* m) { return m->can_embed(word); });
  return pool_then_distance(word, lexicon_neighbors(neighbors, lexicon), lexicon, config, "mean",
                            oov);
}

MistakeType classify_mistake(std::string_view original, const Correction& correction) {
  if (correction.is_split()) return MistakeType::MultipleWordsSeparation;
  if (!correction.chosen) throw ConfigError("classify_mistake requires a chosen replacement");
  const std::u32string from = utf8::decode(normalize(original));
  const std::u32string to = utf8::decode(normalize(*correction.chosen));
  if (to.size() >= from.size() + 2 && std::u32string_view(to).starts_with(from)) {
    return MistakeType::WordReduction;
  }
  return MistakeType::MissingOrMisspelledSymbols;
}

Corrector::Corrector(Resources resources, CorrectorConfig config, Method method)
    : resources_(std::move(resources)), config_(config), method_(method) {
  config_.validate();
  if (resources_.lexicon == nullptr) throw ConfigError("corrector requires a lexicon");
  for (const auto* model : resources_.models) {
    if (model == nullptr) throw ConfigError("null embedding model");
  }
  const bool needs_model =
      method_ == Method::Embedding || method_ == Method::Hybrid || method_ == Method::MeanEnsemble;
  if (needs_model && resources_.models.empty()) {
    throw ConfigError(std::string("method '") + std::string(to_string(method_)) +
                      "' requires an embedding model");
  }
}

Correction Corrector::correct_word(std::string_view word) const {
  const Lexicon& lexicon = *resources_.lexicon;
  switch (method_) {
    case Method::None: {
      Correction c;
      c.original = word_token(word);
      c.method_tag = "none";
      return c;
    }
    case Method::Levenshtein:
      return correct_word_distance(word, lexicon, config_, DistanceMetric::Levenshtein);
    case Method::DamerauLevenshtein:
      return correct_word_distance(word, lexicon, config_, DistanceMetric::DamerauOsa);
    case Method::Embedding:
      return correct_word_embedding(word, *resources_.models.front(), lexicon, config_);
    case Method::Hybrid:
      return correct_word_hybrid(word, *resources_.models.front(), lexicon, config_);
    case Method::MeanEnsemble:
      return correct_word_mean_ensemble(word, resources_.models, lexicon, config_);
  }
  throw ConfigError("unknown correction method");
}

CorrectionResult Corrector::correct_text(std::string_view text) const {
  CorrectionResult result;
  if (method_ == Method::None) {
    result.text = std::string(text);
    return result;
  }
  const auto flagged = detect(tokenize(text), *resources_.lexicon, config_);
  for (const auto& token : flagged) {
    std::optional<std::vector<std::string>> split;
    if (resources_.stats != nullptr) {
      split = try_split(token.normalized, *resources_.lexicon, *resources_.stats, config_);
    }
    Correction correction;
    if (split) {
      correction.chosen = join(*split);
      correction.split_parts = std::move(*split);
      correction.mistake_type = MistakeType::MultipleWordsSeparation;
      correction.method_tag = "split";
    } else {
      correction = correct_word(token.normalized);
    }
    correction.original = token;
    result.corrections.push_back(std::move(correction));
  }

  std::size_t cursor = 0;
  for (const auto& c : result.corrections) {
    result.text.append(text.substr(cursor, c.original.start - cursor));
    result.text.append(c.chosen ? *c.chosen : c.original.surface);
    cursor = c.original.end;
  }
  result.text.append(text.substr(cursor));
  return result;
}

CorrectionResult correct_text(std::string_view text, const Resources& resources,
                              const CorrectorConfig& config, Method method) {
  return Corrector(resources, config, method).correct_text(text);
}

std::string revert_corrections(std::string_view corrected,
                               const std::vector<Correction>& corrections) {
  std::string out;
  std::size_t cursor = 0;      // position in `corrected`
  std::size_t input_pos = 0;   // matching position in the original input
  for (const auto& c : corrections) {
    if (!c.chosen) continue;
    const std::size_t at = cursor + (c.original.start - input_pos);
    if (at + c.chosen->size() > corrected.size() ||
        corrected.substr(at, c.chosen->size()) != *c.chosen) {
      throw ConfigError("correction report does not match the corrected text");
    }
    out.append(corrected.substr(cursor, at - cursor));
    out.append(c.original.surface);
    cursor = at + c.chosen->size();
    input_pos = c.original.end;
  }
  out.append(corrected.substr(cursor));
  return out;
}

}  // namespace clinspell
