#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace clinspell {

enum class ModelKind { Word2Vec, FastTextCbow, FastTextSkipgram };

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);
constexpr bool uses_subwords(ModelKind kind) { return kind != ModelKind::Word2Vec; }

struct SubwordSpec {
  int ngram_min = 3;
  int ngram_max = 6;
  std::uint32_t bucket_count = 1u << 21;
};

// 32-bit FNV-1a over the UTF-8 bytes.
std::uint32_t fnv1a_32(std::string_view bytes);

// Every character n-gram of "<word>" with length in [ngram_min, ngram_max]
// code points, in (start, length) order. Repeated n-grams are repeated.
std::vector<std::string> char_ngrams(std::string_view word, int ngram_min, int ngram_max);

// fnv1a_32(ngram) % bucket_count for each n-gram of `word`.
std::vector<std::uint32_t> ngram_buckets(std::string_view word, const SubwordSpec& spec);

// Bucket-hashed n-gram vectors, rows in bucket order.
struct SubwordTable {
  SubwordSpec spec;
  std::vector<float> vectors;  // bucket_count * dim
};

// dot(u, v) / (|u| |v|). Throws UndefinedSimilarityError on a zero norm and
// ConfigError on a length mismatch.
double cosine_similarity(std::span<const float> u, std::span<const float> v);
double cosine_similarity(std::span<const double> u, std::span<const double> v);

struct Neighbor {
  std::string word;
  double similarity = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Word vectors plus, for FastText kinds, the subword bucket table used to
// compose vectors for unseen words. Immutable after construction.
class EmbeddingModel {
 public:
  EmbeddingModel(ModelKind kind, std::size_t dim, std::vector<std::string> words,
                 std::vector<float> word_vectors, std::optional<SubwordTable> subwords = {});

  ModelKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  std::size_t vocab_size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  const std::optional<SubwordTable>& subwords() const { return subwords_; }

  std::optional<std::size_t> index_of(std::string_view word) const;
  bool in_vocabulary(std::string_view word) const { return index_of(word).has_value(); }
  // In vocabulary, or composable from subwords.
  bool can_embed(std::string_view word) const;

  std::span<const float> row(std::size_t index) const;
  double row_norm(std::size_t index) const { return norms_[index]; }

  // Stored vector for known words; mean of n-gram bucket vectors otherwise.
  // Throws OutOfVocabularyError for unknown words without a subword table.
  std::vector<float> vector_of(std::string_view word) const;

  // Exhaustive cosine search excluding `word` itself; sorted by descending
  // similarity, then word. Rows with zero norm are skipped.
  std::vector<Neighbor> top_n_similar(std::string_view word, std::size_t n) const;

 private:
  ModelKind kind_;
  std::size_t dim_;
  std::vector<std::string> words_;
  std::vector<float> vectors_;
  std::vector<double> norms_;
  std::optional<SubwordTable> subwords_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Free-function form of EmbeddingModel::top_n_similar.
std::vector<Neighbor> top_n_similar(const EmbeddingModel& model, std::string_view word,
                                    std::size_t n);

// Mean cosine similarity over the models able to embed both words. Throws
// OutOfVocabularyError if no model can.
double mean_ensemble_similarity(std::span<const EmbeddingModel* const> models,
                                std::string_view word, std::string_view candidate);

// Top-n over the union of model vocabularies by mean_ensemble_similarity,
// excluding `word`. Empty if no model can embed `word`.
std::vector<Neighbor> ensemble_top_n_similar(std::span<const EmbeddingModel* const> models,
                                             std::string_view word, std::size_t n);

// Text vector format: "<vocab_size> <dim>" then "word v1 ... vdim" rows,
// floats with 6 significant digits. The subword companion has header
// "<ngram_min> <ngram_max> <bucket_count> <dim>" and one row per bucket.
void save_vectors(const EmbeddingModel& model, std::ostream& out);
void save_subwords(const EmbeddingModel& model, std::ostream& out);

// Without a subword stream the model is Word2Vec; with one, `kind` must be
// a FastText kind. Throws FormatError with the offending line.
EmbeddingModel load_vectors(std::istream& vectors, const std::string& source_name,
                            std::istream* subwords = nullptr,
                            ModelKind kind = ModelKind::Word2Vec);

// On-disk model set: <prefix>.vec, <prefix>.subword (FastText kinds) and
// <prefix>.meta ("key=value" lines; "kind" selects the model kind).
struct ModelPaths {
  std::filesystem::path vectors;
  std::filesystem::path subwords;
  std::filesystem::path meta;

  // A trailing ".vec" on `prefix` is dropped.
  static ModelPaths from_prefix(const std::filesystem::path& prefix);
};

void save_model(const EmbeddingModel& model, const ModelPaths& paths,
                const std::vector<std::pair<std::string, std::string>>& meta = {});
EmbeddingModel load_model(const ModelPaths& paths);

}  // namespace clinspell
