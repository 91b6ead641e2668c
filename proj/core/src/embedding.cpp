#include "clinspell/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "clinspell/error.hpp"
#include "clinspell/text.hpp"
#include "clinspell/utf8.hpp"

namespace clinspell {

namespace {

// Shared by cosine_similarity and the cached-norm scans so that both produce
// bit-identical values.
template <class T, class U>
double dot(std::span<const T> u, std::span<const U> v) {
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += static_cast<double>(u[i]) * static_cast<double>(v[i]);
  return sum;
}

template <class T>
double norm(std::span<const T> u) {
  return std::sqrt(dot(u, u));
}

template <class T>
double cosine(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size()) throw ConfigError("cosine_similarity: vector lengths differ");
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu == 0.0 || nv == 0.0) {
    throw UndefinedSimilarityError("cosine similarity is undefined for a zero vector");
  }
  return dot(u, v) / (nu * nv);
}

bool neighbor_before(const Neighbor& a, const Neighbor& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return a.word < b.word;
}

void keep_top(std::vector<Neighbor>& all, std::size_t n) {
  const std::size_t k = std::min(n, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                    neighbor_before);
  all.resize(k);
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Word2Vec: return "W2V";
    case ModelKind::FastTextCbow: return "FastTextCBOW";
    case ModelKind::FastTextSkipgram: return "FastTextSG";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  const std::string folded = normalize(name);
  if (folded == "w2v" || folded == "word2vec") return ModelKind::Word2Vec;
  if (folded == "fasttextcbow" || folded == "ft-cbow") return ModelKind::FastTextCbow;
  if (folded == "fasttextsg" || folded == "ft-sg") return ModelKind::FastTextSkipgram;
  return std::nullopt;
}

std::uint32_t fnv1a_32(std::string_view bytes) {
  std::uint32_t h = 2166136261u;
  for (const char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 16777619u;
  }
  return h;
}

std::vector<std::string> char_ngrams(std::string_view word, int ngram_min, int ngram_max) {
  std::u32string wrapped = U"<";
  wrapped += utf8::decode(word);
  wrapped += U'>';
  std::vector<std::string> out;
  const auto total = static_cast<int>(wrapped.size());
  for (int start = 0; start < total; ++start) {
    for (int len = ngram_min; len <= ngram_max && start + len <= total; ++len) {
      out.push_back(utf8::encode(std::u32string_view(wrapped).substr(
          static_cast<std::size_t>(start), static_cast<std::size_t>(len))));
    }
  }
  return out;
}

std::vector<std::uint32_t> ngram_buckets(std::string_view word, const SubwordSpec& spec) {
  std::vector<std::uint32_t> out;
  for (const auto& gram : char_ngrams(word, spec.ngram_min, spec.ngram_max)) {
    out.push_back(fnv1a_32(gram) % spec.bucket_count);
  }
  return out;
}

double cosine_similarity(std::span<const float> u, std::span<const float> v) { return cosine(u, v); }
double cosine_similarity(std::span<const double> u, std::span<const double> v) { return cosine(u, v); }

EmbeddingModel::EmbeddingModel(ModelKind kind, std::size_t dim, std::vector<std::string> words,
                               std::vector<float> word_vectors,
                               std::optional<SubwordTable> subwords)
    : kind_(kind),
      dim_(dim),
      words_(std::move(words)),
      vectors_(std::move(word_vectors)),
      subwords_(std::move(subwords)) {
  if (dim_ == 0) throw ConfigError("embedding dimension must be positive");
  if (vectors_.size() != words_.size() * dim_) {
    throw ConfigError("word vector table does not match vocab_size * dim");
  }
  if (uses_subwords(kind_) != subwords_.has_value()) {
    throw ConfigError(std::string("model kind ") + std::string(to_string(kind_)) +
                      (subwords_ ? " must not carry" : " requires") + " a subword table");
  }
  if (subwords_) {
    const auto& spec = subwords_->spec;
    if (spec.ngram_min < 1 || spec.ngram_min > spec.ngram_max || spec.bucket_count == 0) {
      throw ConfigError("invalid subword n-gram range or bucket count");
    }
    if (subwords_->vectors.size() != static_cast<std::size_t>(spec.bucket_count) * dim_) {
      throw ConfigError("subword table does not match bucket_count * dim");
    }
  }
  index_.reserve(words_.size());
  norms_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      throw ConfigError("duplicate word '" + words_[i] + "' in embedding table");
    }
    norms_.push_back(norm(row(i)));
  }
}

std::optional<std::size_t> EmbeddingModel::index_of(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool EmbeddingModel::can_embed(std::string_view word) const {
  return in_vocabulary(word) || (subwords_.has_value() && !word.empty());
}

std::span<const float> EmbeddingModel::row(std::size_t index) const {
  return std::span<const float>(vectors_).subspan(index * dim_, dim_);
}

std::vector<float> EmbeddingModel::vector_of(std::string_view word) const {
  if (const auto index = index_of(word)) {
    const auto r = row(*index);
    return {r.begin(), r.end()};
  }
  if (!subwords_ || word.empty()) throw OutOfVocabularyError(std::string(word));
  const auto buckets = ngram_buckets(word, subwords_->spec);
  if (buckets.empty()) throw OutOfVocabularyError(std::string(word));
  std::vector<double> sum(dim_, 0.0);
  for (const std::uint32_t b : buckets) {
    const float* bucket = subwords_->vectors.data() + static_cast<std::size_t>(b) * dim_;
    for (std::size_t d = 0; d < dim_; ++d) sum[d] += bucket[d];
  }
  std::vector<float> out(dim_);
  const auto count = static_cast<double>(buckets.size());
  for (std::size_t d = 0; d < dim_; ++d) out[d] = static_cast<float>(sum[d] / count);
  return out;
}

std::vector<Neighbor> EmbeddingModel::top_n_similar(std::string_view word, std::size_t n) const {
  const std::vector<float> query = vector_of(word);
  const std::span<const float> q(query);
  const double query_norm = norm(q);
  if (query_norm == 0.0) {
    throw UndefinedSimilarityError("query vector for '" + std::string(word) + "' has zero norm");
  }
  const auto self = index_of(word);
  std::vector<Neighbor> all;
  all.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (self && *self == i) continue;
    if (norms_[i] == 0.0) continue;
    all.push_back({words_[i], dot(q, row(i)) / (query_norm * norms_[i])});
  }
  keep_top(all, n);
  return all;
}

std::vector<Neighbor> top_n_similar(const EmbeddingModel& model, std::string_view word,
                                    std::size_t n) {
  return model.top_n_similar(word, n);
}

double mean_ensemble_similarity(std::span<const EmbeddingModel* const> models,
                                std::string_view word, std::string_view candidate) {
  double sum = 0.0;
  std::size_t used = 0;
  for (const EmbeddingModel* model : models) {
    if (!model->can_embed(word) || !model->can_embed(candidate)) continue;
    sum += cosine_similarity(std::span<const float>(model->vector_of(word)),
                             std::span<const float>(model->vector_of(candidate)));
    ++used;
  }
  if (used == 0) {
    const bool word_known = std::any_of(models.begin(), models.end(),
                                        [&](const EmbeddingModel* m) { return m->can_embed(word); });
    throw OutOfVocabularyError(std::string(word_known ? candidate : word));
  }
  return sum / static_cast<double>(used);
}

std::vector<Neighbor> ensemble_top_n_similar(std::span<const EmbeddingModel* const> models,
                                             std::string_view word, std::size_t n) {
  struct Query {
    const EmbeddingModel* model;
    std::vector<float> vector;
    double norm;
  };
  std::vector<Query> queries;
  for (const EmbeddingModel* model : models) {
    if (!model->can_embed(word)) continue;
    auto v = model->vector_of(word);
    const double nv = norm(std::span<const float>(v));
    if (nv == 0.0) continue;
    queries.push_back({model, std::move(v), nv});
  }
  if (queries.empty()) return {};

  std::set<std::string_view> vocabulary;
  for (const EmbeddingModel* model : models) {
    vocabulary.insert(model->words().begin(), model->words().end());
  }

  std::vector<Neighbor> all;
  all.reserve(vocabulary.size());
  for (const std::string_view candidate : vocabulary) {
    if (candidate == word) continue;
    double sum = 0.0;
    std::size_t used = 0;
    for (const Query& query : queries) {
      const std::span<const float> q(query.vector);
      if (const auto index = query.model->index_of(candidate)) {
        const double cn = query.model->row_norm(*index);
        if (cn == 0.0) continue;
        sum += dot(q, query.model->row(*index)) / (query.norm * cn);
      } else if (query.model->can_embed(candidate)) {
        const auto v = query.model->vector_of(candidate);
        const double cn = norm(std::span<const float>(v));
        if (cn == 0.0) continue;
        sum += dot(q, std::span<const float>(v)) / (query.norm * cn);
      } else {
        continue;
      }
      ++used;
    }
    if (used == 0) continue;
    all.push_back({std::string(candidate), sum / static_cast<double>(used)});
  }
  keep_top(all, n);
  return all;
}

}  // namespace clinspell
