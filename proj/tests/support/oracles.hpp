#pragma once

// Reference implementations used only by tests. None of these call into the
// code paths they check, except for plain data access on models.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "clinspell/embedding.hpp"

namespace clinspell::oracle {

// Exponential recursion straight from the definition.
inline std::size_t naive_levenshtein(const std::u32string& a, std::size_t i, const std::u32string& b,
                                     std::size_t j) {
  if (i == 0) return j;
  if (j == 0) return i;
  const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
  return std::min({naive_levenshtein(a, i - 1, b, j) + 1, naive_levenshtein(a, i, b, j - 1) + 1,
                   naive_levenshtein(a, i - 1, b, j - 1) + cost});
}

inline std::size_t naive_levenshtein(const std::u32string& a, const std::u32string& b) {
  return naive_levenshtein(a, a.size(), b, b.size());
}

// Optimal string alignment by recursion over prefixes.
inline std::size_t naive_osa(const std::u32string& a, std::size_t i, const std::u32string& b,
                             std::size_t j) {
  if (i == 0) return j;
  if (j == 0) return i;
  const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
  std::size_t best = std::min({naive_osa(a, i - 1, b, j) + 1, naive_osa(a, i, b, j - 1) + 1,
                               naive_osa(a, i - 1, b, j - 1) + cost});
  if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
    best = std::min(best, naive_osa(a, i - 2, b, j - 2) + 1);
  }
  return best;
}

inline std::size_t naive_osa(const std::u32string& a, const std::u32string& b) {
  return naive_osa(a, a.size(), b, b.size());
}

// Breadth-first search over whole strings using insert / delete / substitute
// / adjacent swap, each costing 1, with no restriction on re-editing. This is
// unrestricted Damerau-Levenshtein (or plain Levenshtein without swaps).
inline std::size_t bfs_edit_distance(const std::u32string& from, const std::u32string& to,
                                     bool swaps) {
  std::set<char32_t> alphabet(from.begin(), from.end());
  alphabet.insert(to.begin(), to.end());
  const std::size_t max_len = from.size() + to.size() + 1;
  std::set<std::u32string> seen{from};
  std::deque<std::pair<std::u32string, std::size_t>> queue{{from, 0}};
  while (!queue.empty()) {
    auto [s, d] = queue.front();
    queue.pop_front();
    if (s == to) return d;
    std::vector<std::u32string> next;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      for (char32_t c : alphabet) {
        if (s.size() < max_len) next.push_back(s.substr(0, i) + c + s.substr(i));
        if (i < s.size() && s[i] != c) {
          auto t = s;
          t[i] = c;
          next.push_back(t);
        }
      }
      if (i < s.size()) next.push_back(s.substr(0, i) + s.substr(i + 1));
      if (swaps && i + 1 < s.size()) {
        auto t = s;
        std::swap(t[i], t[i + 1]);
        next.push_back(t);
      }
    }
    for (auto& t : next) {
      if (seen.insert(t).second) queue.emplace_back(std::move(t), d + 1);
    }
  }
  return SIZE_MAX;
}

// All strings over `alphabet` with length <= max_len.
inline std::vector<std::u32string> all_strings(const std::u32string& alphabet, std::size_t max_len) {
  std::vector<std::u32string> out{U""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (char32_t c : alphabet) out.push_back(out[k] + c);
    }
    begin = end;
  }
  return out;
}

// Scan every word with the public cosine function and fully sort.
inline std::vector<Neighbor> brute_force_top_n(const EmbeddingModel& model, const std::string& word,
                                               std::size_t n) {
  const std::vector<float> q = model.vector_of(word);
  std::vector<Neighbor> all;
  for (std::size_t i = 0; i < model.vocab_size(); ++i) {
    if (model.words()[i] == word) continue;
    const auto row = model.row(i);
    bool zero = std::all_of(row.begin(), row.end(), [](float v) { return v == 0.0f; });
    if (zero) continue;
    all.push_back({model.words()[i], cosine_similarity(std::span<const float>(q), row)});
  }
  std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.word < b.word;
  });
  if (all.size() > n) all.resize(n);
  return all;
}

// Independent FNV-1a and n-gram enumeration (by length first, then start).
inline std::uint32_t fnv1a(const std::string& s) {
  std::uint32_t h = 0x811c9dc5u;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x01000193u;
  }
  return h;
}

inline std::string utf8_of(const std::u32string& s) {
  std::string out;
  for (char32_t c : s) {
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

inline std::vector<std::string> ngrams_by_length(const std::u32string& word, int minn, int maxn) {
  const std::u32string wrapped = U"<" + word + U">";
  std::vector<std::string> out;
  for (int len = minn; len <= maxn; ++len) {
    for (int start = 0; start + len <= static_cast<int>(wrapped.size()); ++start) {
      out.push_back(utf8_of(wrapped.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(len))));
    }
  }
  return out;
}

// Mean of bucket rows for an out-of-vocabulary word, recomputed from the raw table.
inline std::vector<double> composed_vector(const SubwordTable& table, std::size_t dim,
                                           const std::u32string& word) {
  const auto grams = ngrams_by_length(word, table.spec.ngram_min, table.spec.ngram_max);
  std::vector<double> sum(dim, 0.0);
  for (const auto& g : grams) {
    const std::size_t bucket = fnv1a(g) % table.spec.bucket_count;
    for (std::size_t d = 0; d < dim; ++d) sum[d] += table.vectors[bucket * dim + d];
  }
  for (auto& v : sum) v /= static_cast<double>(grams.size());
  return sum;
}

// Central finite differences of f at x.
inline std::vector<double> numeric_gradient(const std::function<double(const std::vector<double>&)>& f,
                                            std::vector<double> x, double step) {
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + step;
    const double plus = f(x);
    x[i] = saved - step;
    const double minus = f(x);
    x[i] = saved;
    grad[i] = (plus - minus) / (2.0 * step);
  }
  return grad;
}

// |a - b| / max(|a|, |b|) over whole vectors; 0 when both vanish.
inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double scale = std::max(std::sqrt(na), std::sqrt(nb));
  return scale == 0.0 ? 0.0 : std::sqrt(diff) / scale;
}

}  // namespace clinspell::oracle
