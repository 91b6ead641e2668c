#include "clinspell/distance.hpp"

#include <algorithm>
#include <vector>

#include "clinspell/lexicon.hpp"
#include "clinspell/text.hpp"
#include "clinspell/utf8.hpp"

namespace clinspell {

namespace {

std::size_t length_gap(std::u32string_view a, std::u32string_view b) {
  return a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
}

// Three reusable DP rows per thread.
struct Rows {
  std::vector<std::size_t> before;  // row i-2
  std::vector<std::size_t> prev;    // row i-1
  std::vector<std::size_t> cur;     // row i

  void resize(std::size_t n, std::size_t fill) {
    before.assign(n, fill);
    prev.assign(n, fill);
    cur.assign(n, fill);
  }
  void rotate() {
    std::swap(before, prev);
    std::swap(prev, cur);
  }
};

Rows& scratch() {
  thread_local Rows rows;
  return rows;
}

std::size_t full_distance(std::u32string_view a, std::u32string_view b, bool transpositions) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (m == 0) return n;
  if (n == 0) return m;
  Rows& rows = scratch();
  rows.resize(n + 1, 0);
  for (std::size_t j = 0; j <= n; ++j) rows.prev[j] = j;
  for (std::size_t i = 1; i <= m; ++i) {
    rows.cur[0] = i;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      std::size_t best = std::min({rows.prev[j] + 1, rows.cur[j - 1] + 1, rows.prev[j - 1] + cost});
      if (transpositions && i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        best = std::min(best, rows.before[j - 2] + 1);
      }
      rows.cur[j] = best;
    }
    rows.rotate();
  }
  return rows.prev[n];
}

std::optional<std::size_t> banded_distance(std::u32string_view a, std::u32string_view b,
                                           std::size_t cap, bool transpositions) {
  if (length_gap(a, b) > cap) return std::nullopt;
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (m == 0) return n;
  if (n == 0) return m;
  const std::size_t inf = cap + 1;
  Rows& rows = scratch();
  rows.resize(n + 1, inf);
  for (std::size_t j = 0; j <= std::min(n, cap); ++j) rows.prev[j] = j;
  std::size_t prev_min = 0;
  for (std::size_t i = 1; i <= m; ++i) {
    std::fill(rows.cur.begin(), rows.cur.end(), inf);
    rows.cur[0] = i <= cap ? i : inf;
    const std::size_t lo = i > cap ? i - cap : 1;
    const std::size_t hi = std::min(n, i + cap);
    std::size_t row_min = rows.cur[0];
    for (std::size_t j = lo; j <= hi; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      std::size_t best = std::min({rows.prev[j] + 1, rows.cur[j - 1] + 1, rows.prev[j - 1] + cost});
      if (transpositions && i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        best = std::min(best, rows.before[j - 2] + 1);
      }
      rows.cur[j] = std::min(best, inf);
      row_min = std::min(row_min, rows.cur[j]);
    }
    // A transposition can reach back two rows, so both must be exhausted.
    if (row_min > cap && (!transpositions || prev_min > cap)) return std::nullopt;
    prev_min = row_min;
    rows.rotate();
  }
  const std::size_t result = rows.prev[n];
  if (result > cap) return std::nullopt;
  return result;
}

}  // namespace

std::string_view to_string(DistanceMetric metric) {
  return metric == DistanceMetric::Levenshtein ? "lev" : "dl";
}

DistanceBudget DistanceBudget::for_length(std::size_t code_points) {
  return DistanceBudget{code_points <= 8 ? std::size_t{2} : std::size_t{3}};
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  return full_distance(a, b, false);
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(utf8::decode(normalize(a)), utf8::decode(normalize(b)));
}

std::size_t damerau_levenshtein(std::u32string_view a, std::u32string_view b) {
  return full_distance(a, b, true);
}

std::size_t damerau_levenshtein(std::string_view a, std::string_view b) {
  return damerau_levenshtein(utf8::decode(normalize(a)), utf8::decode(normalize(b)));
}

std::optional<std::size_t> bounded_distance(std::u32string_view a, std::u32string_view b,
                                            DistanceBudget budget, DistanceMetric metric) {
  return banded_distance(a, b, budget.max_distance, metric == DistanceMetric::DamerauOsa);
}

std::optional<std::size_t> bounded_distance(std::string_view a, std::string_view b,
                                            DistanceBudget budget, DistanceMetric metric) {
  return bounded_distance(utf8::decode(normalize(a)), utf8::decode(normalize(b)), budget, metric);
}

std::vector<Candidate> nearest_by_distance(std::string_view word, const Lexicon& lexicon,
                                           DistanceBudget budget, DistanceMetric metric) {
  const std::u32string query = utf8::decode(word);
  std::vector<Candidate> out;
  for (const auto& [key, entry] : lexicon.entries()) {
    if (length_gap(query, entry.code_points) > budget.max_distance) continue;
    if (const auto d = bounded_distance(query, entry.code_points, budget, metric)) {
      out.push_back({key, *d, entry.frequency});
    }
  }
  std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    if (x.frequency != y.frequency) return x.frequency > y.frequency;
    return x.word < y.word;
  });
  return out;
}

}  // namespace clinspell
