#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace clinspell {

class Lexicon;

enum class DistanceMetric {
  Levenshtein,
  // Optimal string alignment: Levenshtein plus adjacent transposition,
  // no substring edited twice. ("ca", "abc") is 3 here, 2 unrestricted.
  DamerauOsa,
};

std::string_view to_string(DistanceMetric metric);

struct DistanceBudget {
  std::size_t max_distance = 2;

  // 2 for words up to 8 code points, 3 beyond.
  static DistanceBudget for_length(std::size_t code_points);
};

// Distances over Unicode code points. The string overloads normalize
// (case-fold) both arguments first.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein(std::string_view a, std::string_view b);

std::size_t damerau_levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t damerau_levenshtein(std::string_view a, std::string_view b);

// Banded computation with early exit. Returns the exact distance when it is
// within budget, nullopt otherwise.
std::optional<std::size_t> bounded_distance(std::u32string_view a, std::u32string_view b,
                                            DistanceBudget budget,
                                            DistanceMetric metric = DistanceMetric::DamerauOsa);
std::optional<std::size_t> bounded_distance(std::string_view a, std::string_view b,
                                            DistanceBudget budget,
                                            DistanceMetric metric = DistanceMetric::DamerauOsa);

struct Candidate {
  std::string word;
  std::size_t distance = 0;
  std::uint64_t frequency = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Every lexicon word within budget of `word` (already normalized), sorted by
// (distance, descending frequency, word).
std::vector<Candidate> nearest_by_distance(std::string_view word, const Lexicon& lexicon,
                                           DistanceBudget budget,
                                           DistanceMetric metric = DistanceMetric::DamerauOsa);

}  // namespace clinspell
