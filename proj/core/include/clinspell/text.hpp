#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace clinspell {

enum class TokenClass { Word, Number, Punctuation, Mixed };

std::string_view to_string(TokenClass cls);

// A span of the source text. `surface` is the exact byte slice
// source[start, end); `normalized` is its case-folded form.
struct Token {
  std::string surface;
  std::string normalized;
  std::size_t start = 0;
  std::size_t end = 0;
  TokenClass cls = TokenClass::Punctuation;

  friend bool operator==(const Token&, const Token&) = default;
};

// Splits text into Word / Number / Mixed runs and single-character
// Punctuation tokens. Whitespace is never part of a token. A hyphen is kept
// inside a run only when it sits between two alphanumeric characters.
std::vector<Token> tokenize(std::string_view text);

// Locale-independent Unicode simple case folding. Idempotent.
std::string normalize(std::string_view surface);

// True when `word` tokenizes to exactly one Word token covering all of it.
bool is_word_shaped(std::string_view word);

}  // namespace clinspell
