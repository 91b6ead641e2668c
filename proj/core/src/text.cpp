#include "clinspell/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "clinspell/utf8.hpp"

namespace clinspell {

namespace {

enum class CharKind { Space, Letter, Digit, Hyphen, Other };

bool is_hyphen(char32_t c) { return c == U'-' || c == U'\u2010'; }

CharKind classify(char32_t c) {
  const auto uc = static_cast<UChar32>(c);
  if (u_isUWhiteSpace(uc)) return CharKind::Space;
  if (u_isdigit(uc)) return CharKind::Digit;
  if (u_hasBinaryProperty(uc, UCHAR_ALPHABETIC)) return CharKind::Letter;
  if (is_hyphen(c)) return CharKind::Hyphen;
  return CharKind::Other;
}

bool is_alnum(CharKind kind) { return kind == CharKind::Letter || kind == CharKind::Digit; }

struct Decoded {
  char32_t c;
  std::size_t start;
  std::size_t end;
  CharKind kind;
};

std::vector<Decoded> decode_positions(std::string_view text) {
  std::vector<Decoded> out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t c = utf8::next(text, pos);
    out.push_back({c, start, pos, classify(c)});
  }
  return out;
}

}  // namespace

std::string_view to_string(TokenClass cls) {
  switch (cls) {
    case TokenClass::Word: return "word";
    case TokenClass::Number: return "number";
    case TokenClass::Punctuation: return "punctuation";
    case TokenClass::Mixed: return "mixed";
  }
  return "unknown";
}

std::string normalize(std::string_view surface) {
  std::string out;
  out.reserve(surface.size());
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(surface.data());
  const auto length = static_cast<std::int32_t>(surface.size());
  std::int32_t i = 0;
  while (i < length) {
    const std::int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      // Ill-formed bytes pass through untouched.
      out.append(surface.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(i - start)));
      continue;
    }
    utf8::append(out, static_cast<char32_t>(u_foldCase(c, U_FOLD_CASE_DEFAULT)));
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  const auto chars = decode_positions(text);
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < chars.size()) {
    const CharKind kind = chars[i].kind;
    if (kind == CharKind::Space) {
      ++i;
      continue;
    }
    if (!is_alnum(kind)) {
      const std::size_t start = chars[i].start;
      const std::size_t end = chars[i].end;
      std::string surface(text.substr(start, end - start));
      tokens.push_back({surface, normalize(surface), start, end, TokenClass::Punctuation});
      ++i;
      continue;
    }

    bool letters = false;
    bool digits = false;
    std::size_t j = i;
    while (j < chars.size()) {
      const CharKind k = chars[j].kind;
      if (k == CharKind::Letter) {
        letters = true;
      } else if (k == CharKind::Digit) {
        digits = true;
      } else if (k == CharKind::Hyphen && j + 1 < chars.size() && is_alnum(chars[j + 1].kind)) {
        // internal hyphen
      } else {
        break;
      }
      ++j;
    }
    const std::size_t start = chars[i].start;
    const std::size_t end = chars[j - 1].end;
    std::string surface(text.substr(start, end - start));
    const TokenClass cls = letters && digits ? TokenClass::Mixed
                           : letters         ? TokenClass::Word
                                             : TokenClass::Number;
    tokens.push_back({surface, normalize(surface), start, end, cls});
    i = j;
  }
  return tokens;
}

bool is_word_shaped(std::string_view word) {
  if (word.empty()) return false;
  const auto tokens = tokenize(word);
  return tokens.size() == 1 && tokens.front().cls == TokenClass::Word &&
         tokens.front().start == 0 && tokens.front().end == word.size();
}

}  // namespace clinspell
