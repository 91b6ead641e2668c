#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace clinspell::utf8 {

// Decodes UTF-8 into code points. Each byte of an ill-formed sequence
// decodes to U+FFFD on its own.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view code_points);

void append(std::string& out, char32_t code_point);

// Number of code points, counting ill-formed bytes one each.
std::size_t length(std::string_view text);

// Decodes the code point starting at byte `pos`; advances `pos` past it.
// Returns U+FFFD and advances one byte on ill-formed input.
char32_t next(std::string_view text, std::size_t& pos);

}  // namespace clinspell::utf8
