#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ltq::utf8 {

// Decodes UTF-8; throws ltq::Error on malformed input.
std::u32string decode(std::string_view bytes);
std::string encode(std::u32string_view cps);
void append(std::string& out, char32_t cp);

bool is_space(char32_t cp) noexcept;
// Han ideographs, kana, bopomofo and hangul syllables.
bool is_cjk(char32_t cp) noexcept;
// Letters, digits and combining marks of the scripts we recognise.
bool is_word_char(char32_t cp) noexcept;

char32_t fold_case(char32_t cp) noexcept;
std::string fold_case(std::string_view bytes);

} // namespace ltq::utf8
