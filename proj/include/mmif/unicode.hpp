#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 / character-class helpers shared by the text primitives.
// Classification covers ASCII plus the Unicode ranges that show up in model
// output (Latin-1/Extended-A letters, Greek, Cyrillic, CJK, general
// punctuation, common space characters). Case folding is the simple
// one-to-one fold over the same ranges.

namespace mmif::uni {

inline constexpr char32_t kReplacement = 0xFFFD;

/// Decodes one codepoint at byte offset `i`, advancing `i` past it.
/// Invalid bytes decode to U+FFFD and advance by one.
char32_t decode(std::string_view text, std::size_t& i);

/// Number of bytes the UTF-8 encoding of the codepoint starting at `i` uses.
std::size_t sequence_length(std::string_view text, std::size_t i);

bool is_space(char32_t cp);
bool is_punct(char32_t cp);
bool is_digit(char32_t cp);
bool is_letter(char32_t cp);

/// Letter or digit; the word-boundary alphabet for keyword matching.
inline bool is_word(char32_t cp) { return is_letter(cp) || is_digit(cp); }

/// Simple (one-to-one) case fold.
char32_t fold(char32_t cp);

/// A case-folded view of a UTF-8 string that remembers where each folded
/// codepoint started in the original bytes, so match positions can be
/// reported against the raw text.
struct FoldedText {
  std::u32string folded;
  std::vector<std::size_t> byte_offset;  // size == folded.size() + 1; last == raw size
};

FoldedText fold_text(std::string_view text);

/// Codepoint-aware trim of leading/trailing whitespace.
std::string_view trim(std::string_view text);

}  // namespace mmif::uni
