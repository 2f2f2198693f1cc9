#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Deterministic text-analysis primitives: paragraphs, sentences, words and
// number tokens. Every rule-based verifier measures text through these, so
// the rules are fixed and documented here rather than delegated to a
// statistical splitter.
//
//   paragraph  maximal run of lines separated by one or more blank lines
//              (a line containing only whitespace is blank); trimmed.
//   sentence   closed by a run of `.` `!` `?` (the run counts once),
//              optionally followed by closing quotes/brackets, then
//              whitespace or end of text. A terminator only closes a
//              sentence that already has non-terminator content, so a
//              sentence may *begin* with "!" or "?". A fixed abbreviation
//              list (Mr., Mrs., Dr., e.g., i.e., etc., vs., No., Fig., Eq.)
//              suppresses boundaries. Trailing unterminated text is a
//              sentence.
//   word       whitespace-separated token with leading/trailing punctuation
//              stripped; hyphenated compounds are one word; standalone
//              numbers count.

namespace mmif::textseg {

std::vector<std::string> split_paragraphs(std::string_view text);

/// Splits one paragraph (no blank lines) into sentences.
std::vector<std::string> split_sentences(std::string_view paragraph);

std::size_t count_words(std::string_view text);

enum class NumberKind { Integer, Decimal, Scientific };

/// One numeric literal found in text.
///
/// Grammar (longest match, left to right):
///   Scientific  d(.d+)? then e/E and a signed integer, or d(.d+)? then
///               `x10^` / `×10^` and a signed integer
///   Decimal     [+-]? digits `.` digits, thousands separators permitted
///               before the point in groups of three
///   Integer     [+-]? digits, optional thousands separators
/// Matches glued to identifiers ("GPT-4o", "v2") are excluded.
struct NumberToken {
  std::string surface;
  NumberKind kind = NumberKind::Integer;
  int decimal_places = 0;     // Decimal only: digit count after the point
  int significant_digits = 0; // Scientific only: mantissa digits sans leading zeros
  std::size_t begin = 0;      // byte offsets into the scanned text
  std::size_t end = 0;
};

std::vector<NumberToken> extract_numbers(std::string_view text);

/// Full segmentation of a response, computed once and shared by verifiers.
struct SegmentedText {
  std::string raw;
  std::vector<std::string> paragraphs;
  std::vector<std::vector<std::string>> sentences_per_paragraph;
  std::size_t word_count = 0;

  std::size_t paragraph_count() const { return paragraphs.size(); }
  std::size_t sentence_count() const;
};

SegmentedText segment(std::string_view text);

}  // namespace mmif::textseg
