#include "mmif/textseg.hpp"

#include <array>
#include <algorithm>

#include "mmif/unicode.hpp"

namespace mmif::textseg {

namespace {

bool is_blank_line(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size()) {
    if (!uni::is_space(uni::decode(line, i))) return false;
  }
  return true;
}

bool is_terminator(char32_t cp) { return cp == U'.' || cp == U'!' || cp == U'?'; }

bool is_closer(char32_t cp) {
  switch (cp) {
    case U'"':
    case U'\'':
    case U')':
    case U']':
    case U'}':
    case 0x2019:  // right single quote
    case 0x201D:  // right double quote
    case 0xBB:    // right guillemet
      return true;
    default:
      return false;
  }
}

// Abbreviations whose trailing dot never closes a sentence. Matched against
// the exact surface form.
constexpr std::array<std::string_view, 10> kAbbreviations = {
    "Mr.", "Mrs.", "Dr.", "e.g.", "i.e.", "etc.", "vs.", "No.", "Fig.", "Eq."};

// True when the single dot at byte `dot` ends one of the listed
// abbreviations. Scans back over letters and interior dots to the token
// start.
bool ends_abbreviation(std::string_view text, std::size_t dot) {
  std::size_t w = dot;
  while (w > 0) {
    char c = text[w - 1];
    bool token_char = (c == '.' && w - 1 != dot) ||
                      (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    if (!token_char) break;
    --w;
  }
  if (w == dot) return false;  // dot with no preceding token
  std::string_view token = text.substr(w, dot - w + 1);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), token) !=
         kAbbreviations.end();
}

}  // namespace

std::vector<std::string> split_paragraphs(std::string_view text) {
  std::vector<std::string> paragraphs;
  std::string current;
  bool current_has_line = false;

  auto flush = [&]() {
    std::string_view trimmed = uni::trim(current);
    if (!trimmed.empty()) paragraphs.emplace_back(trimmed);
    current.clear();
    current_has_line = false;
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    if (is_blank_line(line)) {
      flush();
    } else {
      if (current_has_line) current += '\n';
      current.append(line);
      current_has_line = true;
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  flush();
  return paragraphs;
}

std::vector<std::string> split_sentences(std::string_view paragraph) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  bool has_content = false;  // non-terminator, non-space codepoint seen

  auto emit = [&](std::size_t end) {
    std::string_view s = uni::trim(paragraph.substr(start, end - start));
    if (!s.empty()) sentences.emplace_back(s);
  };

  while (i < paragraph.size()) {
    std::size_t next = i;
    char32_t cp = uni::decode(paragraph, next);
    if (!is_terminator(cp)) {
      if (!uni::is_space(cp)) has_content = true;
      i = next;
      continue;
    }
    if (!has_content) {  // leading "!"/"?" belongs to the sentence body
      i = next;
      continue;
    }
    // Extend through the whole terminator run.
    std::size_t run_end = next;
    int run_length = 1;
    while (run_end < paragraph.size()) {
      std::size_t peek = run_end;
      if (!is_terminator(uni::decode(paragraph, peek))) break;
      run_end = peek;
      ++run_length;
    }
    // Closing quotes/brackets stay attached to the sentence.
    std::size_t close_end = run_end;
    while (close_end < paragraph.size()) {
      std::size_t peek = close_end;
      if (!is_closer(uni::decode(paragraph, peek))) break;
      close_end = peek;
    }
    bool at_break = close_end >= paragraph.size();
    if (!at_break) {
      std::size_t peek = close_end;
      at_break = uni::is_space(uni::decode(paragraph, peek));
    }
    bool abbreviation =
        run_length == 1 && cp == U'.' && ends_abbreviation(paragraph, i);
    if (at_break && !abbreviation) {
      emit(close_end);
      start = close_end;
      i = close_end;
      has_content = false;
    } else {
      i = run_end;
    }
  }
  emit(paragraph.size());
  return sentences;
}

std::size_t count_words(std::string_view text) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    // Skip whitespace.
    std::size_t next = i;
    if (uni::is_space(uni::decode(text, next))) {
      i = next;
      continue;
    }
    // Token runs to the next whitespace.
    std::size_t token_begin = i;
    std::size_t token_end = i;
    while (token_end < text.size()) {
      std::size_t peek = token_end;
      if (uni::is_space(uni::decode(text, peek))) break;
      token_end = peek;
    }
    // Count it unless stripping punctuation leaves nothing.
    std::string_view token = text.substr(token_begin, token_end - token_begin);
    std::size_t k = 0;
    bool has_core = false;
    while (k < token.size()) {
      if (!uni::is_punct(uni::decode(token, k))) {
        has_core = true;
        break;
      }
    }
    if (has_core) ++count;
    i = token_end;
  }
  return count;
}

namespace {

struct NumberMatch {
  std::size_t end = 0;
  NumberKind kind = NumberKind::Integer;
  int decimal_places = 0;
  int significant_digits = 0;
};

bool ascii_digit(char c) { return c >= '0' && c <= '9'; }

// Digits with optional thousands separators: D{1,3}(,DDD)* or D+.
// Returns end offset, or `i` when no digits are present.
std::size_t scan_integer_digits(std::string_view t, std::size_t i) {
  std::size_t j = i;
  while (j < t.size() && ascii_digit(t[j])) ++j;
  if (j == i) return i;
  if (j - i <= 3) {
    std::size_t g = j;
    while (g + 3 < t.size() && t[g] == ',' && ascii_digit(t[g + 1]) &&
           ascii_digit(t[g + 2]) && ascii_digit(t[g + 3]) &&
           (g + 4 >= t.size() || !ascii_digit(t[g + 4]))) {
      g += 4;
    }
    if (g > j) return g;
  }
  return j;
}

int count_significant(std::string_view mantissa) {
  int sig = 0;
  bool leading = true;
  for (char c : mantissa) {
    if (!ascii_digit(c)) continue;
    if (leading && c == '0') continue;
    leading = false;
    ++sig;
  }
  return sig == 0 ? 1 : sig;  // all-zero mantissa still has one digit
}

// Scientific: d(.d+)? then e/E/x10^/×10^ and a signed integer exponent.
bool scan_scientific(std::string_view t, std::size_t i, NumberMatch& m) {
  std::size_t j = i;
  if (j < t.size() && (t[j] == '+' || t[j] == '-')) ++j;
  std::size_t mantissa_begin = j;
  if (j >= t.size() || !ascii_digit(t[j])) return false;
  ++j;  // single mantissa digit before the point
  if (j + 1 < t.size() && t[j] == '.' && ascii_digit(t[j + 1])) {
    ++j;
    while (j < t.size() && ascii_digit(t[j])) ++j;
  }
  std::string_view mantissa = t.substr(mantissa_begin, j - mantissa_begin);
  // Exponent marker.
  if (j < t.size() && (t[j] == 'e' || t[j] == 'E')) {
    ++j;
  } else if (t.compare(j, 4, "x10^") == 0) {
    j += 4;
  } else if (t.compare(j, 5, "\xC3\x97"
                          "10^") == 0) {  // ×10^
    j += 5;
  } else {
    return false;
  }
  if (j < t.size() && (t[j] == '+' || t[j] == '-')) ++j;
  std::size_t exp_begin = j;
  while (j < t.size() && ascii_digit(t[j])) ++j;
  if (j == exp_begin) return false;
  m.end = j;
  m.kind = NumberKind::Scientific;
  m.significant_digits = count_significant(mantissa);
  return true;
}

bool scan_decimal(std::string_view t, std::size_t i, NumberMatch& m) {
  std::size_t j = i;
  if (j < t.size() && (t[j] == '+' || t[j] == '-')) ++j;
  std::size_t ip = scan_integer_digits(t, j);
  if (ip == j) return false;
  if (ip >= t.size() || t[ip] != '.') return false;
  std::size_t frac = ip + 1;
  std::size_t fe = frac;
  while (fe < t.size() && ascii_digit(t[fe])) ++fe;
  if (fe == frac) return false;
  m.end = fe;
  m.kind = NumberKind::Decimal;
  m.decimal_places = static_cast<int>(fe - frac);
  return true;
}

bool scan_plain_integer(std::string_view t, std::size_t i, NumberMatch& m) {
  std::size_t j = i;
  if (j < t.size() && (t[j] == '+' || t[j] == '-')) ++j;
  std::size_t e = scan_integer_digits(t, j);
  if (e == j) return false;
  m.end = e;
  m.kind = NumberKind::Integer;
  return true;
}

char32_t codepoint_before(std::string_view t, std::size_t pos) {
  if (pos == 0) return 0;
  std::size_t p = pos - 1;
  while (p > 0 && (static_cast<unsigned char>(t[p]) & 0xC0) == 0x80) --p;
  std::size_t tmp = p;
  return uni::decode(t, tmp);
}

char32_t codepoint_at(std::string_view t, std::size_t pos) {
  if (pos >= t.size()) return 0;
  std::size_t tmp = pos;
  return uni::decode(t, tmp);
}

// Identifier-glued matches ("GPT-4o", "v2") are not numbers.
bool glued_to_identifier(std::string_view t, std::size_t begin, std::size_t end) {
  char32_t prev = codepoint_before(t, begin);
  if (uni::is_letter(prev)) return true;
  if (prev == U'-' || prev == U'_') {
    // Find the codepoint before `prev` (both are single-byte here).
    char32_t prev2 = begin >= 2 ? codepoint_before(t, begin - 1) : 0;
    if (uni::is_letter(prev2)) return true;
  }
  char32_t next = codepoint_at(t, end);
  return uni::is_letter(next) || next == U'_';
}

}  // namespace

std::vector<NumberToken> extract_numbers(std::string_view text) {
  std::vector<NumberToken> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    bool sign_start = (c == '+' || c == '-') && i + 1 < text.size() &&
                      ascii_digit(text[i + 1]);
    if (sign_start) {
      // A sign is part of the number only after a non-word character.
      char32_t prev = codepoint_before(text, i);
      if (prev != 0 && uni::is_word(prev)) sign_start = false;
    }
    if (!ascii_digit(c) && !sign_start) {
      i += uni::sequence_length(text, i);
      continue;
    }
    NumberMatch best{};
    bool found = false;
    NumberMatch m{};
    if (scan_scientific(text, i, m) && (!found || m.end > best.end)) {
      best = m;
      found = true;
    }
    if (scan_decimal(text, i, m) && (!found || m.end > best.end)) {
      best = m;
      found = true;
    }
    if (scan_plain_integer(text, i, m) && (!found || m.end > best.end)) {
      best = m;
      found = true;
    }
    if (!found) {
      ++i;
      continue;
    }
    if (!glued_to_identifier(text, i, best.end)) {
      NumberToken tok;
      tok.surface = std::string(text.substr(i, best.end - i));
      tok.kind = best.kind;
      tok.decimal_places = best.kind == NumberKind::Decimal ? best.decimal_places : 0;
      tok.significant_digits =
          best.kind == NumberKind::Scientific ? best.significant_digits : 0;
      tok.begin = i;
      tok.end = best.end;
      tokens.push_back(std::move(tok));
    }
    i = best.end;  // skip the whole span either way
  }
  return tokens;
}

std::size_t SegmentedText::sentence_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences_per_paragraph) n += s.size();
  return n;
}

SegmentedText segment(std::string_view text) {
  SegmentedText out;
  out.raw = std::string(text);
  out.paragraphs = split_paragraphs(text);
  out.sentences_per_paragraph.reserve(out.paragraphs.size());
  for (const auto& p : out.paragraphs) {
    out.sentences_per_paragraph.push_back(split_sentences(p));
  }
  out.word_count = count_words(text);
  return out;
}

}  // namespace mmif::textseg
