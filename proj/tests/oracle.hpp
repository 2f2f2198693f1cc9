#pragma once

// Independent brute-force reference for the text primitives and the
// rule-based checks. Written as naive ASCII character scans and std::regex,
// deliberately sharing no code with the library implementation; the
// equivalence suites compare the two on generated corpora.
//
// Scope note: the oracle handles ASCII whitespace/punctuation only, which is
// exactly the alphabet the corpus generators emit.

#include <string>
#include <string_view>
#include <vector>

namespace oracle {

std::vector<std::string> paragraphs(const std::string& text);
std::vector<std::string> sentences(const std::string& paragraph);
long words(const std::string& text);

struct Number {
  std::string surface;
  char kind = 'i';  // 'i' integer, 'd' decimal, 's' scientific
  int decimal_places = 0;
  int significant_digits = 0;
  std::size_t begin = 0;
};

std::vector<Number> numbers(const std::string& text);

long total_sentences(const std::string& text);
std::vector<long> per_paragraph_sentences(const std::string& text);
std::vector<long> per_paragraph_words(const std::string& text);

bool contains_ci(const std::string& text, const std::string& needle);
bool whole_begins_with(const std::string& text, const std::string& needle);
bool whole_ends_with(const std::string& text, const std::string& needle);
bool each_sentence_begins_with(const std::string& text, const std::string& needle);
bool each_sentence_ends_with(const std::string& text, const std::string& needle);
long keyword_mentions(const std::string& text,
                      const std::vector<std::string>& keywords);

}  // namespace oracle
