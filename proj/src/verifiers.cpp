#include "mmif/verifiers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "mmif/errors.hpp"
#include "mmif/textseg.hpp"
#include "mmif/unicode.hpp"

namespace mmif::verifiers {

namespace {

using textseg::NumberKind;

std::string quote(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string range_str(long lower, long upper) {
  std::ostringstream os;
  os << "[" << lower << ", " << upper << "]";
  return os.str();
}

Verdict pass(std::string detail) { return Verdict{true, std::move(detail)}; }
Verdict fail(std::string detail) { return Verdict{false, std::move(detail)}; }

void require_range(long lower, long upper) {
  if (lower < 0 || lower > upper) {
    throw ParamError("invalid range " + range_str(lower, upper) +
                     ": need 0 <= lower <= upper");
  }
}

// ---- folded substring machinery -------------------------------------------

std::u32string fold_needle(std::string_view needle) {
  return uni::fold_text(needle).folded;
}

// First folded-codepoint index where `needle` occurs, or npos.
std::size_t find_folded(const std::u32string& haystack, const std::u32string& needle,
                        std::size_t from = 0) {
  if (needle.empty()) return std::u32string::npos;
  return haystack.find(needle, from);
}

bool starts_with_folded(const std::u32string& hay, const std::u32string& needle) {
  return hay.size() >= needle.size() &&
         hay.compare(0, needle.size(), needle) == 0;
}

bool ends_with_folded(const std::u32string& hay, const std::u32string& needle) {
  return hay.size() >= needle.size() &&
         hay.compare(hay.size() - needle.size(), needle.size(), needle) == 0;
}

bool is_sentence_trailer(char32_t cp) {
  switch (cp) {
    case U'.':
    case U'!':
    case U'?':
    case U'"':
    case U'\'':
    case U')':
    case U']':
    case U'}':
    case 0x2019:
    case 0x201D:
      return true;
    default:
      return false;
  }
}

// Ends-with that also accepts a match in front of trailing terminator
// punctuation / closing quotes.
bool ends_with_loose(const std::u32string& hay, const std::u32string& needle) {
  if (ends_with_folded(hay, needle)) return true;
  std::size_t end = hay.size();
  while (end > 0 && is_sentence_trailer(hay[end - 1])) --end;
  std::u32string trimmed = hay.substr(0, end);
  return ends_with_folded(trimmed, needle);
}

std::vector<std::string> all_sentences(const textseg::SegmentedText& seg) {
  std::vector<std::string> out;
  for (const auto& para : seg.sentences_per_paragraph) {
    out.insert(out.end(), para.begin(), para.end());
  }
  return out;
}

}  // namespace

// ---- typed operations ------------------------------------------------------

Verdict verify_count_in_range(std::string_view text, CountScope scope, long lower,
                              long upper) {
  require_range(lower, upper);
  textseg::SegmentedText seg = textseg::segment(text);

  auto check_each = [&](const char* unit,
                        const std::function<long(std::size_t)>& measure) -> Verdict {
    for (std::size_t i = 0; i < seg.paragraphs.size(); ++i) {
      long n = measure(i);
      if (n < lower || n > upper) {
        std::ostringstream os;
        os << "paragraph " << (i + 1) << " measured " << n << " " << unit
           << ", required " << range_str(lower, upper);
        return fail(os.str());
      }
    }
    std::ostringstream os;
    os << "all " << seg.paragraphs.size() << " paragraphs have " << unit
       << " in " << range_str(lower, upper);
    return pass(os.str());
  };

  switch (scope) {
    case CountScope::Paragraphs:
    case CountScope::Sentences:
    case CountScope::Words: {
      long measured = 0;
      const char* unit = "";
      if (scope == CountScope::Paragraphs) {
        measured = static_cast<long>(seg.paragraph_count());
        unit = "paragraphs";
      } else if (scope == CountScope::Sentences) {
        measured = static_cast<long>(seg.sentence_count());
        unit = "sentences";
      } else {
        measured = static_cast<long>(seg.word_count);
        unit = "words";
      }
      std::ostringstream os;
      os << "measured " << measured << " " << unit << ", required "
         << range_str(lower, upper);
      return (measured >= lower && measured <= upper) ? pass(os.str())
                                                      : fail(os.str());
    }
    case CountScope::PerParagraphSentences:
      return check_each("sentences", [&](std::size_t i) {
        return static_cast<long>(seg.sentences_per_paragraph[i].size());
      });
    case CountScope::PerParagraphWords:
      return check_each("words", [&](std::size_t i) {
        return static_cast<long>(textseg::count_words(seg.paragraphs[i]));
      });
  }
  throw ParamError("unhandled count scope");
}

Verdict verify_per_paragraph_range_list(std::string_view text,
                                        PerParagraphScope scope,
                                        std::span<const std::pair<long, long>> ranges) {
  if (ranges.empty()) throw ParamError("range list must be non-empty");
  for (const auto& [lo, hi] : ranges) require_range(lo, hi);

  textseg::SegmentedText seg = textseg::segment(text);
  if (seg.paragraph_count() != ranges.size()) {
    std::ostringstream os;
    os << "paragraph count " << seg.paragraph_count() << " != expected "
       << ranges.size();
    return fail(os.str());
  }
  const char* unit = scope == PerParagraphScope::Sentences ? "sentences" : "words";
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    long n = scope == PerParagraphScope::Sentences
                 ? static_cast<long>(seg.sentences_per_paragraph[i].size())
                 : static_cast<long>(textseg::count_words(seg.paragraphs[i]));
    if (n < ranges[i].first || n > ranges[i].second) {
      std::ostringstream os;
      os << "paragraph " << (i + 1) << " measured " << n << " " << unit
         << ", required " << range_str(ranges[i].first, ranges[i].second);
      return fail(os.str());
    }
  }
  std::ostringstream os;
  os << "all " << ranges.size() << " paragraphs match their " << unit << " ranges";
  return pass(os.str());
}

Verdict verify_sentence_progression(std::string_view text, long exceed_num,
                                    long upper_bound) {
  if (exceed_num < 1) throw ParamError("exceed_num must be >= 1");
  if (upper_bound < 1) throw ParamError("upper_bound must be >= 1");

  textseg::SegmentedText seg = textseg::segment(text);
  long prev = -1;
  for (std::size_t i = 0; i < seg.sentences_per_paragraph.size(); ++i) {
    long n = static_cast<long>(seg.sentences_per_paragraph[i].size());
    if (n > upper_bound) {
      std::ostringstream os;
      os << "paragraph " << (i + 1) << " measured " << n
         << " sentences, exceeding upper bound " << upper_bound;
      return fail(os.str());
    }
    if (prev >= 0 && n != prev + exceed_num) {
      std::ostringstream os;
      os << "paragraph " << (i + 1) << " measured " << n
         << " sentences, expected " << (prev + exceed_num) << " (previous + "
         << exceed_num << ")";
      return fail(os.str());
    }
    prev = n;
  }
  std::ostringstream os;
  os << "sentence counts step by " << exceed_num << " within bound " << upper_bound;
  return pass(os.str());
}

Verdict verify_substring_position(std::string_view text,
                                  std::span<const std::string> substrings,
                                  SubstringPosition position) {
  if (substrings.empty()) throw ParamError("substring list must be non-empty");
  for (const auto& s : substrings) {
    if (s.empty()) throw ParamError("substring must be non-empty");
  }
  bool many = position == SubstringPosition::NotContainedMany;
  if (!many && substrings.size() != 1) {
    throw ParamError("exactly one substring expected for this position check");
  }

  if (position == SubstringPosition::NotContainedOne ||
      position == SubstringPosition::NotContainedMany) {
    uni::FoldedText hay = uni::fold_text(text);
    for (const auto& s : substrings) {
      std::size_t at = find_folded(hay.folded, fold_needle(s));
      if (at != std::u32string::npos) {
        std::ostringstream os;
        os << "found " << quote(s) << " at byte offset " << hay.byte_offset[at];
        return fail(os.str());
      }
    }
    return pass("no forbidden substring present");
  }

  const std::string& needle_raw = substrings[0];
  std::u32string needle = fold_needle(needle_raw);

  switch (position) {
    case SubstringPosition::WholeBegin: {
      std::u32string hay = uni::fold_text(uni::trim(text)).folded;
      return starts_with_folded(hay, needle)
                 ? pass("response begins with " + quote(needle_raw))
                 : fail("response does not begin with " + quote(needle_raw));
    }
    case SubstringPosition::WholeEnd: {
      std::u32string hay = uni::fold_text(uni::trim(text)).folded;
      return ends_with_loose(hay, needle)
                 ? pass("response ends with " + quote(needle_raw))
                 : fail("response does not end with " + quote(needle_raw));
    }
    case SubstringPosition::EachSentenceBegin:
    case SubstringPosition::EachSentenceEnd: {
      bool at_begin = position == SubstringPosition::EachSentenceBegin;
      textseg::SegmentedText seg = textseg::segment(text);
      std::vector<std::string> sentences = all_sentences(seg);
      for (std::size_t i = 0; i < sentences.size(); ++i) {
        std::u32string hay = uni::fold_text(sentences[i]).folded;
        bool ok = at_begin ? starts_with_folded(hay, needle)
                           : ends_with_loose(hay, needle);
        if (!ok) {
          std::ostringstream os;
          os << "sentence " << (i + 1) << " does not "
             << (at_begin ? "begin" : "end") << " with " << quote(needle_raw)
             << ": " << quote(sentences[i]);
          return fail(os.str());
        }
      }
      std::ostringstream os;
      os << "all " << sentences.size() << " sentences "
         << (at_begin ? "begin" : "end") << " with " << quote(needle_raw);
      return pass(os.str());
    }
    default:
      throw ParamError("unhandled substring position");
  }
}

Verdict verify_keyword_mentions(std::string_view text,
                                std::span<const std::string> keywords,
                                long lower_times, long upper_times) {
  if (keywords.empty()) throw ParamError("keyword list must be non-empty");
  for (const auto& k : keywords) {
    if (k.empty()) throw ParamError("keyword must be non-empty");
  }
  require_range(lower_times, upper_times);

  uni::FoldedText hay = uni::fold_text(text);
  long total = 0;
  for (const auto& k : keywords) {
    std::u32string needle = fold_needle(k);
    std::size_t from = 0;
    while (true) {
      std::size_t at = find_folded(hay.folded, needle, from);
      if (at == std::u32string::npos) break;
      std::size_t end = at + needle.size();
      bool left_ok = at == 0 || !uni::is_word(hay.folded[at - 1]) ||
                     !uni::is_word(needle.front());
      bool right_ok = end == hay.folded.size() || !uni::is_word(hay.folded[end]) ||
                      !uni::is_word(needle.back());
      if (left_ok && right_ok) {
        ++total;
        from = end;
      } else {
        from = at + 1;
      }
    }
  }
  std::ostringstream os;
  os << "measured " << total << " total mentions, required "
     << range_str(lower_times, upper_times);
  return (total >= lower_times && total <= upper_times) ? pass(os.str())
                                                        : fail(os.str());
}

Verdict verify_number_precision(std::string_view text, long precision) {
  if (precision < 0) throw ParamError("precision must be >= 0");
  for (const auto& tok : textseg::extract_numbers(text)) {
    if (tok.kind != NumberKind::Decimal) continue;
    if (tok.decimal_places != precision) {
      std::ostringstream os;
      os << "number " << quote(tok.surface) << " has " << tok.decimal_places
         << " decimal places, required " << precision;
      return fail(os.str());
    }
  }
  std::ostringstream os;
  os << "all decimal numbers have " << precision << " decimal places";
  return pass(os.str());
}

Verdict verify_no_numbers(std::string_view text) {
  std::vector<textseg::NumberToken> tokens = textseg::extract_numbers(text);
  if (!tokens.empty()) {
    std::ostringstream os;
    os << "found number " << quote(tokens[0].surface) << " at byte offset "
       << tokens[0].begin;
    return fail(os.str());
  }
  return pass("no numbers present");
}

Verdict verify_scientific_sig_digits(std::string_view text, long significant_digits) {
  if (significant_digits < 1) throw ParamError("significant_digits must be >= 1");
  long scientific_count = 0;
  for (const auto& tok : textseg::extract_numbers(text)) {
    if (tok.kind != NumberKind::Scientific) continue;
    ++scientific_count;
    if (tok.significant_digits != significant_digits) {
      std::ostringstream os;
      os << "number " << quote(tok.surface) << " has " << tok.significant_digits
         << " significant digits, required " << significant_digits;
      return fail(os.str());
    }
  }
  if (scientific_count == 0) {
    return fail("no scientific-notation number found, required at least one");
  }
  std::ostringstream os;
  os << "all " << scientific_count << " scientific numbers have "
     << significant_digits << " significant digits";
  return pass(os.str());
}

// ---- registry --------------------------------------------------------------

namespace {

long as_int(const nlohmann::json& v, const char* what) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw ParamError(std::string("expected integer for ") + what);
  }
  return v.get<long>();
}

std::string as_string(const nlohmann::json& v, const char* what) {
  if (!v.is_string()) {
    throw ParamError(std::string("expected string for ") + what);
  }
  std::string s = v.get<std::string>();
  if (s.empty()) throw ParamError(std::string(what) + " must be non-empty");
  return s;
}

std::vector<std::string> as_string_list(const nlohmann::json& v, const char* what) {
  if (!v.is_array() || v.empty()) {
    throw ParamError(std::string("expected non-empty string list for ") + what);
  }
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(as_string(e, what));
  return out;
}

std::vector<std::pair<long, long>> as_range_list(const nlohmann::json& v,
                                                 const char* what) {
  if (!v.is_array() || v.empty()) {
    throw ParamError(std::string("expected non-empty range list for ") + what);
  }
  std::vector<std::pair<long, long>> out;
  for (const auto& e : v) {
    if (!e.is_array() || e.size() != 2) {
      throw ParamError(std::string(what) + " entries must be [lower, upper] pairs");
    }
    out.emplace_back(as_int(e[0], "lower bound"), as_int(e[1], "upper bound"));
  }
  return out;
}

void require_arity(const VerifierCall& call, std::size_t arity) {
  if (!call.params.is_array()) {
    throw ParamError("params must be a JSON array for " + call.function_name);
  }
  if (call.params.size() != arity) {
    std::ostringstream os;
    os << call.function_name << " takes " << arity << " parameters, got "
       << call.params.size();
    throw ParamError(os.str());
  }
}

using Handler = std::function<Verdict(const nlohmann::json&, std::string_view)>;

struct Entry {
  VerifierInfo info;
  Handler handler;
  std::function<void(const VerifierCall&)> check;
};

Entry count_entry(std::string name, CountScope scope, std::string summary) {
  Entry e;
  e.info = {name, {ParamKind::Int, ParamKind::Int}, std::move(summary)};
  e.handler = [scope](const nlohmann::json& p, std::string_view text) {
    return verify_count_in_range(text, scope, as_int(p[0], "lower bound"),
                                 as_int(p[1], "upper bound"));
  };
  e.check = [name](const VerifierCall& call) {
    require_arity(call, 2);
    require_range(as_int(call.params[0], "lower bound"),
                  as_int(call.params[1], "upper bound"));
  };
  return e;
}

Entry range_list_entry(std::string name, PerParagraphScope scope,
                       std::string summary) {
  Entry e;
  e.info = {name, {ParamKind::RangeList}, std::move(summary)};
  e.handler = [scope](const nlohmann::json& p, std::string_view text) {
    auto ranges = as_range_list(p[0], "ranges");
    return verify_per_paragraph_range_list(text, scope, ranges);
  };
  e.check = [](const VerifierCall& call) {
    require_arity(call, 1);
    for (const auto& [lo, hi] : as_range_list(call.params[0], "ranges")) {
      require_range(lo, hi);
    }
  };
  return e;
}

Entry substring_entry(std::string name, SubstringPosition position,
                      std::string summary) {
  Entry e;
  e.info = {name, {ParamKind::String}, std::move(summary)};
  e.handler = [position](const nlohmann::json& p, std::string_view text) {
    std::vector<std::string> one{as_string(p[0], "substring")};
    return verify_substring_position(text, one, position);
  };
  e.check = [](const VerifierCall& call) {
    require_arity(call, 1);
    as_string(call.params[0], "substring");
  };
  return e;
}

std::vector<Entry> build_entries() {
  std::vector<Entry> entries;

  entries.push_back(count_entry("check_whether_response_paragraph_number_in_range",
                                CountScope::Paragraphs,
                                "paragraph count of the response lies in [lower, upper]"));
  entries.push_back(count_entry("check_whether_response_sentence_number_in_range",
                                CountScope::Sentences,
                                "total sentence count lies in [lower, upper]"));
  entries.push_back(count_entry(
      "check_whether_each_paragraph_sentence_number_in_range",
      CountScope::PerParagraphSentences,
      "every paragraph's sentence count lies in [lower, upper]"));
  entries.push_back(range_list_entry(
      "check_whether_each_paragraph_sentence_number_in_range_list",
      PerParagraphScope::Sentences,
      "paragraph i's sentence count lies in ranges[i]; counts must line up"));

  {
    Entry e;
    e.info = {"check_whether_each_paragraph_sentence_number_exceeds",
              {ParamKind::Int, ParamKind::Int},
              "each paragraph has exceed_num more sentences than the previous, "
              "none above upper_bound"};
    e.handler = [](const nlohmann::json& p, std::string_view text) {
      return verify_sentence_progression(text, as_int(p[0], "exceed_num"),
                                         as_int(p[1], "upper_bound"));
    };
    e.check = [](const VerifierCall& call) {
      require_arity(call, 2);
      if (as_int(call.params[0], "exceed_num") < 1) {
        throw ParamError("exceed_num must be >= 1");
      }
      if (as_int(call.params[1], "upper_bound") < 1) {
        throw ParamError("upper_bound must be >= 1");
      }
    };
    entries.push_back(std::move(e));
  }

  entries.push_back(count_entry("check_whether_response_word_count_in_range",
                                CountScope::Words,
                                "total word count lies in [lower, upper]"));
  entries.push_back(count_entry("check_whether_each_paragraph_word_count_in_range",
                                CountScope::PerParagraphWords,
                                "every paragraph's word count lies in [lower, upper]"));
  entries.push_back(range_list_entry(
      "check_whether_each_paragraph_word_count_in_range_list",
      PerParagraphScope::Words,
      "paragraph i's word count lies in ranges[i]; counts must line up"));

  entries.push_back(substring_entry(
      "check_whether_whole_response_not_contain_certain_substring",
      SubstringPosition::NotContainedOne,
      "the substring occurs nowhere in the response (case-insensitive)"));

  {
    Entry e;
    e.info = {"check_whether_whole_response_not_contain_certain_substrings",
              {ParamKind::StringList},
              "none of the substrings occur in the response (case-insensitive)"};
    e.handler = [](const nlohmann::json& p, std::string_view text) {
      auto subs = as_string_list(p[0], "substrings");
      return verify_substring_position(text, subs,
                                       SubstringPosition::NotContainedMany);
    };
    e.check = [](const VerifierCall& call) {
      require_arity(call, 1);
      as_string_list(call.params[0], "substrings");
    };
    entries.push_back(std::move(e));
  }

  entries.push_back(substring_entry(
      "check_whether_each_sentence_begin_with_certain_substring",
      SubstringPosition::EachSentenceBegin, "every sentence begins with the substring"));
  entries.push_back(substring_entry(
      "check_whether_each_sentence_end_with_certain_substring",
      SubstringPosition::EachSentenceEnd, "every sentence ends with the substring"));
  entries.push_back(substring_entry(
      "check_whether_whole_response_begin_with_certain_substring",
      SubstringPosition::WholeBegin, "the response begins with the substring"));
  entries.push_back(substring_entry(
      "check_whether_whole_response_end_with_certain_substring",
      SubstringPosition::WholeEnd, "the response ends with the substring"));

  {
    Entry e;
    // Published name; the corrected spelling aliases to it.
    e.info = {"check_whether_keywords_metioned_in_range",
              {ParamKind::StringList, ParamKind::Int, ParamKind::Int},
              "summed word-boundary mentions of the keywords lie in "
              "[lower_times, upper_times]"};
    e.handler = [](const nlohmann::json& p, std::string_view text) {
      auto keywords = as_string_list(p[0], "keywords");
      return verify_keyword_mentions(text, keywords, as_int(p[1], "lower_times"),
                                     as_int(p[2], "upper_times"));
    };
    e.check = [](const VerifierCall& call) {
      require_arity(call, 3);
      as_string_list(call.params[0], "keywords");
      require_range(as_int(call.params[1], "lower_times"),
                    as_int(call.params[2], "upper_times"));
    };
    entries.push_back(std::move(e));
  }

  {
    Entry e;
    e.info = {"check_number_precision_in_response",
              {ParamKind::Int},
              "every decimal number has exactly `precision` decimal places"};
    e.handler = [](const nlohmann::json& p, std::string_view text) {
      return verify_number_precision(text, as_int(p[0], "precision"));
    };
    e.check = [](const VerifierCall& call) {
      require_arity(call, 1);
      if (as_int(call.params[0], "precision") < 0) {
        throw ParamError("precision must be >= 0");
      }
    };
    entries.push_back(std::move(e));
  }

  {
    Entry e;
    e.info = {"check_whether_has_no_number_in_response",
              {},
              "the response contains no numeric literal"};
    e.handler = [](const nlohmann::json&, std::string_view text) {
      return verify_no_numbers(text);
    };
    e.check = [](const VerifierCall& call) { require_arity(call, 0); };
    entries.push_back(std::move(e));
  }

  {
    Entry e;
    e.info = {"check_scientific_notation_precision_in_response",
              {ParamKind::Int},
              "every scientific-notation number has exactly `significant_digits` "
              "significant digits (and at least one exists)"};
    e.handler = [](const nlohmann::json& p, std::string_view text) {
      return verify_scientific_sig_digits(text, as_int(p[0], "significant_digits"));
    };
    e.check = [](const VerifierCall& call) {
      require_arity(call, 1);
      if (as_int(call.params[0], "significant_digits") < 1) {
        throw ParamError("significant_digits must be >= 1");
      }
    };
    entries.push_back(std::move(e));
  }

  return entries;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = build_entries();
  return all;
}

std::string resolve_alias(std::string_view name) {
  if (name == "check_whether_keywords_mentioned_in_range") {
    return "check_whether_keywords_metioned_in_range";
  }
  return std::string(name);
}

const Entry* find_entry(std::string_view name) {
  std::string key = resolve_alias(name);
  for (const auto& e : entries()) {
    if (e.info.name == key) return &e;
  }
  return nullptr;
}

}  // namespace

Registry::Registry() {
  infos_.reserve(entries().size());
  for (const auto& e : entries()) infos_.push_back(e.info);
}

const Registry& Registry::instance() {
  static const Registry registry;
  return registry;
}

const VerifierInfo* Registry::find(std::string_view name) const {
  const Entry* e = find_entry(name);
  return e == nullptr ? nullptr : &e->info;
}

void Registry::validate(const VerifierCall& call) const {
  const Entry* e = find_entry(call.function_name);
  if (e == nullptr) {
    throw UnknownFunctionError("unknown verification function: " +
                               call.function_name);
  }
  e->check(call);
}

bool Registry::is_valid(const VerifierCall& call) const {
  try {
    validate(call);
    return true;
  } catch (const ParamError&) {
    return false;
  }
}

Verdict Registry::run(const VerifierCall& call, std::string_view text) const {
  validate(call);
  return find_entry(call.function_name)->handler(call.params, text);
}

Verdict run_verifier(const VerifierCall& call, std::string_view text) {
  return Registry::instance().run(call, text);
}

void to_json(nlohmann::json& j, const VerifierCall& c) {
  j = nlohmann::json{{"name", c.function_name}, {"params", c.params}};
}

void from_json(const nlohmann::json& j, VerifierCall& c) {
  c.function_name = j.at("name").get<std::string>();
  c.params = j.at("params");
  if (!c.params.is_array()) {
    throw ParamError("verifier params must be a JSON array");
  }
}

}  // namespace mmif::verifiers
