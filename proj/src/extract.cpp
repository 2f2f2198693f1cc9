#include "mmif/extract.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <vector>

#include "mmif/errors.hpp"
#include "mmif/prompts.hpp"
#include "mmif/verifiers.hpp"

namespace mmif::judge {

namespace {

using nlohmann::json;

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool is_ascii_letter(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

// ---- quoted strings ---------------------------------------------------------

// Pulls quoted spans out of the original text, in order. Handles straight
// and curly double quotes, backticks, and single quotes whose openers and
// closers sit on token boundaries (so apostrophes inside words survive).
std::vector<std::string> quoted_strings(std::string_view text) {
  struct Pair {
    std::string open, close;
    bool needs_boundary;
  };
  static const std::vector<Pair> pairs = {
      {"\"", "\"", false},         {"\xE2\x80\x9C", "\xE2\x80\x9D", false},
      {"`", "`", false},           {"\xE2\x80\x98", "\xE2\x80\x99", false},
      {"'", "'", true},
  };
  std::vector<std::pair<std::size_t, std::string>> found;  // position, content
  std::vector<bool> consumed(text.size(), false);
  for (const auto& p : pairs) {
    std::size_t at = 0;
    while (at < text.size()) {
      std::size_t open = text.find(p.open, at);
      if (open == std::string_view::npos) break;
      if (consumed[open] ||
          (p.needs_boundary && open > 0 && is_ascii_letter(text[open - 1]))) {
        at = open + 1;
        continue;
      }
      std::size_t search = open + p.open.size();
      std::size_t close = std::string_view::npos;
      while (search < text.size()) {
        close = text.find(p.close, search);
        if (close == std::string_view::npos) break;
        if (consumed[close] ||
            (p.needs_boundary && close + p.close.size() < text.size() &&
             is_ascii_letter(text[close + p.close.size()]))) {
          search = close + 1;
          continue;
        }
        break;
      }
      if (close == std::string_view::npos) break;
      std::string content(
          text.substr(open + p.open.size(), close - open - p.open.size()));
      if (!content.empty()) {
        for (std::size_t k = open; k < close + p.close.size(); ++k) {
          consumed[k] = true;
        }
        found.emplace_back(open, std::move(content));
      }
      at = close + p.close.size();
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<std::string> out;
  out.reserve(found.size());
  for (auto& [pos, content] : found) out.push_back(std::move(content));
  return out;
}

// ---- numbers in words -------------------------------------------------------

const std::map<std::string, long>& number_words() {
  static const std::map<std::string, long> words = {
      {"a", 1},        {"an", 1},        {"single", 1},   {"one", 1},
      {"once", 1},     {"two", 2},       {"twice", 2},    {"three", 3},
      {"thrice", 3},   {"four", 4},      {"five", 5},     {"six", 6},
      {"seven", 7},    {"eight", 8},     {"nine", 9},     {"ten", 10},
      {"eleven", 11},  {"twelve", 12},   {"thirteen", 13},{"fourteen", 14},
      {"fifteen", 15}, {"sixteen", 16},  {"seventeen", 17},
      {"eighteen", 18},{"nineteen", 19}, {"twenty", 20}};
  return words;
}

constexpr const char* kNumPattern =
    "(\\d{1,3}(?:,\\d{3})+|\\d+|a|an|single|once|twice|thrice|one|two|three|"
    "four|five|six|seven|eight|nine|ten|eleven|twelve|thirteen|fourteen|"
    "fifteen|sixteen|seventeen|eighteen|nineteen|twenty)";

long parse_num(std::string token) {
  token.erase(std::remove(token.begin(), token.end(), ','), token.end());
  if (!token.empty() && std::isdigit(static_cast<unsigned char>(token[0]))) {
    return std::stol(token);
  }
  auto it = number_words().find(token);
  if (it == number_words().end()) throw ParamError("not a number: " + token);
  return it->second;
}

std::regex rx(const std::string& pattern) {
  return std::regex(pattern, std::regex::ECMAScript | std::regex::icase);
}

std::string num_rx(const std::string& before, const std::string& after = "\\b") {
  return before + kNumPattern + after;
}

// A [lower, upper] range parsed from quantifier phrasing. The encodings
// mirror the published parameter examples: "at least N" -> [N, 10000],
// "at most N" -> [1, N], "less than N" -> [0, N-1].
std::optional<std::pair<long, long>> parse_range(const std::string& lc) {
  std::smatch m;
  if (std::regex_search(lc, m, rx(num_rx("between\\s+", "\\s+and\\s+") +
                                  kNumPattern + "\\b"))) {
    return std::make_pair(parse_num(m[1]), parse_num(m[2]));
  }
  if (std::regex_search(lc, m, rx(num_rx("at\\s+least\\s+")))) {
    return std::make_pair(parse_num(m[1]), 10000L);
  }
  if (std::regex_search(
          lc, m,
          rx(num_rx("(?:at\\s+most|no\\s+more\\s+than|not\\s+more\\s+than|up\\s+"
                    "to|a\\s+maximum\\s+of)\\s+")))) {
    return std::make_pair(1L, parse_num(m[1]));
  }
  if (std::regex_search(
          lc, m, rx(num_rx("(?:less\\s+than|fewer\\s+than|under)\\s+")))) {
    return std::make_pair(0L, parse_num(m[1]) - 1);
  }
  if (std::regex_search(lc, m, rx(num_rx("(?:more\\s+than|over)\\s+")))) {
    return std::make_pair(parse_num(m[1]) + 1, 10000L);
  }
  if (std::regex_search(lc, m, rx(num_rx("exactly\\s+")))) {
    long n = parse_num(m[1]);
    return std::make_pair(n, n);
  }
  if (std::regex_search(lc, m, rx(num_rx("\\bbe\\s+")))) {
    long n = parse_num(m[1]);
    return std::make_pair(n, n);
  }
  return std::nullopt;
}

// ---- rule helpers -----------------------------------------------------------

struct Match {
  std::string function;
  json params;
};

json range_json(std::pair<long, long> r) { return json::array({r.first, r.second}); }

std::optional<Match> rule_progression(const std::string& lc) {
  std::smatch m;
  if (!std::regex_search(lc, m,
                         rx(num_rx("", "\\s+sentences?\\s+more\\s+than\\s+the\\s+"
                                       "previous")))) {
    return std::nullopt;
  }
  long exceed = parse_num(m[1]);
  long upper = 10000;
  std::smatch u;
  if (std::regex_search(lc, u, rx(num_rx("exceeds?\\s+", "\\s+sentences?")))) {
    upper = parse_num(u[1]);
  }
  return Match{"check_whether_each_paragraph_sentence_number_exceeds",
               json::array({exceed, upper})};
}

const std::vector<std::pair<std::string, long>>& ordinal_words() {
  static const std::vector<std::pair<std::string, long>> words = {
      {"first", 1},   {"second", 2}, {"third", 3}, {"fourth", 4},
      {"fifth", 5},   {"sixth", 6},  {"seventh", 7}, {"eighth", 8},
      {"ninth", 9},   {"tenth", 10}, {"eleventh", 11}, {"twelfth", 12},
      {"1st", 1},     {"2nd", 2},    {"3rd", 3},   {"4th", 4},
      {"5th", 5},     {"6th", 6},    {"7th", 7},   {"8th", 8}};
  return words;
}

std::optional<Match> rule_ordinal_list(const std::string& lc) {
  // "in the first paragraph be exactly 3, and in the second ... at most 2"
  static const std::regex ordinal_rx = rx(
      "the\\s+(first|second|third|fourth|fifth|sixth|seventh|eighth|ninth|"
      "tenth|eleventh|twelfth|1st|2nd|3rd|[4-8]th)(\\s+paragraph)?\\b");
  struct Hit {
    long ordinal;
    std::size_t begin, end;  // offsets of the ordinal mention
  };
  std::vector<Hit> hits;
  for (auto it = std::sregex_iterator(lc.begin(), lc.end(), ordinal_rx);
       it != std::sregex_iterator(); ++it) {
    std::string word = lower_ascii((*it)[1].str());
    for (const auto& [w, value] : ordinal_words()) {
      if (w == word) {
        hits.push_back({value, static_cast<std::size_t>(it->position()),
                        static_cast<std::size_t>(it->position() + it->length())});
        break;
      }
    }
  }
  if (hits.empty()) return std::nullopt;

  bool sentences = lc.find("sentence") != std::string::npos;
  bool words_scope = lc.find("word") != std::string::npos;
  if (sentences == words_scope) return std::nullopt;  // need exactly one scope

  // Each ordinal segment runs to the next ordinal mention; ordinals must be
  // 1..K, each once.
  std::vector<std::pair<long, long>> ranges(hits.size(), {-1, -1});
  for (std::size_t i = 0; i < hits.size(); ++i) {
    long ord = hits[i].ordinal;
    if (ord < 1 || static_cast<std::size_t>(ord) > hits.size()) {
      return std::nullopt;
    }
    std::size_t seg_begin = hits[i].end;
    std::size_t seg_end = i + 1 < hits.size() ? hits[i + 1].begin : lc.size();
    auto range = parse_range(lc.substr(seg_begin, seg_end - seg_begin));
    if (!range) return std::nullopt;
    auto& slot = ranges[static_cast<std::size_t>(ord - 1)];
    if (slot.first != -1) return std::nullopt;  // duplicate ordinal
    slot = *range;
  }
  json list = json::array();
  for (const auto& r : ranges) list.push_back(range_json(r));
  std::string fn = sentences
                       ? "check_whether_each_paragraph_sentence_number_in_range_list"
                       : "check_whether_each_paragraph_word_count_in_range_list";
  return Match{fn, json::array({list})};
}

std::optional<Match> rule_decimal_places(const std::string& lc) {
  std::smatch m;
  if (!std::regex_search(lc, m, rx(num_rx("", "\\s+decimal\\s+places?")))) {
    return std::nullopt;
  }
  return Match{"check_number_precision_in_response",
               json::array({parse_num(m[1])})};
}

std::optional<Match> rule_significant_digits(const std::string& lc) {
  std::smatch m;
  if (!std::regex_search(
          lc, m, rx(num_rx("", "\\s+significant\\s+(?:digits?|figures?)")))) {
    return std::nullopt;
  }
  return Match{"check_scientific_notation_precision_in_response",
               json::array({parse_num(m[1])})};
}

std::optional<Match> rule_no_numbers(const std::string& lc) {
  static const std::regex negation =
      rx("\\b(?:no|not|never|avoid|without)\\b|n't\\b");
  if (!std::regex_search(lc, negation)) return std::nullopt;
  // "number of ..." is counting language, not a ban on numerals.
  static const std::regex bare_number = rx("\\bnumbers?\\b(?!\\s+of)");
  if (!std::regex_search(lc, bare_number)) return std::nullopt;
  if (lc.find("decimal") != std::string::npos ||
      lc.find("significant") != std::string::npos) {
    return std::nullopt;
  }
  return Match{"check_whether_has_no_number_in_response", json::array()};
}

std::optional<Match> rule_counts(const std::string& lc) {
  static const std::regex each_paragraph =
      rx("\\b(?:each|every|per)\\s+paragraph\\b");
  bool per_paragraph = std::regex_search(lc, each_paragraph);

  std::string noun;
  std::optional<std::pair<long, long>> range;

  std::smatch m;
  if (std::regex_search(
          lc, m, rx("number\\s+of\\s+(?:text\\s+)?(paragraph|sentence|word)s?"))) {
    noun = m[1];
    range = parse_range(lc);
  } else if (std::regex_search(
                 lc, m,
                 rx(num_rx("between\\s+", "\\s+and\\s+") + kNumPattern +
                    "\\s+(?:text\\s+)?(paragraph|sentence|word)s?\\b"))) {
    noun = m[3];
    range = std::make_pair(parse_num(m[1]), parse_num(m[2]));
  } else if (std::regex_search(
                 lc, m,
                 rx("(at\\s+least|at\\s+most|no\\s+more\\s+than|not\\s+more\\s+"
                    "than|up\\s+to|less\\s+than|fewer\\s+than|more\\s+than|"
                    "exactly|)\\s*" +
                    std::string(kNumPattern) +
                    "\\s+(?:text\\s+)?(paragraph|sentence|word)s?\\b"))) {
    // Collapse whitespace so the modifier compares cleanly.
    std::string mod;
    for (char c : lower_ascii(m[1].str())) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!mod.empty() && mod.back() != ' ') mod += ' ';
      } else {
        mod += c;
      }
    }
    long n = parse_num(m[2]);
    noun = m[3];
    if (mod == "at least") {
      range = std::make_pair(n, 10000L);
    } else if (mod == "at most" || mod == "no more than" ||
               mod == "not more than" || mod == "up to") {
      range = std::make_pair(1L, n);
    } else if (mod == "less than" || mod == "fewer than") {
      range = std::make_pair(0L, n - 1);
    } else if (mod == "more than") {
      range = std::make_pair(n + 1, 10000L);
    } else {
      range = std::make_pair(n, n);  // bare or "exactly"
    }
  }
  if (noun.empty() || !range) return std::nullopt;

  std::string fn;
  if (per_paragraph) {
    if (noun == "sentence") {
      fn = "check_whether_each_paragraph_sentence_number_in_range";
    } else if (noun == "word") {
      fn = "check_whether_each_paragraph_word_count_in_range";
    } else {
      return std::nullopt;  // "each paragraph ... N paragraphs" is nonsense
    }
  } else {
    if (noun == "paragraph") {
      fn = "check_whether_response_paragraph_number_in_range";
    } else if (noun == "sentence") {
      fn = "check_whether_response_sentence_number_in_range";
    } else {
      fn = "check_whether_response_word_count_in_range";
    }
  }
  return Match{fn, range_json(*range)};
}

std::optional<std::string> named_punctuation(const std::string& lc) {
  static const std::vector<std::pair<std::string, std::string>> names = {
      {"exclamation point", "!"}, {"exclamation mark", "!"},
      {"question mark", "?"},     {"full stop", "."},
      {"period", "."},            {"semicolon", ";"},
      {"colon", ":"},             {"comma", ","},
      {"asterisk", "*"},          {"ellipsis", "..."},
      {"hyphen", "-"},            {"dash", "-"}};
  for (const auto& [name, symbol] : names) {
    if (lc.find(name) != std::string::npos) return symbol;
  }
  return std::nullopt;
}

std::optional<Match> rule_position(const std::string& lc,
                                   const std::vector<std::string>& quotes) {
  // "start with", "start your answer with", ...
  static const std::regex begin_rx =
      rx("\\b(?:start|begin|open)s?(?:\\s+\\w+){0,3}\\s+with\\b");
  static const std::regex end_rx =
      rx("\\b(?:end|finish|conclude|close)s?(?:\\s+\\w+){0,3}\\s+with\\b");
  bool begins = std::regex_search(lc, begin_rx);
  bool ends = std::regex_search(lc, end_rx);
  if (begins == ends) return std::nullopt;  // need exactly one direction

  std::string target;
  if (!quotes.empty()) {
    target = quotes.front();
  } else if (auto punct = named_punctuation(lc)) {
    target = *punct;
  } else {
    return std::nullopt;
  }

  static const std::regex each_sentence =
      rx("\\b(?:each|every|all)\\s+sentences?\\b");
  bool per_sentence = std::regex_search(lc, each_sentence);

  std::string fn;
  if (per_sentence) {
    fn = begins ? "check_whether_each_sentence_begin_with_certain_substring"
                : "check_whether_each_sentence_end_with_certain_substring";
  } else {
    fn = begins ? "check_whether_whole_response_begin_with_certain_substring"
                : "check_whether_whole_response_end_with_certain_substring";
  }
  return Match{fn, json::array({target})};
}

std::optional<Match> rule_not_contain(const std::string& lc,
                                      const std::vector<std::string>& quotes) {
  if (quotes.empty()) return std::nullopt;
  static const std::regex negation =
      rx("\\b(?:not|never|avoid|without|exclude)\\b|n't\\b");
  static const std::regex verb =
      rx("\\b(?:contain|mention|include|use|say|write|word)");
  if (!std::regex_search(lc, negation) || !std::regex_search(lc, verb)) {
    return std::nullopt;
  }
  if (quotes.size() == 1) {
    return Match{"check_whether_whole_response_not_contain_certain_substring",
                 json::array({quotes[0]})};
  }
  json list = json::array();
  for (const auto& q : quotes) list.push_back(q);
  return Match{"check_whether_whole_response_not_contain_certain_substrings",
               json::array({list})};
}

std::optional<Match> rule_mentions(const std::string& lc,
                                   const std::vector<std::string>& quotes) {
  if (quotes.empty()) return std::nullopt;
  static const std::regex verb =
      rx("\\b(?:mention|include|contain|use|say|repeat)");
  if (!std::regex_search(lc, verb)) return std::nullopt;

  long lower = 1;
  long upper = 10000;
  std::smatch m;
  if (std::regex_search(lc, m,
                        rx(num_rx("at\\s+least\\s+", "(?:\\s+times?)?\\b")))) {
    lower = parse_num(m[1]);
    upper = 10000;
  } else if (std::regex_search(
                 lc, m,
                 rx(num_rx("(?:at\\s+most|no\\s+more\\s+than)\\s+",
                           "(?:\\s+times?)?\\b")))) {
    lower = 0;
    upper = parse_num(m[1]);
  } else if (std::regex_search(lc, m,
                               rx(num_rx("more\\s+than\\s+", "\\s+times?\\b")))) {
    lower = parse_num(m[1]) + 1;
    upper = 10000;
  } else if (std::regex_search(lc, m,
                               rx(num_rx("exactly\\s+", "(?:\\s+times?)?\\b")))) {
    lower = upper = parse_num(m[1]);
  } else if (std::regex_search(lc, m, rx(num_rx("", "\\s+times?\\b")))) {
    lower = upper = parse_num(m[1]);
  } else if (std::regex_search(lc, m, rx(std::string("\\b(once|twice|thrice)\\b")))) {
    lower = upper = parse_num(lower_ascii(m[1].str()));
  }

  json keywords = json::array();
  for (const auto& q : quotes) keywords.push_back(q);
  return Match{"check_whether_keywords_metioned_in_range",
               json::array({keywords, lower, upper})};
}

}  // namespace

ExtractionResult extract_by_patterns(std::string_view description) {
  std::string lc = lower_ascii(description);
  std::vector<std::string> quotes = quoted_strings(description);

  using Rule = std::function<std::optional<Match>()>;
  const std::vector<Rule> rules = {
      [&] { return rule_progression(lc); },
      [&] { return rule_ordinal_list(lc); },
      [&] { return rule_decimal_places(lc); },
      [&] { return rule_significant_digits(lc); },
      [&] { return rule_no_numbers(lc); },
      [&] { return rule_counts(lc); },
      [&] { return rule_position(lc, quotes); },
      [&] { return rule_not_contain(lc, quotes); },
      [&] { return rule_mentions(lc, quotes); },
  };

  for (const auto& rule : rules) {
    std::optional<Match> match;
    try {
      match = rule();
    } catch (const ParamError&) {
      continue;  // a rule fired on phrasing it cannot bind; try the next
    }
    if (!match) continue;
    verifiers::VerifierCall call{match->function, match->params};
    if (!verifiers::Registry::instance().is_valid(call)) continue;
    return {match->function, match->params, ExtractionConfidence::PatternMatched};
  }
  return {};
}

namespace {

std::string registry_listing() {
  std::ostringstream os;
  for (const auto& info : verifiers::Registry::instance().list()) {
    os << info.name << "(";
    for (std::size_t i = 0; i < info.signature.size(); ++i) {
      if (i) os << ", ";
      switch (info.signature[i]) {
        case verifiers::ParamKind::Int: os << "int"; break;
        case verifiers::ParamKind::String: os << "str"; break;
        case verifiers::ParamKind::StringList: os << "str_list"; break;
        case verifiers::ParamKind::RangeList: os << "range_list"; break;
      }
    }
    os << ") - " << info.summary << "\n";
  }
  return os.str();
}

// First balanced {...} block in the text, if any.
std::optional<json> first_json_object(const std::string& text) {
  std::size_t open = text.find('{');
  while (open != std::string::npos) {
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = open; i < text.size(); ++i) {
      char c = text[i];
      if (in_string) {
        if (c == '\\') {
          ++i;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) {
          try {
            return json::parse(text.substr(open, i - open + 1));
          } catch (const json::exception&) {
            break;
          }
        }
      }
    }
    open = text.find('{', open + 1);
  }
  return std::nullopt;
}

}  // namespace

ExtractionResult extract_verifier_params(std::string_view description,
                                         GenerationClient* llm) {
  ExtractionResult result = extract_by_patterns(description);
  if (!result.needs_review() || llm == nullptr) return result;

  GenerationRequest request;
  request.system_text = std::string(prompts::extraction().system_text);
  request.user_text =
      prompts::render(prompts::extraction(),
                      {{"registry", registry_listing()},
                       {"constraint", std::string(description)}});
  std::string raw;
  try {
    raw = llm->generate(request);
  } catch (const Error&) {
    return {};  // extraction failures sink to NeedsReview, never error out
  }
  auto parsed = first_json_object(raw);
  if (!parsed || !parsed->contains("function") ||
      !(*parsed)["function"].is_string()) {
    return {};
  }
  verifiers::VerifierCall call;
  call.function_name = (*parsed)["function"].get<std::string>();
  call.params = parsed->value("params", json::array());
  if (!call.params.is_array() ||
      !verifiers::Registry::instance().is_valid(call)) {
    return {};
  }
  return {call.function_name, call.params, ExtractionConfidence::LlmExtracted};
}

std::string_view to_string(ExtractionConfidence c) {
  switch (c) {
    case ExtractionConfidence::PatternMatched: return "PatternMatched";
    case ExtractionConfidence::LlmExtracted: return "LlmExtracted";
    case ExtractionConfidence::NeedsReview: return "NeedsReview";
  }
  return "?";
}

}  // namespace mmif::judge
