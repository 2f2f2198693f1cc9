#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

// The rule-based verification functions, behind a registry keyed by function
// name. Function names are the published ones verbatim, including the
// "metioned" spelling (the corrected spelling is accepted as an alias).
// "At least N" constraints encode as [N, 10000]; the sentinel is part of the
// parameter-file format.

namespace mmif::verifiers {

/// Outcome of one verification. `detail` reports measured vs. required and
/// is always non-empty on failure.
struct Verdict {
  bool passed = false;
  std::string detail;
};

/// A named registry function plus its parameter vector, as found in
/// benchmark files. Params are a JSON array whose shape must match the
/// registry signature exactly.
struct VerifierCall {
  std::string function_name;
  nlohmann::json params = nlohmann::json::array();

  bool operator==(const VerifierCall&) const = default;
};

void to_json(nlohmann::json& j, const VerifierCall& c);
void from_json(const nlohmann::json& j, VerifierCall& c);

enum class ParamKind { Int, String, StringList, RangeList };

struct VerifierInfo {
  std::string name;
  std::vector<ParamKind> signature;
  std::string summary;  // one line for `mmif verifiers --list`
};

class Registry {
 public:
  static const Registry& instance();

  /// All 18 functions in published-table order.
  const std::vector<VerifierInfo>& list() const { return infos_; }

  /// Looks up a function; resolves the "mentioned" alias. Null on miss.
  const VerifierInfo* find(std::string_view name) const;

  /// Throws UnknownFunctionError / ParamError when the call is malformed.
  void validate(const VerifierCall& call) const;
  bool is_valid(const VerifierCall& call) const;

  /// Validates, then dispatches. Pure: identical (call, text) pairs always
  /// produce identical verdicts.
  Verdict run(const VerifierCall& call, std::string_view text) const;

 private:
  Registry();
  std::vector<VerifierInfo> infos_;
};

/// Convenience wrapper over Registry::instance().run().
Verdict run_verifier(const VerifierCall& call, std::string_view text);

// Typed operations underneath the registry. All throw ParamError on invalid
// parameters; a failed Verdict always means the text missed the requirement.

enum class CountScope {
  Paragraphs,
  Sentences,
  Words,
  PerParagraphSentences,
  PerParagraphWords,
};

Verdict verify_count_in_range(std::string_view text, CountScope scope, long lower,
                              long upper);

enum class PerParagraphScope { Sentences, Words };

Verdict verify_per_paragraph_range_list(std::string_view text,
                                        PerParagraphScope scope,
                                        std::span<const std::pair<long, long>> ranges);

/// Each paragraph must have exactly `exceed_num` more sentences than the
/// previous one, and no paragraph may exceed `upper_bound` sentences.
Verdict verify_sentence_progression(std::string_view text, long exceed_num,
                                    long upper_bound);

enum class SubstringPosition {
  WholeBegin,
  WholeEnd,
  EachSentenceBegin,
  EachSentenceEnd,
  NotContainedOne,
  NotContainedMany,
};

/// Case-insensitive substring checks. Whole-response begin/end ignore
/// surrounding whitespace; the End positions also accept a match in front
/// of trailing terminator punctuation, so "ends with 'apple'" passes on
/// "... apple." while "ends with '!'" still passes on "Go!".
Verdict verify_substring_position(std::string_view text,
                                  std::span<const std::string> substrings,
                                  SubstringPosition position);

/// Case-insensitive, word-boundary keyword counting; the count summed over
/// all keywords must lie in [lower_times, upper_times]. Keywords containing
/// spaces match as phrases.
Verdict verify_keyword_mentions(std::string_view text,
                                std::span<const std::string> keywords,
                                long lower_times, long upper_times);

/// Every Decimal token has exactly `precision` decimal places (integers are
/// exempt).
Verdict verify_number_precision(std::string_view text, long precision);

Verdict verify_no_numbers(std::string_view text);

/// Every Scientific token has exactly `significant_digits` significant
/// digits, and at least one Scientific token exists.
Verdict verify_scientific_sig_digits(std::string_view text, long significant_digits);

}  // namespace mmif::verifiers
