#include <doctest.h>

#include <string>
#include <vector>

#include "mmif/extract.hpp"
#include "mmif/verifiers.hpp"

using namespace mmif::judge;
using nlohmann::json;

namespace {

struct Row {
  const char* constraint;
  const char* function;
  json params;
};

// The published (constraint example -> function, params) table, verbatim.
const std::vector<Row>& published_rows() {
  static const std::vector<Row> rows = {
      {"The number of text paragraphs be at least 3",
       "check_whether_response_paragraph_number_in_range", json::array({3, 10000})},
      {"The number of sentences be exactly 3",
       "check_whether_response_sentence_number_in_range", json::array({3, 3})},
      {"The number of sentences in each paragraph be less than 3",
       "check_whether_each_paragraph_sentence_number_in_range",
       json::array({0, 2})},
      {"The number of sentences in the first paragraph be exactly 3, and in "
       "the second paragraph be at most 2",
       "check_whether_each_paragraph_sentence_number_in_range_list",
       json::array({json::array({json::array({3, 3}), json::array({1, 2})})})},
      {"Each new paragraph should have 1 sentence more than the previous one, "
       "no paragraph exceeds 7 sentences",
       "check_whether_each_paragraph_sentence_number_exceeds",
       json::array({1, 7})},
      {"The number of words should be between 50 and 80",
       "check_whether_response_word_count_in_range", json::array({50, 80})},
      {"The number of words in each paragraph should be between 50 and 80",
       "check_whether_each_paragraph_word_count_in_range", json::array({50, 80})},
      {"The number of words in the first paragraph be between 20 and 30, in "
       "the second between 50 and 80",
       "check_whether_each_paragraph_word_count_in_range_list",
       json::array({json::array({json::array({20, 30}), json::array({50, 80})})})},
      {"The response should not contain the word \"apple\"",
       "check_whether_whole_response_not_contain_certain_substring",
       json::array({"apple"})},
      {"The response should not contain the words \"apple\" and \"banana\"",
       "check_whether_whole_response_not_contain_certain_substrings",
       json::array({json::array({"apple", "banana"})})},
      {"Each sentence should start with exclamation point",
       "check_whether_each_sentence_begin_with_certain_substring",
       json::array({"!"})},
      {"Each sentence should end with \"apple\"",
       "check_whether_each_sentence_end_with_certain_substring",
       json::array({"apple"})},
      {"The response should start with \"apple\"",
       "check_whether_whole_response_begin_with_certain_substring",
       json::array({"apple"})},
      {"The response should end with \"apple\"",
       "check_whether_whole_response_end_with_certain_substring",
       json::array({"apple"})},
      {"The response should mention the word \"apple\" at least 3 times",
       "check_whether_keywords_metioned_in_range",
       json::array({json::array({"apple"}), 3, 10000})},
      {"The numbers in the response should have 2 decimal places",
       "check_number_precision_in_response", json::array({2})},
      {"The response should not contain any number",
       "check_whether_has_no_number_in_response", json::array()},
      {"The numbers in the response should have 3 significant digits",
       "check_scientific_notation_precision_in_response", json::array({3})},
  };
  return rows;
}

}  // namespace

TEST_CASE("pattern bank reproduces every published table row") {
  for (const auto& row : published_rows()) {
    CAPTURE(row.constraint);
    ExtractionResult r = extract_by_patterns(row.constraint);
    CHECK(r.confidence == ExtractionConfidence::PatternMatched);
    CHECK(r.function_name == row.function);
    CHECK(r.params == row.params);
  }
}

TEST_CASE("pattern bank handles the taxonomy's rule-based phrasings") {
  auto r = extract_by_patterns("Your response must consist of exactly 4 paragraphs.");
  CHECK(r.function_name == "check_whether_response_paragraph_number_in_range");
  CHECK(r.params == json::array({4, 4}));

  r = extract_by_patterns("Totally use 5 sentences in your response.");
  CHECK(r.function_name == "check_whether_response_sentence_number_in_range");
  CHECK(r.params == json::array({5, 5}));

  r = extract_by_patterns("Keep two decimal places for all numbers in the answer.");
  CHECK(r.function_name == "check_number_precision_in_response");
  CHECK(r.params == json::array({2}));

  r = extract_by_patterns("Please start your answer with 'Once upon a time...'.");
  CHECK(r.function_name ==
        "check_whether_whole_response_begin_with_certain_substring");
  CHECK(r.params == json::array({"Once upon a time..."}));

  r = extract_by_patterns("Mention 'GreenTech' exactly three times throughout.");
  CHECK(r.function_name == "check_whether_keywords_metioned_in_range");
  CHECK(r.params == json::array({json::array({"GreenTech"}), 3, 3}));

  r = extract_by_patterns("Do not mention the words 'budget' or 'investment'.");
  CHECK(r.function_name ==
        "check_whether_whole_response_not_contain_certain_substrings");
  CHECK(r.params == json::array({json::array({"budget", "investment"})}));

  r = extract_by_patterns(
      "Mention both 'sustainability' and 'renewable energy' at least twice.");
  CHECK(r.function_name == "check_whether_keywords_metioned_in_range");
  CHECK(r.params ==
        json::array({json::array({"sustainability", "renewable energy"}), 2, 10000}));

  r = extract_by_patterns("The response must be between 100 and 150 words.");
  CHECK(r.function_name == "check_whether_response_word_count_in_range");
  CHECK(r.params == json::array({100, 150}));

  r = extract_by_patterns("Don't include specific numbers in your answers.");
  CHECK(r.function_name == "check_whether_has_no_number_in_response");
}

TEST_CASE("non-verifiable constraints sink to NeedsReview") {
  for (const char* description :
       {"Write like a pirate", "Your output should include a metaphor.",
        "Please answer in Spanish.", "Use **bold** for every noun.",
        "Write your answer in a positive and encouraging tone.",
        "Express all numbers greater than 1,000 in scientific notation."}) {
    CAPTURE(description);
    ExtractionResult r = extract_by_patterns(description);
    CHECK(r.needs_review());
    CHECK(r.function_name.empty());
  }
}

TEST_CASE("every non-NeedsReview extraction validates against the registry") {
  // Feed a pile of phrasings, some extractable and some not; the safety
  // invariant must hold for all of them.
  std::vector<std::string> corpus;
  for (const auto& row : published_rows()) corpus.push_back(row.constraint);
  corpus.insert(corpus.end(),
                {"Use at most 12 sentences.", "Write fewer than 4 paragraphs.",
                 "mention \"x\" once", "mention 'a' and 'b' and 'c' twice",
                 "between one and five words", "start with 'x'",
                 "end with a question mark", "exactly zero sense here",
                 "no numbers please", "at least 1,000 words",
                 "each paragraph should have more than 2 sentences"});
  for (const auto& description : corpus) {
    CAPTURE(description);
    ExtractionResult r = extract_by_patterns(description);
    if (!r.needs_review()) {
      mmif::verifiers::VerifierCall call{r.function_name, r.params};
      CHECK(mmif::verifiers::Registry::instance().is_valid(call));
    }
  }
}

TEST_CASE("LLM extraction path validates and falls back") {
  mmif::judge::StubClient good(json{
      {"records",
       json::array({{{"match", "Registry:"},
                     {"response",
                      "Here you go:\n{\"function\": "
                      "\"check_whether_response_word_count_in_range\", "
                      "\"params\": [10, 20]}"}}})}});
  ExtractionResult r = extract_verifier_params("Write like a pirate", &good);
  CHECK(r.confidence == ExtractionConfidence::LlmExtracted);
  CHECK(r.function_name == "check_whether_response_word_count_in_range");
  CHECK(r.params == json::array({10, 20}));

  mmif::judge::StubClient none(json{{"default", "{\"function\": null}"}});
  r = extract_verifier_params("Write like a pirate", &none);
  CHECK(r.needs_review());

  mmif::judge::StubClient invalid(
      json{{"default", "{\"function\": \"check_whether_response_word_count_in_"
                       "range\", \"params\": [20, 10]}"}});
  r = extract_verifier_params("Write like a pirate", &invalid);
  CHECK(r.needs_review());

  // Pattern hits never reach the LLM.
  mmif::judge::StubClient counting(json::object());
  r = extract_verifier_params("The number of words should be between 50 and 80",
                              &counting);
  CHECK(r.confidence == ExtractionConfidence::PatternMatched);
  CHECK(counting.calls() == 0);
}
