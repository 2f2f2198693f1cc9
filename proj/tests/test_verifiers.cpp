#include <doctest.h>

#include <string>
#include <vector>

#include "generators.hpp"
#include "mmif/errors.hpp"
#include "mmif/textseg.hpp"
#include "mmif/verifiers.hpp"
#include "oracle.hpp"

using namespace mmif::verifiers;
using mmif::ParamError;
using mmif::UnknownFunctionError;
using nlohmann::json;

namespace {

VerifierCall call(std::string name, json params) {
  return VerifierCall{std::move(name), std::move(params)};
}

}  // namespace

TEST_CASE("count ranges") {
  CHECK(verify_count_in_range("A.\n\nB.\n\nC.", CountScope::Paragraphs, 3, 10000)
            .passed);
  CHECK(verify_count_in_range("One. Two. Three.", CountScope::Sentences, 3, 3)
            .passed);
  Verdict v = verify_count_in_range("", CountScope::Words, 1, 5);
  CHECK(!v.passed);
  CHECK(v.detail.find("measured 0") != std::string::npos);

  CHECK_THROWS_AS(verify_count_in_range("x", CountScope::Words, 5, 1), ParamError);
  CHECK_THROWS_AS(verify_count_in_range("x", CountScope::Words, -1, 1), ParamError);
}

TEST_CASE("per-paragraph range list") {
  std::string two_paras = "One. Two. Three.\n\nFour. Five.";
  std::vector<std::pair<long, long>> ranges = {{3, 3}, {1, 2}};
  CHECK(verify_per_paragraph_range_list(two_paras, PerParagraphScope::Sentences,
                                        ranges)
            .passed);

  std::vector<std::pair<long, long>> two = {{1, 1}, {1, 1}};
  Verdict v = verify_per_paragraph_range_list("Only one.",
                                              PerParagraphScope::Sentences, two);
  CHECK(!v.passed);
  CHECK(v.detail.find("paragraph count 1") != std::string::npos);

  // 25 and 60 word paragraphs against [(20,30),(50,80)].
  auto words = [](int n) {
    std::string out;
    for (int i = 0; i < n; ++i) {
      if (i) out += ' ';
      out += "w";
    }
    return out + ".";
  };
  std::string text = words(25) + "\n\n" + words(60);
  std::vector<std::pair<long, long>> wr = {{20, 30}, {50, 80}};
  CHECK(verify_per_paragraph_range_list(text, PerParagraphScope::Words, wr).passed);

  CHECK_THROWS_AS(verify_per_paragraph_range_list("x", PerParagraphScope::Words, {}),
                  ParamError);
}

TEST_CASE("sentence progression") {
  std::string good = "One.\n\nOne. Two.\n\nOne. Two. Three.";
  CHECK(verify_sentence_progression(good, 1, 7).passed);

  std::string flat = "One. Two.\n\nOne. Two.";
  CHECK(!verify_sentence_progression(flat, 1, 7).passed);

  std::string overlong =
      "A. B. C. D. E. F. G. H.";  // one paragraph, 8 sentences
  CHECK(!verify_sentence_progression(overlong, 1, 7).passed);

  CHECK(verify_sentence_progression("Single.", 1, 7).passed);
  CHECK_THROWS_AS(verify_sentence_progression("x", 0, 7), ParamError);
}

TEST_CASE("substring positions") {
  std::vector<std::string> apple = {"apple"};
  CHECK(verify_substring_position("apple pie is great", apple,
                                  SubstringPosition::WholeBegin)
            .passed);
  CHECK(verify_substring_position("I love fruit", apple,
                                  SubstringPosition::NotContainedOne)
            .passed);
  std::vector<std::string> bang = {"!"};
  CHECK(verify_substring_position("! Go. ! Stop.", bang,
                                  SubstringPosition::EachSentenceBegin)
            .passed);

  // Case folding.
  CHECK(verify_substring_position("APPLE pie", apple, SubstringPosition::WholeBegin)
            .passed);
  Verdict v = verify_substring_position("fresh Apple pie", apple,
                                        SubstringPosition::NotContainedOne);
  CHECK(!v.passed);
  CHECK(v.detail.find("byte offset 6") != std::string::npos);

  // End checks tolerate trailing terminators.
  CHECK(verify_substring_position("I like apple.", apple,
                                  SubstringPosition::WholeEnd)
            .passed);
  CHECK(verify_substring_position("Go!", bang, SubstringPosition::WholeEnd).passed);
  CHECK(verify_substring_position("We eat apple. You eat apple.", apple,
                                  SubstringPosition::EachSentenceEnd)
            .passed);
  CHECK(!verify_substring_position("We eat apple. You eat pears.", apple,
                                   SubstringPosition::EachSentenceEnd)
             .passed);

  std::vector<std::string> pair = {"apple", "banana"};
  CHECK(verify_substring_position("only cherries here", pair,
                                  SubstringPosition::NotContainedMany)
            .passed);
  CHECK(!verify_substring_position("banana split", pair,
                                   SubstringPosition::NotContainedMany)
             .passed);

  std::vector<std::string> empty = {""};
  CHECK_THROWS_AS(verify_substring_position("x", empty, SubstringPosition::WholeBegin),
                  ParamError);
}

TEST_CASE("keyword mentions") {
  std::vector<std::string> apple = {"apple"};
  CHECK(verify_keyword_mentions("apple apple apple", apple, 3, 10000).passed);
  CHECK(!verify_keyword_mentions("pineapple pineapple pineapple", apple, 3, 10000)
             .passed);
  CHECK(verify_keyword_mentions("", apple, 0, 0).passed);
  CHECK(verify_keyword_mentions("Apple APPLE apple", apple, 3, 3).passed);
  // Punctuation is a boundary.
  CHECK(verify_keyword_mentions("apple, apple.", apple, 2, 2).passed);

  std::vector<std::string> phrase = {"renewable energy"};
  CHECK(verify_keyword_mentions("We like renewable energy a lot", phrase, 1, 1)
            .passed);

  std::vector<std::string> both = {"apple", "banana"};
  CHECK(verify_keyword_mentions("apple and banana and apple", both, 3, 3).passed);

  CHECK_THROWS_AS(verify_keyword_mentions("x", apple, 3, 1), ParamError);
  CHECK_THROWS_AS(verify_keyword_mentions("x", {}, 0, 1), ParamError);
}

TEST_CASE("number rules") {
  CHECK(verify_number_precision("It costs 3.14 or 2.50", 2).passed);
  CHECK(!verify_number_precision("It costs 3.1", 2).passed);
  CHECK(verify_number_precision("Integers 5 and 1,000 are exempt", 2).passed);
  CHECK(verify_no_numbers("No digits here").passed);
  CHECK(!verify_no_numbers("I have 2 cats").passed);
  CHECK(verify_scientific_sig_digits("Mass is 1.23e+4 kg", 3).passed);
  CHECK(!verify_scientific_sig_digits("Mass is 1.2e+4 kg", 3).passed);
  // Absence of scientific notation violates the constraint.
  CHECK(!verify_scientific_sig_digits("Mass is 1234 kg", 3).passed);

  CHECK_THROWS_AS(verify_number_precision("x", -1), ParamError);
  CHECK_THROWS_AS(verify_scientific_sig_digits("x", 0), ParamError);
}

TEST_CASE("registry lists all 18 published functions") {
  const auto& infos = Registry::instance().list();
  REQUIRE(infos.size() == 18);
  std::vector<std::string> expected = {
      "check_whether_response_paragraph_number_in_range",
      "check_whether_response_sentence_number_in_range",
      "check_whether_each_paragraph_sentence_number_in_range",
      "check_whether_each_paragraph_sentence_number_in_range_list",
      "check_whether_each_paragraph_sentence_number_exceeds",
      "check_whether_response_word_count_in_range",
      "check_whether_each_paragraph_word_count_in_range",
      "check_whether_each_paragraph_word_count_in_range_list",
      "check_whether_whole_response_not_contain_certain_substring",
      "check_whether_whole_response_not_contain_certain_substrings",
      "check_whether_each_sentence_begin_with_certain_substring",
      "check_whether_each_sentence_end_with_certain_substring",
      "check_whether_whole_response_begin_with_certain_substring",
      "check_whether_whole_response_end_with_certain_substring",
      "check_whether_keywords_metioned_in_range",
      "check_number_precision_in_response",
      "check_whether_has_no_number_in_response",
      "check_scientific_notation_precision_in_response",
  };
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(infos[i].name == expected[i]);
    CHECK(!infos[i].summary.empty());
  }
}

TEST_CASE("run_verifier dispatch and errors") {
  CHECK(run_verifier(call("check_whether_response_paragraph_number_in_range",
                          json::array({3, 10000})),
                     "A.\n\nB.\n\nC.")
            .passed);
  CHECK(run_verifier(call("check_whether_response_word_count_in_range",
                          json::array({50, 80})),
                     [] {
                       std::string t;
                       for (int i = 0; i < 65; ++i) t += "word ";
                       return t;
                     }())
            .passed);

  CHECK_THROWS_AS(run_verifier(call("no_such_function", json::array()), "x"),
                  UnknownFunctionError);
  CHECK_THROWS_AS(run_verifier(call("check_whether_response_word_count_in_range",
                                    json::array({80, 50})),
                               "x"),
                  ParamError);
  CHECK_THROWS_AS(run_verifier(call("check_whether_response_word_count_in_range",
                                    json::array({"a", "b"})),
                               "x"),
                  ParamError);
  CHECK_THROWS_AS(run_verifier(call("check_whether_response_word_count_in_range",
                                    json::array({1})),
                               "x"),
                  ParamError);

  // The corrected spelling aliases to the published name.
  CHECK(run_verifier(call("check_whether_keywords_mentioned_in_range",
                          json::array({json::array({"apple"}), 1, 10})),
                     "an apple a day")
            .passed);
  CHECK(Registry::instance().find("check_whether_keywords_mentioned_in_range") !=
        nullptr);

  // Range-list params arrive as [[lo,hi],...] inside one slot.
  CHECK(run_verifier(
            call("check_whether_each_paragraph_sentence_number_in_range_list",
                 json::array({json::array(
                     {json::array({3, 3}), json::array({1, 2})})})),
            "One. Two. Three.\n\nFour. Five.")
            .passed);
}

TEST_CASE("verdicts are deterministic and negative verdicts carry detail") {
  gen::Rng rng(31337);
  std::vector<std::string> apple = {"apple"};
  for (int iter = 0; iter < 100; ++iter) {
    std::string text = gen::text(rng);
    Verdict a = verify_keyword_mentions(text, apple, 1, 3);
    Verdict b = verify_keyword_mentions(text, apple, 1, 3);
    CHECK(a.passed == b.passed);
    CHECK(a.detail == b.detail);
    if (!a.passed) CHECK(!a.detail.empty());
  }
}

TEST_CASE("appending a forbidden substring flips NotContained to fail") {
  gen::Rng rng(555);
  std::vector<std::string> needle = {"zyx"};
  for (int iter = 0; iter < 100; ++iter) {
    std::string text = gen::text(rng);
    Verdict before = verify_substring_position(text, needle,
                                               SubstringPosition::NotContainedOne);
    if (!before.passed) continue;
    Verdict after = verify_substring_position(text + " zyx", needle,
                                              SubstringPosition::NotContainedOne);
    CHECK(!after.passed);
  }
}

TEST_CASE("precision check stays true when decimals are removed") {
  gen::Rng rng(777);
  for (int iter = 0; iter < 200; ++iter) {
    std::string text = gen::text(rng);
    if (!verify_number_precision(text, 2).passed) continue;
    // Blank out every decimal token; the verdict must stay true (vacuous).
    std::string scrubbed = text;
    for (const auto& tok : mmif::textseg::extract_numbers(text)) {
      if (tok.kind == mmif::textseg::NumberKind::Decimal) {
        for (std::size_t i = tok.begin; i < tok.end; ++i) scrubbed[i] = ' ';
      }
    }
    CHECK(verify_number_precision(scrubbed, 2).passed);
  }
}

TEST_CASE("range verifiers agree with the oracle on generated texts") {
  gen::Rng rng(4242);
  for (int iter = 0; iter < 500; ++iter) {
    std::string text = gen::text(rng);
    long lo = static_cast<long>(rng.bounded(4));
    long hi = lo + static_cast<long>(rng.bounded(5));

    bool impl = verify_count_in_range(text, CountScope::Paragraphs, lo, hi).passed;
    long n = static_cast<long>(oracle::paragraphs(text).size());
    CHECK(impl == (n >= lo && n <= hi));

    impl = verify_count_in_range(text, CountScope::Sentences, lo, hi).passed;
    n = oracle::total_sentences(text);
    CHECK(impl == (n >= lo && n <= hi));

    long wlo = static_cast<long>(rng.bounded(20));
    long whi = wlo + static_cast<long>(rng.bounded(40));
    impl = verify_count_in_range(text, CountScope::Words, wlo, whi).passed;
    n = oracle::words(text);
    CHECK(impl == (n >= wlo && n <= whi));

    impl = verify_count_in_range(text, CountScope::PerParagraphSentences, lo, hi)
               .passed;
    bool expect = true;
    for (long c : oracle::per_paragraph_sentences(text)) {
      if (c < lo || c > hi) expect = false;
    }
    CHECK(impl == expect);
  }
}
