#include <doctest.h>

#include <map>
#include <set>

#include "mmif/errors.hpp"
#include "mmif/taxonomy.hpp"

using namespace mmif::taxonomy;

TEST_CASE("built-in taxonomy shape") {
  const auto& classes = load_taxonomy();
  CHECK(classes.size() == 32);

  std::map<MainCategory, int> per_category;
  std::set<std::string> ids;
  for (const auto& c : classes) {
    ++per_category[c.main_category];
    ids.insert(c.sub_id);
  }
  CHECK(ids.size() == 32);  // sub_ids partition with no overlap
  CHECK(per_category.size() == 6);
  CHECK(per_category[MainCategory::RhetoricLogic] == 2);
  CHECK(per_category[MainCategory::FormatLimit] == 14);
  CHECK(per_category[MainCategory::TextLengthLimit] == 3);
  CHECK(per_category[MainCategory::MathLimit] == 2);
  CHECK(per_category[MainCategory::ActionLimit] == 7);
  CHECK(per_category[MainCategory::Keyword] == 4);
}

TEST_CASE("default evaluation methods per subcategory") {
  const auto& tax = Taxonomy::builtin();
  auto method = [&](const char* id) { return tax.at(id).default_eval_method; };

  for (const char* id : {"F.1", "F.2", "F.3"}) {
    CHECK(method(id) == DefaultEvalMethod::RuleOrDirect);
  }
  for (const char* id : {"A.1", "B.8", "E.1", "E.3", "E.5", "E.6"}) {
    CHECK(method(id) == DefaultEvalMethod::CompareJudge);
  }
  for (const char* id : {"B.5", "C.1", "C.2", "C.3", "D.1", "D.2", "E.2"}) {
    CHECK(method(id) == DefaultEvalMethod::RuleBased);
  }
  // Everything else is direct judgment.
  int direct = 0;
  for (const auto& c : tax.classes()) {
    if (c.default_eval_method == DefaultEvalMethod::DirectJudge) ++direct;
  }
  CHECK(direct == 16);
}

TEST_CASE("lookups") {
  const auto& tax = Taxonomy::builtin();
  const ConstraintClass& c3 = tax.at("C.3");
  CHECK(c3.sub_name == "Word limit");
  CHECK(c3.default_eval_method == DefaultEvalMethod::RuleBased);
  CHECK(tax.find("Z.9") == nullptr);
  CHECK_THROWS_AS(tax.at("Z.9"), mmif::ValidationError);
}

TEST_CASE("ordering is by sub_id with numeric suffixes") {
  const auto& classes = load_taxonomy();
  // B.2 precedes B.10 despite lexicographic order.
  std::size_t b2 = 0;
  std::size_t b10 = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].sub_id == "B.2") b2 = i;
    if (classes[i].sub_id == "B.10") b10 = i;
  }
  CHECK(b2 < b10);
  CHECK(classes.front().sub_id == "A.1");
  CHECK(classes.back().sub_id == "F.4");
}

TEST_CASE("resolve_eval_method") {
  const auto& tax = Taxonomy::builtin();
  CHECK(resolve_eval_method(tax.at("F.1"), true) == EvalMethod::RuleBased);
  CHECK(resolve_eval_method(tax.at("F.1"), false) == EvalMethod::DirectJudge);
  CHECK(resolve_eval_method(tax.at("E.1"), true) == EvalMethod::CompareJudge);
  CHECK(resolve_eval_method(tax.at("E.1"), false) == EvalMethod::CompareJudge);
  CHECK(resolve_eval_method(tax.at("C.1"), false) == EvalMethod::RuleBased);

  // Never RuleOrDirect, for every class and either flag.
  for (const auto& c : tax.classes()) {
    for (bool flag : {true, false}) {
      EvalMethod m = resolve_eval_method(c, flag);
      CHECK((m == EvalMethod::RuleBased || m == EvalMethod::DirectJudge ||
             m == EvalMethod::CompareJudge));
    }
  }
}

TEST_CASE("serialization round-trip") {
  const auto& tax = Taxonomy::builtin();
  Taxonomy reparsed = Taxonomy::from_json(tax.to_json());
  CHECK(reparsed.classes() == tax.classes());
  CHECK(reparsed.version() == tax.version());
}

TEST_CASE("override file semantics") {
  nlohmann::json overrides = nlohmann::json::array();
  overrides.push_back({{"sub_id", "C.3"},
                       {"sub_name", "Word limit"},
                       {"main_category", "TextLengthLimit"},
                       {"eval_method", "DirectJudge"}});
  overrides.push_back({{"sub_id", "G.1"},
                       {"sub_name", "Custom"},
                       {"main_category", "Keyword"},
                       {"eval_method", "DirectJudge"}});
  Taxonomy tax = Taxonomy::with_overrides(overrides);
  CHECK(tax.classes().size() == 33);
  CHECK(tax.at("C.3").default_eval_method == DefaultEvalMethod::DirectJudge);
  CHECK(tax.at("G.1").sub_name == "Custom");
  CHECK(tax.version() != Taxonomy::builtin().version());

  CHECK_THROWS_AS(Taxonomy::with_overrides(nlohmann::json::object()),
                  mmif::ValidationError);
}
