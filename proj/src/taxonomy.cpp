#include "mmif/taxonomy.hpp"

#include <algorithm>
#include <fstream>

#include "mmif/errors.hpp"
#include "mmif/hash.hpp"

namespace mmif::taxonomy {

namespace {

using MC = MainCategory;
using DM = DefaultEvalMethod;

// 6 main categories, 32 subcategories. Counts per category: A=2, B=14, C=3,
// D=2, E=7, F=4.
const std::vector<ConstraintClass>& builtin_classes() {
  static const std::vector<ConstraintClass> table = {
      {MC::RhetoricLogic, "A.1", "Rhetoric requirements", DM::CompareJudge},
      {MC::RhetoricLogic, "A.2", "Logical relation", DM::DirectJudge},
      {MC::FormatLimit, "B.1", "Natural language", DM::DirectJudge},
      {MC::FormatLimit, "B.2", "Part of speech", DM::DirectJudge},
      {MC::FormatLimit, "B.3", "Sentence structure", DM::DirectJudge},
      {MC::FormatLimit, "B.4", "Tense requirements", DM::DirectJudge},
      {MC::FormatLimit, "B.5", "Punctuation", DM::RuleBased},
      {MC::FormatLimit, "B.6", "Highlight", DM::DirectJudge},
      {MC::FormatLimit, "B.7", "Title requirements", DM::DirectJudge},
      {MC::FormatLimit, "B.8", "Style requirements", DM::CompareJudge},
      {MC::FormatLimit, "B.9", "Case requirements", DM::DirectJudge},
      {MC::FormatLimit, "B.10", "Unstrict format", DM::DirectJudge},
      {MC::FormatLimit, "B.11", "Strict format", DM::DirectJudge},
      {MC::FormatLimit, "B.12", "Number and List", DM::DirectJudge},
      {MC::FormatLimit, "B.13", "Wrap up", DM::DirectJudge},
      {MC::FormatLimit, "B.14", "First letter", DM::DirectJudge},
      {MC::TextLengthLimit, "C.1", "Paragraph limit", DM::RuleBased},
      {MC::TextLengthLimit, "C.2", "Sentence limit", DM::RuleBased},
      {MC::TextLengthLimit, "C.3", "Word limit", DM::RuleBased},
      {MC::MathLimit, "D.1", "Precision", DM::RuleBased},
      {MC::MathLimit, "D.2", "Scientific notation", DM::RuleBased},
      {MC::ActionLimit, "E.1", "Role imitation", DM::CompareJudge},
      {MC::ActionLimit, "E.2", "Prefix and Suffix", DM::RuleBased},
      {MC::ActionLimit, "E.3", "Tone requirement", DM::CompareJudge},
      {MC::ActionLimit, "E.4", "Perspective", DM::DirectJudge},
      {MC::ActionLimit, "E.5", "Target audience", DM::CompareJudge},
      {MC::ActionLimit, "E.6", "Situation", DM::CompareJudge},
      {MC::ActionLimit, "E.7", "Prior condition", DM::DirectJudge},
      {MC::Keyword, "F.1", "Mention", DM::RuleOrDirect},
      {MC::Keyword, "F.2", "Not mention", DM::RuleOrDirect},
      {MC::Keyword, "F.3", "Multiple mention", DM::RuleOrDirect},
      {MC::Keyword, "F.4", "Keyword variation", DM::DirectJudge},
  };
  return table;
}

// "B.10" sorts after "B.2": order by letter, then numeric part.
std::pair<std::string, long> sub_id_key(const std::string& sub_id) {
  auto dot = sub_id.find('.');
  if (dot == std::string::npos) return {sub_id, 0};
  std::string prefix = sub_id.substr(0, dot);
  long num = 0;
  try {
    num = std::stol(sub_id.substr(dot + 1));
  } catch (...) {
    num = 0;
  }
  return {prefix, num};
}

}  // namespace

Taxonomy::Taxonomy(std::vector<ConstraintClass> classes)
    : classes_(std::move(classes)) {
  std::sort(classes_.begin(), classes_.end(),
            [](const ConstraintClass& a, const ConstraintClass& b) {
              return sub_id_key(a.sub_id) < sub_id_key(b.sub_id);
            });
}

const Taxonomy& Taxonomy::builtin() {
  static const Taxonomy tax{builtin_classes()};
  return tax;
}

Taxonomy Taxonomy::with_overrides(const nlohmann::json& entries) {
  if (!entries.is_array()) {
    throw ValidationError("taxonomy override must be a JSON array");
  }
  std::vector<ConstraintClass> classes = builtin_classes();
  for (const auto& entry : entries) {
    ConstraintClass cls = entry.get<ConstraintClass>();
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const ConstraintClass& c) {
                             return c.sub_id == cls.sub_id;
                           });
    if (it != classes.end()) {
      *it = cls;
    } else {
      if (cls.sub_id.find('.') == std::string::npos) {
        throw ValidationError("override sub_id must look like 'X.1': " +
                              cls.sub_id);
      }
      classes.push_back(cls);
    }
  }
  return Taxonomy{std::move(classes)};
}

Taxonomy Taxonomy::with_overrides_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open taxonomy override: " + path);
  nlohmann::json j;
  in >> j;
  return with_overrides(j);
}

const ConstraintClass* Taxonomy::find(std::string_view sub_id) const {
  auto it = std::find_if(
      classes_.begin(), classes_.end(),
      [&](const ConstraintClass& c) { return c.sub_id == sub_id; });
  return it == classes_.end() ? nullptr : &*it;
}

const ConstraintClass& Taxonomy::at(std::string_view sub_id) const {
  const ConstraintClass* cls = find(sub_id);
  if (cls == nullptr) {
    throw ValidationError("unknown constraint subcategory: " +
                          std::string(sub_id));
  }
  return *cls;
}

std::string Taxonomy::version() const {
  return fnv1a64_hex(to_json().dump());
}

nlohmann::json Taxonomy::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : classes_) arr.push_back(c);
  return arr;
}

Taxonomy Taxonomy::from_json(const nlohmann::json& entries) {
  if (!entries.is_array()) {
    throw ValidationError("taxonomy must be a JSON array");
  }
  std::vector<ConstraintClass> classes;
  for (const auto& entry : entries) classes.push_back(entry.get<ConstraintClass>());
  return Taxonomy{std::move(classes)};
}

const std::vector<ConstraintClass>& load_taxonomy() {
  return Taxonomy::builtin().classes();
}

EvalMethod resolve_eval_method(const ConstraintClass& cls, bool verifier_available) {
  switch (cls.default_eval_method) {
    case DefaultEvalMethod::RuleBased:
      return EvalMethod::RuleBased;
    case DefaultEvalMethod::DirectJudge:
      return EvalMethod::DirectJudge;
    case DefaultEvalMethod::CompareJudge:
      return EvalMethod::CompareJudge;
    case DefaultEvalMethod::RuleOrDirect:
      return verifier_available ? EvalMethod::RuleBased : EvalMethod::DirectJudge;
  }
  return EvalMethod::DirectJudge;
}

std::string_view to_string(MainCategory c) {
  switch (c) {
    case MainCategory::RhetoricLogic: return "RhetoricLogic";
    case MainCategory::FormatLimit: return "FormatLimit";
    case MainCategory::TextLengthLimit: return "TextLengthLimit";
    case MainCategory::MathLimit: return "MathLimit";
    case MainCategory::ActionLimit: return "ActionLimit";
    case MainCategory::Keyword: return "Keyword";
  }
  return "?";
}

std::string_view to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::RuleBased: return "RuleBased";
    case EvalMethod::DirectJudge: return "DirectJudge";
    case EvalMethod::CompareJudge: return "CompareJudge";
  }
  return "?";
}

std::string_view to_string(DefaultEvalMethod m) {
  switch (m) {
    case DefaultEvalMethod::RuleBased: return "RuleBased";
    case DefaultEvalMethod::DirectJudge: return "DirectJudge";
    case DefaultEvalMethod::CompareJudge: return "CompareJudge";
    case DefaultEvalMethod::RuleOrDirect: return "RuleOrDirect";
  }
  return "?";
}

MainCategory main_category_from_string(std::string_view s) {
  if (s == "RhetoricLogic") return MainCategory::RhetoricLogic;
  if (s == "FormatLimit") return MainCategory::FormatLimit;
  if (s == "TextLengthLimit") return MainCategory::TextLengthLimit;
  if (s == "MathLimit") return MainCategory::MathLimit;
  if (s == "ActionLimit") return MainCategory::ActionLimit;
  if (s == "Keyword") return MainCategory::Keyword;
  throw ValidationError("unknown main category: " + std::string(s));
}

EvalMethod eval_method_from_string(std::string_view s) {
  if (s == "RuleBased") return EvalMethod::RuleBased;
  if (s == "DirectJudge") return EvalMethod::DirectJudge;
  if (s == "CompareJudge") return EvalMethod::CompareJudge;
  throw ValidationError("unknown eval method: " + std::string(s));
}

DefaultEvalMethod default_eval_method_from_string(std::string_view s) {
  if (s == "RuleBased") return DefaultEvalMethod::RuleBased;
  if (s == "DirectJudge") return DefaultEvalMethod::DirectJudge;
  if (s == "CompareJudge") return DefaultEvalMethod::CompareJudge;
  if (s == "RuleOrDirect") return DefaultEvalMethod::RuleOrDirect;
  throw ValidationError("unknown default eval method: " + std::string(s));
}

void to_json(nlohmann::json& j, const ConstraintClass& c) {
  j = nlohmann::json{{"main_category", to_string(c.main_category)},
                     {"sub_id", c.sub_id},
                     {"sub_name", c.sub_name},
                     {"eval_method", to_string(c.default_eval_method)}};
}

void from_json(const nlohmann::json& j, ConstraintClass& c) {
  c.main_category =
      main_category_from_string(j.at("main_category").get<std::string>());
  c.sub_id = j.at("sub_id").get<std::string>();
  c.sub_name = j.at("sub_name").get<std::string>();
  c.default_eval_method =
      default_eval_method_from_string(j.at("eval_method").get<std::string>());
}

}  // namespace mmif::taxonomy
