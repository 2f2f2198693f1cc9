#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace mmif::taxonomy {

enum class MainCategory {
  RhetoricLogic,
  FormatLimit,
  TextLengthLimit,
  MathLimit,
  ActionLimit,
  Keyword,
};

/// Evaluation route a constraint resolves to at run time.
enum class EvalMethod { RuleBased, DirectJudge, CompareJudge };

/// Default route carried by the taxonomy; RuleOrDirect rows resolve by
/// verifier availability.
enum class DefaultEvalMethod { RuleBased, DirectJudge, CompareJudge, RuleOrDirect };

/// One constraint subcategory (e.g. "C.3 Word limit").
struct ConstraintClass {
  MainCategory main_category = MainCategory::RhetoricLogic;
  std::string sub_id;    // "A.1" .. "F.4"
  std::string sub_name;  // "Rhetoric requirements" ...
  DefaultEvalMethod default_eval_method = DefaultEvalMethod::DirectJudge;

  bool operator==(const ConstraintClass&) const = default;
};

/// The constraint taxonomy. The built-in table is the fixed set of 6 main
/// categories / 32 subcategories; an override file may replace or extend
/// entries, but benchmark scores are only comparable on the built-in table.
class Taxonomy {
 public:
  static const Taxonomy& builtin();

  /// Built-in table plus override entries from a JSON file:
  ///   [{"sub_id": "...", "sub_name": "...", "main_category": "...",
  ///     "eval_method": "RuleBased|DirectJudge|CompareJudge|RuleOrDirect"}]
  /// Entries whose sub_id exists replace the built-in row; new sub_ids of
  /// the form "<letter>.<number>" are appended.
  static Taxonomy with_overrides_from_file(const std::string& path);
  static Taxonomy with_overrides(const nlohmann::json& entries);

  /// All classes, ordered by sub_id (category letter, then numeric part).
  const std::vector<ConstraintClass>& classes() const { return classes_; }

  const ConstraintClass* find(std::string_view sub_id) const;
  /// Throws ValidationError when sub_id is unknown.
  const ConstraintClass& at(std::string_view sub_id) const;

  /// Digest of the table contents; recorded in run manifests.
  std::string version() const;

  nlohmann::json to_json() const;
  static Taxonomy from_json(const nlohmann::json& entries);

 private:
  explicit Taxonomy(std::vector<ConstraintClass> classes);
  std::vector<ConstraintClass> classes_;
};

/// Convenience accessor for the built-in table.
const std::vector<ConstraintClass>& load_taxonomy();

/// RuleOrDirect resolves by verifier availability; fixed methods pass
/// through. Never returns RuleOrDirect.
EvalMethod resolve_eval_method(const ConstraintClass& cls, bool verifier_available);

std::string_view to_string(MainCategory c);
std::string_view to_string(EvalMethod m);
std::string_view to_string(DefaultEvalMethod m);
MainCategory main_category_from_string(std::string_view s);
EvalMethod eval_method_from_string(std::string_view s);
DefaultEvalMethod default_eval_method_from_string(std::string_view s);

void to_json(nlohmann::json& j, const ConstraintClass& c);
void from_json(const nlohmann::json& j, ConstraintClass& c);

}  // namespace mmif::taxonomy
