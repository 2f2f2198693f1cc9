#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "mmif/taxonomy.hpp"
#include "mmif/verifiers.hpp"

namespace mmif::taxonomy {

/// One concrete constraint attached to a task: its taxonomy class, the
/// natural-language description shown to the model, the resolved evaluation
/// route, and (for rule-based evaluation) the bound verifier call.
struct ConstraintSpec {
  ConstraintClass cls;
  std::string description;
  EvalMethod eval_method = EvalMethod::DirectJudge;
  std::optional<verifiers::VerifierCall> verifier;

  bool operator==(const ConstraintSpec&) const = default;
};

/// Enforces the invariants: non-empty description, and eval_method ==
/// RuleBased iff a registry-valid verifier is bound. Throws ValidationError
/// or ParamError.
void validate(const ConstraintSpec& spec);

void to_json(nlohmann::json& j, const ConstraintSpec& spec);

}  // namespace mmif::taxonomy
