#include "mmif/constraint.hpp"

#include "mmif/errors.hpp"

namespace mmif::taxonomy {

void validate(const ConstraintSpec& spec) {
  if (spec.description.empty()) {
    throw ValidationError("constraint description must be non-empty (" +
                          spec.cls.sub_id + ")");
  }
  if (spec.eval_method == EvalMethod::RuleBased) {
    if (!spec.verifier.has_value()) {
      throw ValidationError("rule-based constraint has no verifier binding: " +
                            spec.description);
    }
    verifiers::Registry::instance().validate(*spec.verifier);
  } else if (spec.verifier.has_value()) {
    throw ValidationError(
        "verifier binding present on a non-rule-based constraint: " +
        spec.description);
  }
}

void to_json(nlohmann::json& j, const ConstraintSpec& spec) {
  j = nlohmann::json{{"sub_id", spec.cls.sub_id},
                     {"description", spec.description},
                     {"eval_method", to_string(spec.eval_method)}};
  if (spec.verifier.has_value()) j["verifier"] = *spec.verifier;
}

}  // namespace mmif::taxonomy
