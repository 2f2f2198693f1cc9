#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mmif/client.hpp"

// Maps natural-language constraint descriptions onto registry verifier
// calls. Stage 1 is a deterministic pattern bank covering the templated
// phrasings of the verifiable subcategories; stage 2 (optional) asks an LLM;
// stage 3 is the NeedsReview sink. Anything that is not NeedsReview is
// guaranteed to validate against the registry.

namespace mmif::judge {

enum class ExtractionConfidence { PatternMatched, LlmExtracted, NeedsReview };

struct ExtractionResult {
  std::string function_name;  // empty when NeedsReview
  nlohmann::json params = nlohmann::json::array();
  ExtractionConfidence confidence = ExtractionConfidence::NeedsReview;

  bool needs_review() const {
    return confidence == ExtractionConfidence::NeedsReview;
  }
};

/// Stage 1 only: the deterministic pattern bank.
ExtractionResult extract_by_patterns(std::string_view description);

/// Full pipeline. `llm` may be null, in which case stage 2 is skipped.
ExtractionResult extract_verifier_params(std::string_view description,
                                         GenerationClient* llm = nullptr);

std::string_view to_string(ExtractionConfidence c);

}  // namespace mmif::judge
