#pragma once

#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "mmif/benchmark.hpp"
#include "mmif/client.hpp"
#include "mmif/constraint.hpp"

// LLM-backed evaluation protocols: direct judgment of one constraint against
// one response, and comparative judgment against a control response
// generated from the ablated prompt.

namespace mmif::judge {

enum class JudgeVerdict { Satisfied, Violated, Indeterminate };

std::string_view to_string(JudgeVerdict v);
JudgeVerdict judge_verdict_from_string(std::string_view s);

struct JudgeDecision {
  JudgeVerdict verdict = JudgeVerdict::Indeterminate;
  std::string rationale;
  std::string raw;
};

/// Total verdict grammar: the last line matching `ANSWER: YES|NO`
/// (case-insensitive) decides; any other output is Indeterminate.
JudgeVerdict parse_verdict(std::string_view raw);

/// One judge call asking whether `response` satisfies the constraint.
/// Transport failures propagate as EvalError after the client's retries.
JudgeDecision direct_judge(const taxonomy::ConstraintSpec& constraint,
                           std::string_view response,
                           const std::optional<std::string>& image,
                           GenerationClient& judge_client);

/// Control responses, cached per (item, constraint) with per-key
/// single-flight so concurrent evaluations generate each control once.
/// Pre-recorded controls can be loaded up front.
class ControlResponseCache {
 public:
  static std::string key(std::string_view item_id,
                         std::string_view constraint_description);

  void preload(const std::string& key, std::string control);
  bool contains(const std::string& key) const;

  /// Returns the cached value or runs `make` (once across threads).
  std::string get_or_generate(const std::string& key,
                              const std::function<std::string()>& make);

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::shared_future<std::string>> entries_;
};

/// Comparative judgment: response A (produced under the full prompt) against
/// control response B (produced from the prompt with this constraint
/// removed). Satisfied iff the judge affirms that A adheres more closely;
/// indistinguishable outputs therefore count as Violated. `model_client` may
/// be null when the control is already cached; otherwise EvalError
/// "control-response unavailable" is raised. At most one model call and one
/// judge call happen per invocation; cache hits cost zero model calls.
JudgeDecision compare_judge(const taxonomy::ConstraintSpec& constraint,
                            const evalrun::BenchmarkItem& item,
                            std::string_view response_a,
                            GenerationClient& judge_client,
                            GenerationClient* model_client,
                            ControlResponseCache& cache);

}  // namespace mmif::judge
