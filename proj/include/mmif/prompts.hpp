#pragma once

#include <map>
#include <string>
#include <string_view>

// Prompt templates ship as versioned, compiled-in text assets. Every result
// file records the bundle hash, so a score is always traceable to the exact
// wording that produced it. The judge templates mandate a final
// `ANSWER: YES` / `ANSWER: NO` line; the verdict parser accepts nothing else.

namespace mmif::prompts {

struct PromptTemplate {
  std::string_view name;
  std::string_view version;
  std::string_view system_text;
  std::string_view user_template;  // {{placeholder}} substitution
};

const PromptTemplate& direct_judge();
const PromptTemplate& compare_judge();
const PromptTemplate& extraction();
const PromptTemplate& task_generation();
const PromptTemplate& constraint_integration();
const PromptTemplate& constraint_validation();

/// Substitutes {{key}} markers; unknown markers are left in place.
std::string render(const PromptTemplate& tpl,
                   const std::map<std::string, std::string>& vars);

std::string template_hash(const PromptTemplate& tpl);

/// Combined digest over all templates; recorded in results and manifests.
std::string bundle_hash();

}  // namespace mmif::prompts
