#include "mmif/prompts.hpp"

#include "mmif/hash.hpp"

namespace mmif::prompts {

namespace {

constexpr PromptTemplate kDirectJudge{
    "direct_judge",
    "1",
    "You are a meticulous evaluator. You judge exactly one requirement "
    "against one response, strictly: the requirement must be fully "
    "satisfied. After a brief justification, output a final line of exactly "
    "`ANSWER: YES` or `ANSWER: NO`.",
    "Requirement:\n{{constraint}}\n\nResponse to evaluate:\n{{response}}\n\n"
    "Does the response satisfy the requirement? Give a short justification, "
    "then end with the final line `ANSWER: YES` or `ANSWER: NO`."};

constexpr PromptTemplate kCompareJudge{
    "compare_judge",
    "1",
    "You are a meticulous evaluator comparing two responses to the same "
    "task. Decide whether Response A follows the stated requirement more "
    "closely than Response B. If A clearly follows it better, answer YES. "
    "If B is at least as close — including when the two responses are "
    "indistinguishable on the requirement — answer NO. After a brief "
    "justification, output a final line of exactly `ANSWER: YES` or "
    "`ANSWER: NO`.",
    "Requirement:\n{{constraint}}\n\nResponse A (prompted with the "
    "requirement):\n{{response_a}}\n\nResponse B (prompted without "
    "it):\n{{response_b}}\n\nDoes Response A adhere to the requirement more "
    "closely than Response B? Give a short justification, then end with the "
    "final line `ANSWER: YES` or `ANSWER: NO`."};

constexpr PromptTemplate kExtraction{
    "param_extraction",
    "1",
    "You map a natural-language constraint onto one verification function "
    "from a fixed registry and extract its parameters. Output JSON only.",
    "Registry:\n{{registry}}\n\nConstraint:\n{{constraint}}\n\nSelect the "
    "single best-fitting function and extract its parameters. Encode \"at "
    "least N\" bounds as [N, 10000]. Reply with JSON of the form "
    "{\"function\": \"<name>\", \"params\": [...]}; reply with "
    "{\"function\": null} when no registry function fits."};

constexpr PromptTemplate kTaskGeneration{
    "task_generation",
    "1",
    "You design open-ended tasks for an image so that output constraints "
    "can be layered on top. Tasks must be answerable from the image alone "
    "and must invite long-form responses.",
    "Example tasks:\n{{examples}}\n\nKeep the example tasks that fit the "
    "attached image, replace the ones that do not, and add tasks when "
    "something about the image clearly calls for one. Reply with a JSON "
    "array of task strings."};

constexpr PromptTemplate kConstraintIntegration{
    "constraint_integration",
    "1",
    "You attach output constraints to a task. Each constraint must be "
    "concrete, checkable, compatible with the task and with the other "
    "constraints you produce.",
    "Task:\n{{task}}\n\nCandidate constraint types:\n{{candidates}}\n\n"
    "Choose {{n}} compatible types from the candidates and write one "
    "concrete constraint description for each. Reply with a JSON array of "
    "objects {\"sub_id\": \"...\", \"description\": \"...\"}."};

constexpr PromptTemplate kConstraintValidation{
    "constraint_validation",
    "1",
    "You review constraints attached to a task and reject any that "
    "contradict the task or one another.",
    "Task:\n{{task}}\n\nNumbered constraints:\n{{constraints}}\n\nReply "
    "with a JSON array containing the 0-based indices of the constraints "
    "to keep."};

}  // namespace

const PromptTemplate& direct_judge() { return kDirectJudge; }
const PromptTemplate& compare_judge() { return kCompareJudge; }
const PromptTemplate& extraction() { return kExtraction; }
const PromptTemplate& task_generation() { return kTaskGeneration; }
const PromptTemplate& constraint_integration() { return kConstraintIntegration; }
const PromptTemplate& constraint_validation() { return kConstraintValidation; }

std::string render(const PromptTemplate& tpl,
                   const std::map<std::string, std::string>& vars) {
  std::string out(tpl.user_template);
  for (const auto& [key, value] : vars) {
    std::string marker = "{{" + key + "}}";
    std::size_t at = 0;
    while ((at = out.find(marker, at)) != std::string::npos) {
      out.replace(at, marker.size(), value);
      at += value.size();
    }
  }
  return out;
}

std::string template_hash(const PromptTemplate& tpl) {
  std::string blob;
  blob += tpl.name;
  blob += '\x1f';
  blob += tpl.version;
  blob += '\x1f';
  blob += tpl.system_text;
  blob += '\x1f';
  blob += tpl.user_template;
  return fnv1a64_hex(blob);
}

std::string bundle_hash() {
  std::string combined;
  for (const PromptTemplate* tpl :
       {&kDirectJudge, &kCompareJudge, &kExtraction, &kTaskGeneration,
        &kConstraintIntegration, &kConstraintValidation}) {
    combined += template_hash(*tpl);
  }
  return fnv1a64_hex(combined);
}

}  // namespace mmif::prompts
