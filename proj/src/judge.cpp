#include "mmif/judge.hpp"

#include <algorithm>
#include <cctype>

#include "mmif/hash.hpp"
#include "mmif/prompts.hpp"

namespace mmif::judge {

std::string_view to_string(JudgeVerdict v) {
  switch (v) {
    case JudgeVerdict::Satisfied: return "Satisfied";
    case JudgeVerdict::Violated: return "Violated";
    case JudgeVerdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

JudgeVerdict judge_verdict_from_string(std::string_view s) {
  if (s == "Satisfied") return JudgeVerdict::Satisfied;
  if (s == "Violated") return JudgeVerdict::Violated;
  if (s == "Indeterminate") return JudgeVerdict::Indeterminate;
  throw ValidationError("unknown verdict: " + std::string(s));
}

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string trim_ascii(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Matches one trimmed line against `answer: yes|no` with optional trailing
// `.` or `!`.
std::optional<JudgeVerdict> match_answer_line(std::string_view line) {
  std::string t = lower_ascii(trim_ascii(line));
  if (t.rfind("answer", 0) != 0) return std::nullopt;
  std::size_t i = 6;
  while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  if (i >= t.size() || t[i] != ':') return std::nullopt;
  ++i;
  while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  std::string word;
  while (i < t.size() && std::isalpha(static_cast<unsigned char>(t[i]))) {
    word += t[i++];
  }
  while (i < t.size() &&
         (std::isspace(static_cast<unsigned char>(t[i])) || t[i] == '.' ||
          t[i] == '!')) {
    ++i;
  }
  if (i != t.size()) return std::nullopt;
  if (word == "yes") return JudgeVerdict::Satisfied;
  if (word == "no") return JudgeVerdict::Violated;
  return std::nullopt;
}

JudgeDecision decide(std::string raw) {
  JudgeDecision decision;
  decision.raw = std::move(raw);
  decision.verdict = parse_verdict(decision.raw);

  // Rationale = everything before the last answer line.
  std::size_t cut = decision.raw.size();
  std::size_t pos = 0;
  std::size_t line_start = 0;
  while (line_start <= decision.raw.size()) {
    std::size_t nl = decision.raw.find('\n', line_start);
    std::size_t line_end = nl == std::string::npos ? decision.raw.size() : nl;
    std::string_view line(decision.raw.data() + line_start, line_end - line_start);
    if (match_answer_line(line)) cut = line_start;
    if (nl == std::string::npos) break;
    line_start = nl + 1;
    pos = line_start;
  }
  (void)pos;
  decision.rationale = trim_ascii(
      std::string_view(decision.raw.data(), std::min(cut, decision.raw.size())));
  if (decision.rationale.empty()) decision.rationale = decision.raw;
  return decision;
}

}  // namespace

JudgeVerdict parse_verdict(std::string_view raw) {
  std::optional<JudgeVerdict> last;
  std::size_t line_start = 0;
  while (line_start <= raw.size()) {
    std::size_t nl = raw.find('\n', line_start);
    std::size_t line_end = nl == std::string_view::npos ? raw.size() : nl;
    auto verdict = match_answer_line(raw.substr(line_start, line_end - line_start));
    if (verdict) last = verdict;
    if (nl == std::string_view::npos) break;
    line_start = nl + 1;
  }
  return last.value_or(JudgeVerdict::Indeterminate);
}

JudgeDecision direct_judge(const taxonomy::ConstraintSpec& constraint,
                           std::string_view response,
                           const std::optional<std::string>& image,
                           GenerationClient& judge_client) {
  GenerationRequest request;
  request.system_text = std::string(prompts::direct_judge().system_text);
  request.user_text =
      prompts::render(prompts::direct_judge(),
                      {{"constraint", constraint.description},
                       {"response", std::string(response)}});
  if (image) request.attachments.push_back(*image);
  return decide(judge_client.generate(request));
}

std::string ControlResponseCache::key(std::string_view item_id,
                                      std::string_view constraint_description) {
  return std::string(item_id) + "#" + fnv1a64_hex(constraint_description);
}

void ControlResponseCache::preload(const std::string& key, std::string control) {
  std::promise<std::string> promise;
  promise.set_value(std::move(control));
  std::lock_guard<std::mutex> lock(mu_);
  entries_[key] = promise.get_future().share();
}

bool ControlResponseCache::contains(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.count(key) > 0;
}

std::string ControlResponseCache::get_or_generate(
    const std::string& key, const std::function<std::string()>& make) {
  std::shared_future<std::string> future;
  std::promise<std::string> promise;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      entries_[key] = future;
      owner = true;
    }
  }
  if (owner) {
    try {
      promise.set_value(make());
    } catch (...) {
      promise.set_exception(std::current_exception());
      std::lock_guard<std::mutex> lock(mu_);
      entries_.erase(key);  // a failed generation must not poison later runs
    }
  }
  return future.get();
}

JudgeDecision compare_judge(const taxonomy::ConstraintSpec& constraint,
                            const evalrun::BenchmarkItem& item,
                            std::string_view response_a,
                            GenerationClient& judge_client,
                            GenerationClient* model_client,
                            ControlResponseCache& cache) {
  std::string key = ControlResponseCache::key(item.id, constraint.description);
  if (!cache.contains(key) && model_client == nullptr) {
    throw EvalError("control-response unavailable for item '" + item.id +
                    "': no model client and no recorded control");
  }

  // Ablated prompt: the item prompt with this one constraint removed.
  std::vector<taxonomy::ConstraintSpec> remaining;
  bool removed = false;
  for (const auto& c : item.constraints) {
    if (!removed && c.description == constraint.description) {
      removed = true;
      continue;
    }
    remaining.push_back(c);
  }
  std::string ablated_prompt =
      evalrun::render_prompt(item.task_instruction, remaining);

  std::string response_b = cache.get_or_generate(key, [&]() {
    GenerationRequest request;
    request.user_text = ablated_prompt;
    if (item.image_ref) request.attachments.push_back(*item.image_ref);
    return model_client->generate(request);
  });

  GenerationRequest request;
  request.system_text = std::string(prompts::compare_judge().system_text);
  request.user_text =
      prompts::render(prompts::compare_judge(),
                      {{"constraint", constraint.description},
                       {"response_a", std::string(response_a)},
                       {"response_b", response_b}});
  if (item.image_ref) request.attachments.push_back(*item.image_ref);
  return decide(judge_client.generate(request));
}

}  // namespace mmif::judge
