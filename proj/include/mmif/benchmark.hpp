#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmif/constraint.hpp"
#include "mmif/taxonomy.hpp"

namespace mmif::evalrun {

enum class Level { Compose, Perception };

std::string_view to_string(Level level);
Level level_from_string(std::string_view s);

/// One benchmark question: a task instruction plus an ordered constraint
/// list. Perception items are tied to an image and must carry a reference.
struct BenchmarkItem {
  std::string id;
  Level level = Level::Compose;
  std::optional<std::string> image_ref;
  std::string task_instruction;
  std::vector<taxonomy::ConstraintSpec> constraints;
};

/// The full prompt sent to a model under test: the instruction followed by
/// the numbered constraint list (or the bare instruction when there are
/// none). Ablations re-render from the surviving constraints.
std::string render_prompt(const std::string& instruction,
                          const std::vector<taxonomy::ConstraintSpec>& constraints);
std::string render_prompt(const BenchmarkItem& item);

void to_json(nlohmann::json& j, const BenchmarkItem& item);

}  // namespace mmif::evalrun
