#include "mmif/benchmark.hpp"

#include <sstream>

#include "mmif/errors.hpp"

namespace mmif::evalrun {

std::string_view to_string(Level level) {
  return level == Level::Compose ? "C" : "P";
}

Level level_from_string(std::string_view s) {
  if (s == "C" || s == "compose" || s == "Compose") return Level::Compose;
  if (s == "P" || s == "perception" || s == "Perception") return Level::Perception;
  throw ValidationError("unknown level: " + std::string(s));
}

std::string render_prompt(const std::string& instruction,
                          const std::vector<taxonomy::ConstraintSpec>& constraints) {
  if (constraints.empty()) return instruction;
  std::ostringstream os;
  os << instruction << "\n\nConstraints:\n";
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    os << (i + 1) << ". " << constraints[i].description << "\n";
  }
  return os.str();
}

std::string render_prompt(const BenchmarkItem& item) {
  return render_prompt(item.task_instruction, item.constraints);
}

void to_json(nlohmann::json& j, const BenchmarkItem& item) {
  j = nlohmann::json{{"id", item.id},
                     {"level", std::string(to_string(item.level))},
                     {"instruction", item.task_instruction},
                     {"constraints", item.constraints}};
  if (item.image_ref) j["image"] = *item.image_ref;
}

}  // namespace mmif::evalrun
