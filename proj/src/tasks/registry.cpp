#include "nhc/tasks/task.hpp"
#include "tasks/factories.hpp"

namespace nhc {

std::unique_ptr<Task> make_task(const std::string& name, const std::string& variant) {
  using Factory = std::unique_ptr<Task> (*)(const std::string&, const std::string&);
  for (Factory f : {make_copy_task, make_addition_task, make_sort_task, make_arithmetic_task,
                    make_search_task})
    if (auto task = f(name, variant)) return task;
  throw ConfigError("unknown task '" + name + "'");
}

std::vector<std::string> task_names() {
  return {"search", "search+", "plan",    "plan+",      "addition",  "sort",
          "arithmetic", "copy", "repeatCopy", "reverse", "duplicated"};
}

std::vector<std::string> task_variants(const std::string& name) {
  if (name == "search" || name == "search+" || name == "plan" || name == "plan+")
    return {"default", "sokoban8", "recoded", "sliding"};
  if (name == "arithmetic") return {"default", "boolean"};
  make_task(name);  // throws for unknown names
  return {"default", "decimal"};
}

}  // namespace nhc
