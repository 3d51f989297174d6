#pragma once

#include "nhc/tasks/task.hpp"

namespace nhc {

// Each returns nullptr when `name` is not one of its tasks.
std::unique_ptr<Task> make_copy_task(const std::string& name, const std::string& variant);
std::unique_ptr<Task> make_addition_task(const std::string& name, const std::string& variant);
std::unique_ptr<Task> make_sort_task(const std::string& name, const std::string& variant);
std::unique_ptr<Task> make_arithmetic_task(const std::string& name, const std::string& variant);
std::unique_ptr<Task> make_search_task(const std::string& name, const std::string& variant);

}  // namespace nhc
