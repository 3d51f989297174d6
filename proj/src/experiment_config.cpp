#include "nhc/experiment_config.hpp"

#include "nhc/tasks/task.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace nhc {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("invalid value '" + value + "' for " + key);
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("invalid boolean '" + value + "' for " + key);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "task") task = value;
  else if (key == "variant") variant = value;
  else if (key == "ablation") ablation = parse_ablation(value);
  else if (key == "seed") nes.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "population") nes.population = parse_number<int>(key, value);
  else if (key == "alpha") nes.alpha = parse_number<double>(key, value);
  else if (key == "sigma") nes.sigma = parse_number<double>(key, value);
  else if (key == "lambda") nes.lambda = parse_number<double>(key, value);
  else if (key == "max_iterations") nes.max_iterations = parse_number<int>(key, value);
  else if (key == "restart_iterations") nes.restart_iterations = parse_number<int>(key, value);
  else if (key == "batch_size") curriculum.batch_size = parse_number<int>(key, value);
  else if (key == "perfect_iterations") curriculum.perfect_iterations = parse_number<int>(key, value);
  else if (key == "bad_memories") curriculum.bad_memory_capacity = parse_number<int>(key, value);
  else if (key == "margin") curriculum.margin = parse_number<double>(key, value);
  else if (key == "top_level") curriculum.top_level = parse_number<int>(key, value);
  else if (key == "controller_size") controller_size = parse_number<int>(key, value);
  else if (key == "control_word") control_word = parse_number<int>(key, value);
  else if (key == "memory_size") memory_size = parse_number<Location>(key, value);
  else if (key == "output_dir") output_dir = value;
  else if (key == "workers") workers = parse_number<int>(key, value);
  else if (key == "wall_clock") wall_clock = parse_bool(key, value);
  else if (key == "verbose") verbose = parse_bool(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

std::map<std::string, std::string> ExperimentConfig::entries() const {
  std::map<std::string, std::string> e{
      {"task", task},
      {"variant", variant},
      {"ablation", ablation_name(ablation)},
      {"seed", std::to_string(nes.seed)},
      {"population", std::to_string(nes.population)},
      {"alpha", format_double(nes.alpha)},
      {"sigma", format_double(nes.sigma)},
      {"lambda", format_double(nes.lambda)},
      {"max_iterations", std::to_string(nes.max_iterations)},
      {"restart_iterations", std::to_string(nes.restart_iterations)},
      {"batch_size", std::to_string(curriculum.batch_size)},
      {"perfect_iterations", std::to_string(curriculum.perfect_iterations)},
      {"bad_memories", std::to_string(curriculum.bad_memory_capacity)},
      {"margin", format_double(curriculum.margin)},
      {"top_level", std::to_string(curriculum.top_level)},
      {"output_dir", output_dir},
      {"workers", std::to_string(workers)},
      {"wall_clock", wall_clock ? "true" : "false"},
      {"verbose", verbose ? "true" : "false"},
  };
  if (controller_size) e["controller_size"] = std::to_string(*controller_size);
  if (control_word) e["control_word"] = std::to_string(*control_word);
  if (memory_size) e["memory_size"] = std::to_string(*memory_size);
  return e;
}

void ExperimentConfig::validate() const {
  nes.validate();
  if (curriculum.batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (curriculum.perfect_iterations < 1) throw ConfigError("perfect_iterations must be >= 1");
  if (curriculum.bad_memory_capacity < 0) throw ConfigError("bad_memories must be >= 0");
  if (curriculum.margin <= 0.0) throw ConfigError("margin must be > 0");
  if (curriculum.top_level < 1 || curriculum.top_level > kMixedLevel)
    throw ConfigError("top_level must be in [1, 11]");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key = value");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

ArchitectureConfig resolve_architecture(const ExperimentConfig& cfg, const Task& task) {
  ArchitectureConfig arch = apply_ablation(task.architecture(), cfg.ablation);
  if (cfg.controller_size) arch.controller_size = *cfg.controller_size;
  if (cfg.control_word) arch.control_word = *cfg.control_word;
  if (cfg.memory_size) arch.memory_size = *cfg.memory_size;
  arch.validate();
  return arch;
}

}  // namespace nhc
