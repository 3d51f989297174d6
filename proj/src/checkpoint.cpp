#include "nhc/checkpoint.hpp"

#include "nhc/tasks/task.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace nhc {
namespace {

using nlohmann::json;

json architecture_json(const ArchitectureConfig& a) {
  return {{"controller_size", a.controller_size},
          {"control_word", a.control_word},
          {"data_word", a.data_word},
          {"operations", a.operations},
          {"write_heads", a.write_heads},
          {"read_heads", a.read_heads},
          {"memory_size", a.memory_size},
          {"input_to_controller", a.input_to_controller},
          {"input_to_memory", a.input_to_memory},
          {"input_to_bus", a.input_to_bus},
          {"alu_feedback_width", a.alu_feedback_width},
          {"feedback_bus", a.feedback_bus},
          {"feedback_alu", a.feedback_alu},
          {"free_gates", a.free_gates},
          {"ancestry", a.ancestry},
          {"prev_update", a.prev_update}};
}

ArchitectureConfig architecture_from(const json& j) {
  ArchitectureConfig a;
  a.controller_size = j.at("controller_size");
  a.control_word = j.at("control_word");
  a.data_word = j.at("data_word");
  a.operations = j.at("operations");
  a.write_heads = j.at("write_heads");
  a.read_heads = j.at("read_heads");
  a.memory_size = j.at("memory_size");
  a.input_to_controller = j.at("input_to_controller");
  a.input_to_memory = j.at("input_to_memory");
  a.input_to_bus = j.at("input_to_bus");
  a.alu_feedback_width = j.at("alu_feedback_width");
  a.feedback_bus = j.at("feedback_bus");
  a.feedback_alu = j.at("feedback_alu");
  a.free_gates = j.at("free_gates");
  a.ancestry = j.at("ancestry");
  a.prev_update = j.at("prev_update");
  a.validate();
  return a;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& c) {
  const TrainingState& s = c.state;
  json j;
  j["format"] = "nhc-checkpoint";
  j["version"] = kCheckpointVersion;
  j["trace_convention"] = c.trace_convention;
  j["config"] = c.config.entries();
  j["architecture"] = architecture_json(s.arch);
  j["genome"] = std::vector<double>(s.theta.data(), s.theta.data() + s.theta.size());
  std::ostringstream rng;
  rng << s.rng;
  j["rng_state"] = rng.str();
  j["iteration"] = s.iteration;
  j["restarts"] = s.restarts;
  j["learning_iterations"] = s.learning_iterations;

  json log = json::array();
  for (const auto& r : s.curriculum.log)
    log.push_back({{"level", r.level},
                   {"iterations", r.iterations},
                   {"learning_iterations", r.learning_iterations}});
  j["curriculum"] = {{"level", s.curriculum.level},
                     {"consecutive_perfect", s.curriculum.consecutive_perfect},
                     {"required_perfect", s.curriculum.required_perfect},
                     {"learning_triggered_in_level", s.curriculum.learning_triggered_in_level},
                     {"finished", s.curriculum.finished},
                     {"log", log}};
  json bad = json::array();
  for (const auto& k : s.bad.items()) bad.push_back({k.seed, k.level});
  j["bad_memories"] = {{"capacity", s.bad.capacity()}, {"items", bad}};
  j["restart_monitor"] = {{"window", s.monitor.window()},
                          {"stale", s.monitor.stale()},
                          {"best", s.monitor.best()},
                          {"has_best", s.monitor.has_best()}};

  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ConfigError("cannot write checkpoint '" + path + "'");
    out << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, target);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open checkpoint '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed checkpoint '" + path + "': " + e.what());
  }
  if (j.value("format", "") != "nhc-checkpoint" || j.value("version", 0) != kCheckpointVersion)
    throw ConfigError("unsupported checkpoint format or version in '" + path + "'");

  Checkpoint c;
  try {
    c.trace_convention = j.at("trace_convention");
    for (const auto& [key, value] : j.at("config").items()) c.config.set(key, value);
    TrainingState& s = c.state;
    s.arch = architecture_from(j.at("architecture"));
    const auto genome = j.at("genome").get<std::vector<double>>();
    s.theta = Eigen::Map<const Eigen::VectorXd>(genome.data(), static_cast<Eigen::Index>(genome.size()));
    if (s.theta.size() != genome_size(s.arch))
      throw ConfigError("checkpoint genome size does not match its architecture");
    std::istringstream rng(j.at("rng_state").get<std::string>());
    rng >> s.rng;
    s.iteration = j.at("iteration");
    s.restarts = j.at("restarts");
    s.learning_iterations = j.at("learning_iterations");

    const json& cur = j.at("curriculum");
    s.curriculum.level = cur.at("level");
    s.curriculum.consecutive_perfect = cur.at("consecutive_perfect");
    s.curriculum.required_perfect = cur.at("required_perfect");
    s.curriculum.learning_triggered_in_level = cur.at("learning_triggered_in_level");
    s.curriculum.finished = cur.at("finished");
    s.curriculum.log.clear();
    for (const auto& r : cur.at("log"))
      s.curriculum.log.push_back({r.at("level"), r.at("iterations"), r.at("learning_iterations")});

    const json& bad = j.at("bad_memories");
    s.bad = BadMemories(bad.at("capacity").get<std::size_t>());
    for (const auto& k : bad.at("items")) s.bad.push({k.at(0).get<std::uint64_t>(), k.at(1).get<int>()});

    const json& mon = j.at("restart_monitor");
    s.monitor = RestartMonitor(mon.at("window"));
    s.monitor.restore(mon.at("stale"), mon.at("best"), mon.at("has_best"));
  } catch (const json::exception& e) {
    throw ConfigError("malformed checkpoint '" + path + "': " + e.what());
  }
  return c;
}

}  // namespace nhc
