#include "nhc/evaluation.hpp"

#include "nhc/parallel.hpp"
#include "nhc/trainer.hpp"

#include <json.hpp>

#include <numeric>
#include <sstream>

namespace nhc {

int EvalReport::errors() const {
  int e = 0;
  for (const auto& l : levels) e += l.samples - l.solved;
  return e;
}

int default_samples_per_level(const std::string& task, int level) {
  return task == "sort" && level >= 500 ? 20 : 50;
}

ArchitectureConfig adapt_architecture(const ArchitectureConfig& arch, const Task& task) {
  const ArchitectureConfig want = task.architecture();
  auto require = [&](bool ok, const char* what) {
    if (!ok)
      throw InterfaceMismatch(std::string("genome does not fit ") + task.name() + "/" +
                              task.variant() + ": " + what + " differs");
  };
  require(arch.operations == want.operations, "operation count");
  require(arch.read_heads == want.read_heads, "read head count");
  require(arch.input_to_controller == want.input_to_controller, "controller input width");
  require(arch.input_to_memory == want.input_to_memory, "memory input width");
  require(arch.input_to_bus == want.input_to_bus, "bus input width");
  require(arch.feedback_bus == want.feedback_bus, "bus feedback");
  require(arch.feedback_alu == want.feedback_alu, "ALU feedback");
  require(!arch.feedback_alu || arch.alu_feedback_width == want.alu_feedback_width,
          "ALU feedback width");
  require(arch.free_gates == want.free_gates, "free gate setting");
  ArchitectureConfig adapted = arch;
  adapted.data_word = want.data_word;
  return adapted;
}

EvalReport evaluate_levels(const Genome& theta, const ArchitectureConfig& arch, const Task& task,
                           std::span<const int> levels, int samples_per_level,
                           std::uint64_t seed, unsigned workers) {
  const ArchitectureConfig run_arch = adapt_architecture(arch, task);
  const Parameters<double> params = unpack(theta, run_arch);
  EvalReport report{task.name(), task.variant(), {}};
  for (const int level : levels) {
    const int count =
        samples_per_level > 0 ? samples_per_level : default_samples_per_level(task.name(), level);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(level), 0x5eedu};
    std::mt19937_64 rng(seq);
    std::vector<SampleKey> keys(count);
    for (auto& k : keys) k = {rng(), level};

    std::vector<std::uint8_t> solved(count, 0);
    std::vector<long> steps(count, 0);
    parallel_for(keys.size(), workers, [&](std::size_t i) {
      const TaskSample sample = task.generate(keys[i].level, keys[i].seed);
      steps[i] = static_cast<long>(sample.t_max());
      solved[i] = evaluate_sample(params, run_arch, task, sample, 0.1).perfect() ? 1 : 0;
    });
    LevelResult r;
    r.level = level;
    r.samples = count;
    r.solved = std::accumulate(solved.begin(), solved.end(), 0);
    r.steps = std::accumulate(steps.begin(), steps.end(), 0L);
    report.levels.push_back(r);
  }
  return report;
}

EvalReport run_transfer(const Genome& theta, const ArchitectureConfig& arch,
                        const std::string& task, const std::string& variant,
                        int samples_per_level, std::uint64_t seed, unsigned workers) {
  const auto target = make_task(task, variant);
  std::vector<int> levels(kMixedLevel);
  std::iota(levels.begin(), levels.end(), 1);
  return evaluate_levels(theta, arch, *target, levels, samples_per_level, seed, workers);
}

std::string report_json(const EvalReport& report) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : report.levels)
    levels.push_back({{"level", l.level},
                      {"samples", l.samples},
                      {"solved", l.solved},
                      {"percent", l.percent()},
                      {"steps", l.steps}});
  nlohmann::json j{{"task", report.task},
                   {"variant", report.variant},
                   {"errors", report.errors()},
                   {"levels", levels}};
  return j.dump(2);
}

std::string report_csv(const EvalReport& report) {
  std::ostringstream os;
  os << "task,variant,level,samples,solved,percent\n";
  for (const auto& l : report.levels) {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.1f", l.percent());
    os << report.task << ',' << report.variant << ',' << l.level << ',' << l.samples << ','
       << l.solved << ',' << pct << '\n';
  }
  return os.str();
}

}  // namespace nhc
