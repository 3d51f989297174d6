// nhc: train, evaluate, transfer, self-test and trace the Neural Harvard Computer.

#include "nhc/checkpoint.hpp"
#include "nhc/evaluation.hpp"
#include "nhc/experiment_config.hpp"
#include "nhc/parallel.hpp"
#include "nhc/selftest.hpp"
#include "nhc/trainer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace nhc;

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

void print_report(const EvalReport& r) {
  std::cout << report_csv(r);
  std::cout << "errors: " << r.errors() << '\n';
}

int run_trace(const std::string& checkpoint_path, const std::string& task_name,
              const std::string& variant, int level, std::uint64_t sample_seed,
              std::uint64_t genome_seed) {
  Genome theta;
  ArchitectureConfig arch;
  std::unique_ptr<Task> task;
  if (!checkpoint_path.empty()) {
    const Checkpoint c = load_checkpoint(checkpoint_path);
    task = make_task(task_name.empty() ? c.config.task : task_name, variant);
    arch = adapt_architecture(c.state.arch, *task);
    theta = c.state.theta;
  } else {
    task = make_task(task_name.empty() ? "copy" : task_name, variant);
    arch = task->architecture();
    std::mt19937_64 rng(genome_seed);
    theta = initial_genome(genome_size(arch), rng);
  }
  const TaskSample sample = task->generate(level, sample_seed);
  auto module = task->make_module(sample);
  EpisodeOptions options;
  options.record_heads = true;
  const EpisodeTrace trace = run_episode(unpack(theta, arch), arch, *module, sample.t_max(), options);
  const auto ops = task->operation_names();
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const StepRecord& s = trace.steps[k];
    const HeadRecord& h = *s.heads;
    std::vector<std::string> modes;
    for (int m : h.read_mode) {
      const ReadMode mode = decode_read_mode(m, arch.read_heads, arch.write_heads, arch.ancestry);
      modes.push_back(read_mode_name(mode.kind) + std::to_string(mode.head + 1));
    }
    nlohmann::json line{{"step", k + 1},
                        {"write", h.write},
                        {"read", h.read},
                        {"read_mode", modes},
                        {"free_write", h.free_write},
                        {"free_read", h.free_read},
                        {"prev_gate", h.prev_gate},
                        {"operation", ops[s.operation]},
                        {"expected_operation", ops[sample.oracle[k].operation]},
                        {"data_correct", s.memory_data == sample.oracle[k].data}};
    std::cout << line.dump() << '\n';
  }
  const SampleFitness f = sample_fitness(trace, sample.oracle, CurriculumConfig{}.margin);
  std::cout << nlohmann::json{{"t_max", sample.t_max()},
                              {"fitness", f.fitness},
                              {"correct_steps", f.correct_steps},
                              {"halted", trace.halted},
                              {"memory_full", trace.memory_full}}
                   .dump()
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neural Harvard Computer trained with natural evolution strategies"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "train a task with NES and the curriculum");
  std::string config_path;
  std::vector<std::string> overrides;
  bool resume = false;
  train->add_option("-c,--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  train->add_option("-s,--set", overrides, "override a config key (key=value)")->take_all();
  train->add_flag("--resume", resume, "continue from <output_dir>/checkpoint.json");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint at given levels");
  std::string checkpoint;
  std::string eval_task, eval_variant = "default";
  std::vector<int> levels{100, 500, 1000};
  int samples = 0;
  std::uint64_t eval_seed = 12345;
  std::string out_prefix;
  int workers = 0;
  eval->add_option("checkpoint", checkpoint, "checkpoint file")->required()->check(CLI::ExistingFile);
  eval->add_option("--task", eval_task, "task (default: the checkpoint's)");
  eval->add_option("--variant", eval_variant, "data variant");
  eval->add_option("--levels", levels, "levels to test")->delimiter(',');
  eval->add_option("--samples", samples, "samples per level (0: 50, 20 for large sort)");
  eval->add_option("--seed", eval_seed, "sample seed");
  eval->add_option("-o,--out", out_prefix, "write <out>.json and <out>.csv");
  eval->add_option("--workers", workers, "worker threads");

  // transfer
  auto* transfer = app.add_subcommand("transfer", "replay curriculum levels 1-11 on a variant");
  std::string variant;
  int transfer_samples = 50;
  transfer->add_option("checkpoint", checkpoint, "checkpoint file")->required()->check(CLI::ExistingFile);
  transfer->add_option("--variant", variant, "data variant")->required();
  transfer->add_option("--task", eval_task, "task (default: the checkpoint's)");
  transfer->add_option("--samples", transfer_samples, "samples per level");
  transfer->add_option("--seed", eval_seed, "sample seed");
  transfer->add_option("-o,--out", out_prefix, "write <out>.json and <out>.csv");
  transfer->add_option("--workers", workers, "worker threads");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "run the oracle and property suites");
  std::string mutate;
  bool quick = false;
  selftest->add_option("--mutate", mutate, "corrupt an oracle to check detection (addition)");
  selftest->add_flag("--quick", quick, "smaller sample counts");

  // trace
  auto* trace = app.add_subcommand("trace", "print per-step head activity as JSON lines");
  std::string trace_task;
  int trace_level = 3;
  std::uint64_t trace_seed = 1, genome_seed = 1;
  trace->add_option("--checkpoint", checkpoint, "checkpoint file (default: random genome)");
  trace->add_option("--task", trace_task, "task");
  trace->add_option("--variant", eval_variant, "data variant");
  trace->add_option("--level", trace_level, "curriculum level");
  trace->add_option("--sample-seed", trace_seed, "sample seed");
  trace->add_option("--genome-seed", genome_seed, "seed of the random genome");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) {
      ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_experiment_config(config_path);
      for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
      }
      TrainOptions options;
      options.resume = resume;
      const TrainResult r = run_train(cfg, options);
      std::cout << "solved: " << (r.solved ? "yes" : "no") << '\n'
                << "iterations: " << r.iterations << '\n'
                << "learning iterations: " << r.learning_iterations << '\n'
                << "restarts: " << r.restarts << '\n'
                << "level: " << r.level << '\n'
                << "checkpoint: " << r.checkpoint_path << '\n';
      return 0;
    }
    if (*eval || *transfer) {
      const Checkpoint c = load_checkpoint(checkpoint);
      const std::string task = eval_task.empty() ? c.config.task : eval_task;
      const unsigned w = resolve_workers(workers);
      EvalReport report;
      if (*eval) {
        const auto t = make_task(task, eval_variant);
        report = evaluate_levels(c.state.theta, c.state.arch, *t, levels, samples, eval_seed, w);
      } else {
        report = run_transfer(c.state.theta, c.state.arch, task, variant, transfer_samples,
                              eval_seed, w);
      }
      print_report(report);
      if (!out_prefix.empty()) {
        write_file(out_prefix + ".json", report_json(report) + "\n");
        write_file(out_prefix + ".csv", report_csv(report));
      }
      return 0;
    }
    if (*selftest) {
      SelftestOptions options;
      options.mutate = mutate;
      options.quick = quick;
      return run_selftest(options, std::cout) ? 0 : 1;
    }
    if (*trace) return run_trace(checkpoint, trace_task, eval_variant, trace_level, trace_seed, genome_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
