#include "nhc/trainer.hpp"

#include "nhc/parallel.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace nhc {
namespace {

void write_levels_csv(const std::string& path, const CurriculumState& c) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << "level,iterations,learning_iterations\n";
  for (const auto& r : c.log)
    out << r.level << ',' << r.iterations << ',' << r.learning_iterations << '\n';
}

/// Drops metric rows written after the checkpoint being resumed from.
void truncate_metrics(const std::string& path, long last_iteration) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot resume: missing '" + path + "'");
  std::string line, kept;
  std::getline(in, line);
  kept = line + '\n';
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (std::stol(line.substr(0, line.find(','))) > last_iteration) break;
    kept += line + '\n';
  }
  in.close();
  std::ofstream(path, std::ios::trunc) << kept;
}

void restart_run(TrainingState& s, const ExperimentConfig& cfg) {
  s.theta = initial_genome(genome_size(s.arch), s.rng);
  std::vector<LevelRecord> log = std::move(s.curriculum.log);
  s.curriculum = initial_curriculum(cfg.curriculum);
  log.push_back(LevelRecord{});
  s.curriculum.log = std::move(log);
  s.bad.clear();
  s.monitor.reset();
  ++s.restarts;
}

}  // namespace

SampleFitness evaluate_sample(const Parameters<double>& params, const ArchitectureConfig& arch,
                              const Task& task, const TaskSample& sample, double m_max) {
  auto module = task.make_module(sample);
  EpisodeOptions options;
  options.stop_on_mismatch = &sample.oracle;
  const EpisodeTrace trace = run_episode(params, arch, *module, sample.t_max(), options);
  return sample_fitness(trace, sample.oracle, m_max);
}

std::vector<TaskSample> generate_samples(const Task& task, std::span<const SampleKey> keys,
                                         unsigned workers) {
  std::vector<TaskSample> samples(keys.size());
  parallel_for(keys.size(), workers,
               [&](std::size_t i) { samples[i] = task.generate(keys[i].level, keys[i].seed); });
  return samples;
}

std::string metrics_csv_header() {
  return "iteration,level,best_fitness,mean_fitness,learning_triggered,restarts,wall_ms";
}

std::string metrics_csv_row(const IterationMetrics& m) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%ld,%d,%.9f,%.9f,%d,%d,%ld", m.iteration, m.level,
                m.best_fitness, m.mean_fitness, m.learning_triggered ? 1 : 0, m.restarts,
                m.wall_ms);
  return buf;
}

TrainingState fresh_training_state(const ExperimentConfig& cfg, const ArchitectureConfig& arch) {
  TrainingState s;
  s.arch = arch;
  s.rng.seed(cfg.nes.seed);
  s.theta = initial_genome(genome_size(arch), s.rng);
  s.curriculum = initial_curriculum(cfg.curriculum);
  s.bad = BadMemories(static_cast<std::size_t>(cfg.curriculum.bad_memory_capacity));
  s.monitor = RestartMonitor(cfg.nes.restart_iterations);
  return s;
}

TrainResult run_train(const ExperimentConfig& cfg, const TrainOptions& options) {
  cfg.validate();
  const auto task = make_task(cfg.task, cfg.variant);
  const unsigned workers = resolve_workers(cfg.workers);

  std::filesystem::create_directories(cfg.output_dir);
  TrainResult result;
  result.checkpoint_path = (std::filesystem::path(cfg.output_dir) / "checkpoint.json").string();
  result.metrics_path = (std::filesystem::path(cfg.output_dir) / "metrics.csv").string();
  result.levels_path = (std::filesystem::path(cfg.output_dir) / "levels.csv").string();

  TrainingState s;
  if (options.resume) {
    Checkpoint c = load_checkpoint(result.checkpoint_path);
    if (c.trace_convention != kTraceConvention)
      throw ConfigError("checkpoint targets trace convention '" + c.trace_convention + "'");
    if (c.config.task != cfg.task || c.config.variant != cfg.variant ||
        c.config.ablation != cfg.ablation || c.config.nes.seed != cfg.nes.seed)
      throw ConfigError("checkpoint was trained with a different task, variant, ablation or seed");
    s = std::move(c.state);
    truncate_metrics(result.metrics_path, s.iteration);
  } else {
    s = fresh_training_state(cfg, resolve_architecture(cfg, *task));
    std::ofstream(result.metrics_path, std::ios::trunc) << metrics_csv_header() << '\n';
  }
  std::ofstream metrics(result.metrics_path, std::ios::app);
  if (!metrics) throw ConfigError("cannot write '" + result.metrics_path + "'");

  auto save = [&]() {
    save_checkpoint(result.checkpoint_path, Checkpoint{cfg, s, kTraceConvention});
    write_levels_csv(result.levels_path, s.curriculum);
  };

  const auto start = std::chrono::steady_clock::now();
  const double m_max = cfg.curriculum.margin;
  const int population = cfg.nes.population;

  while (!s.curriculum.finished && s.iteration < cfg.nes.max_iterations) {
    const std::vector<SampleKey> keys =
        compose_minibatch(s.curriculum.level, cfg.curriculum.batch_size, s.rng, s.bad);
    const std::vector<TaskSample> samples = generate_samples(*task, keys, workers);
    const std::size_t n = samples.size();

    const Parameters<double> center = unpack(s.theta, s.arch);
    std::vector<SampleFitness> center_fit(n);
    parallel_for(n, workers, [&](std::size_t i) {
      center_fit[i] = evaluate_sample(center, s.arch, *task, samples[i], m_max);
    });
    std::vector<std::uint8_t> failed(n, 0);
    bool perfect = true;
    for (std::size_t i = 0; i < n; ++i)
      if (!center_fit[i].perfect()) failed[i] = 1, perfect = false;

    IterationMetrics m;
    m.iteration = s.iteration + 1;
    m.level = s.curriculum.level;
    bool restart = false;
    if (perfect) {
      // No update and no decay on perfect iterations.
      m.best_fitness = m.mean_fitness = batch_fitness(center_fit);
      s.monitor.reset();
    } else {
      const auto eps = sample_population(s.theta.size(), population, s.rng);
      std::vector<Parameters<double>> offspring;
      offspring.reserve(population);
      for (const auto& e : eps) offspring.push_back(unpack(Genome(s.theta + cfg.nes.sigma * e), s.arch));
      std::vector<SampleFitness> fit(static_cast<std::size_t>(population) * n);
      parallel_for(fit.size(), workers, [&](std::size_t k) {
        fit[k] = evaluate_sample(offspring[k / n], s.arch, *task, samples[k % n], m_max);
      });
      std::vector<double> offspring_fitness(population);
      for (int o = 0; o < population; ++o) {
        offspring_fitness[o] =
            batch_fitness(std::span<const SampleFitness>(fit.data() + o * n, n));
        for (std::size_t i = 0; i < n; ++i)
          if (!fit[o * n + i].perfect()) failed[i] = 1;
      }
      for (std::size_t i = 0; i < n; ++i)
        if (failed[i]) s.bad.push(keys[i]);

      const Eigen::VectorXd u = rank_transform(offspring_fitness);
      s.theta = nes_update(s.theta, eps, u, cfg.nes);
      ++s.learning_iterations;

      const Eigen::Map<const Eigen::VectorXd> f(offspring_fitness.data(), population);
      m.best_fitness = f.maxCoeff();
      m.mean_fitness = f.mean();
      m.learning_triggered = true;
      restart = s.monitor.observe(m.best_fitness);
    }

    ++s.iteration;
    const bool advanced = curriculum_advance(s.curriculum, cfg.curriculum, perfect, !perfect);
    if (advanced) s.monitor.reset();
    if (restart) restart_run(s, cfg);
    m.restarts = s.restarts;
    if (cfg.wall_clock)
      m.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    metrics << metrics_csv_row(m) << '\n';
    if (options.on_iteration) options.on_iteration(m);
    if (cfg.verbose && (advanced || restart || s.iteration % 500 == 0)) {
      std::cerr << "iteration " << s.iteration << " level " << s.curriculum.level
                << " learning " << s.learning_iterations << " restarts " << s.restarts
                << " best " << m.best_fitness << '\n';
    }
    if (advanced) {
      metrics.flush();
      save();
    }
  }
  metrics.flush();
  save();

  result.solved = s.curriculum.finished;
  result.iterations = s.iteration;
  result.learning_iterations = s.learning_iterations;
  result.restarts = s.restarts;
  result.level = s.curriculum.level;
  return result;
}

}  // namespace nhc
