#include "nhc/checkpoint.hpp"
#include "nhc/evaluation.hpp"
#include "nhc/experiment_config.hpp"
#include "nhc/parallel.hpp"
#include "nhc/trainer.hpp"
#include "support.hpp"

#include <doctest.h>

#include <atomic>
#include <fstream>

using namespace nhc;

namespace {

ExperimentConfig small_run(const std::string& dir, int iterations) {
  ExperimentConfig cfg;
  cfg.output_dir = dir;
  cfg.nes.max_iterations = iterations;
  cfg.nes.restart_iterations = 15;
  cfg.curriculum.perfect_iterations = 4;
  cfg.nes.seed = 3;
  return cfg;
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("experiment config") {
  SUBCASE("keys round-trip through set and entries") {
    ExperimentConfig cfg;
    cfg.set("task", "reverse");
    cfg.set("population", "12");
    cfg.set("sigma", "0.05");
    cfg.set("ablation", "anc");
    cfg.set("controller_size", "8");
    const auto e = cfg.entries();
    CHECK(e.at("task") == "reverse");
    CHECK(e.at("population") == "12");
    CHECK(e.at("sigma") == "0.050000000000000003");
    CHECK(e.at("ablation") == "anc");
    CHECK(e.at("controller_size") == "8");
  }
  SUBCASE("bad keys and values are rejected") {
    ExperimentConfig cfg;
    CHECK_THROWS_AS(cfg.set("populaton", "3"), ConfigError);
    CHECK_THROWS_AS(cfg.set("population", "3x"), ConfigError);
    CHECK_THROWS_AS(cfg.set("verbose", "maybe"), ConfigError);
    CHECK_THROWS_AS(cfg.set("ablation", "none-at-all"), ConfigError);
    cfg.set("population", "1");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SUBCASE("file with comments") {
    test::TempDir dir("config");
    std::ofstream(dir / "run.cfg") << "# copy run\ntask = copy\n\nseed = 9  # inline\nmargin=0.2\n";
    const ExperimentConfig cfg = load_experiment_config(dir / "run.cfg");
    CHECK(cfg.task == "copy");
    CHECK(cfg.nes.seed == 9);
    CHECK(cfg.curriculum.margin == 0.2);
    std::ofstream(dir / "bad.cfg") << "task copy\n";
    CHECK_THROWS_AS(load_experiment_config(dir / "bad.cfg"), ConfigError);
    CHECK_THROWS_AS(load_experiment_config(dir / "missing.cfg"), ConfigError);
  }
  SUBCASE("architecture overrides and ablations") {
    ExperimentConfig cfg;
    cfg.ablation = Ablation::NoPrevUpdate;
    cfg.controller_size = 9;
    const ArchitectureConfig arch = resolve_architecture(cfg, *make_task("copy"));
    CHECK(arch.controller_size == 9);
    CHECK(arch.write_heads == 2);
    CHECK_FALSE(arch.prev_update);
  }
}

TEST_CASE("worker pool") {
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
  std::vector<int> hits(500, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("checkpoints") {
  test::TempDir dir("ckpt");
  ExperimentConfig cfg;
  cfg.task = "addition";
  cfg.nes.seed = 77;
  const ArchitectureConfig arch = resolve_architecture(cfg, *make_task("addition"));
  TrainingState s = fresh_training_state(cfg, arch);
  s.rng.discard(1234);
  s.curriculum.level = 4;
  s.curriculum.log.push_back({4, 10, 3});
  s.bad.push({99, 2});
  s.monitor.restore(17, 1.25, true);
  s.iteration = 321;
  s.restarts = 1;
  s.learning_iterations = 45;
  save_checkpoint(dir / "c.json", Checkpoint{cfg, s, kTraceConvention});

  SUBCASE("round trip") {
    const Checkpoint c = load_checkpoint(dir / "c.json");
    CHECK(c.trace_convention == kTraceConvention);
    CHECK(c.config.task == "addition");
    CHECK(c.config.nes.seed == 77);
    CHECK(c.state.theta == s.theta);
    CHECK(c.state.rng == s.rng);
    CHECK(c.state.curriculum.level == 4);
    CHECK(c.state.curriculum.log.size() == 2);
    CHECK(c.state.bad.items().front() == SampleKey{99, 2});
    CHECK(c.state.monitor.stale() == 17);
    CHECK(c.state.monitor.best() == 1.25);
    CHECK(c.state.iteration == 321);
    CHECK(c.state.restarts == 1);
    CHECK(c.state.learning_iterations == 45);
    CHECK(genome_size(c.state.arch) == genome_size(arch));
  }
  SUBCASE("corrupt files are rejected") {
    std::ofstream(dir / "broken.json") << "{\"format\": \"something-else\"}";
    CHECK_THROWS_AS(load_checkpoint(dir / "broken.json"), ConfigError);
    CHECK_THROWS_AS(load_checkpoint(dir / "nothing.json"), ConfigError);
    std::string text = test::slurp(dir / "c.json");
    const auto at = text.find("\"version\": 1");
    REQUIRE(at != std::string::npos);
    text.replace(at, 12, "\"version\": 99");
    std::ofstream(dir / "future.json") << text;
    CHECK_THROWS_AS(load_checkpoint(dir / "future.json"), ConfigError);
  }
}

TEST_CASE("training loop") {
  SUBCASE("one iteration writes one row and a checkpoint") {
    test::TempDir dir("one");
    const TrainResult r = run_train(small_run(dir.str(), 1));
    CHECK(r.iterations == 1);
    CHECK(count_lines(test::slurp(r.metrics_path)) == 2);
    CHECK(std::filesystem::exists(r.checkpoint_path));
    CHECK(std::filesystem::exists(r.levels_path));
  }
  SUBCASE("metrics header") {
    CHECK(metrics_csv_header() ==
          "iteration,level,best_fitness,mean_fitness,learning_triggered,restarts,wall_ms");
  }
  SUBCASE("repeated runs are byte-identical") {
    test::TempDir a("det-a"), b("det-b");
    run_train(small_run(a.str(), 40));
    ExperimentConfig other = small_run(b.str(), 40);
    other.workers = 3;
    run_train(other);
    CHECK(test::slurp(a / "metrics.csv") == test::slurp(b / "metrics.csv"));
    CHECK(test::slurp(a / "checkpoint.json").size() > 0);
  }
  SUBCASE("a resumed run equals an uninterrupted one") {
    test::TempDir full("full"), split("split");
    run_train(small_run(full.str(), 60));
    run_train(small_run(split.str(), 25));
    TrainOptions resume;
    resume.resume = true;
    run_train(small_run(split.str(), 60), resume);
    CHECK(test::slurp(full / "metrics.csv") == test::slurp(split / "metrics.csv"));
    CHECK(test::slurp(full / "levels.csv") == test::slurp(split / "levels.csv"));
    const Checkpoint a = load_checkpoint(full / "checkpoint.json");
    const Checkpoint b = load_checkpoint(split / "checkpoint.json");
    CHECK(a.state.theta == b.state.theta);
  }
  SUBCASE("resuming with a different seed is refused") {
    test::TempDir dir("refuse");
    run_train(small_run(dir.str(), 2));
    ExperimentConfig other = small_run(dir.str(), 4);
    other.nes.seed = 4;
    TrainOptions resume;
    resume.resume = true;
    CHECK_THROWS_AS(run_train(other, resume), ConfigError);
  }
  SUBCASE("perfect iterations leave the genome untouched") {
    test::TempDir dir("perfect");
    ExperimentConfig cfg = small_run(dir.str(), 30);
    cfg.curriculum.perfect_iterations = 1000;
    const ArchitectureConfig arch = resolve_architecture(cfg, *make_task("copy"));
    TrainingState s = fresh_training_state(cfg, arch);
    s.theta = pack(test::hand_copy_parameters(arch), arch);
    const Genome hand = s.theta;
    save_checkpoint(dir / "checkpoint.json", Checkpoint{cfg, s, kTraceConvention});
    std::ofstream(dir / "metrics.csv") << metrics_csv_header() << '\n';

    int rows = 0;
    TrainOptions options;
    options.resume = true;
    options.on_iteration = [&](const IterationMetrics& m) {
      ++rows;
      CHECK_FALSE(m.learning_triggered);
      CHECK(m.best_fitness == 2.0);
    };
    const TrainResult r = run_train(cfg, options);
    CHECK(rows == 30);
    CHECK(r.learning_iterations == 0);
    CHECK(load_checkpoint(dir / "checkpoint.json").state.theta == hand);
  }
  SUBCASE("the hand genome climbs the whole curriculum") {
    test::TempDir dir("climb");
    ExperimentConfig cfg = small_run(dir.str(), 200);
    cfg.curriculum.perfect_iterations = 3;
    const ArchitectureConfig arch = resolve_architecture(cfg, *make_task("copy"));
    TrainingState s = fresh_training_state(cfg, arch);
    s.theta = pack(test::hand_copy_parameters(arch), arch);
    save_checkpoint(dir / "checkpoint.json", Checkpoint{cfg, s, kTraceConvention});
    std::ofstream(dir / "metrics.csv") << metrics_csv_header() << '\n';
    TrainOptions options;
    options.resume = true;
    const TrainResult r = run_train(cfg, options);
    CHECK(r.solved);
    CHECK(r.iterations == 33);
    CHECK(count_lines(test::slurp(r.levels_path)) == 12);
  }
}

TEST_CASE("evaluation") {
  const auto copy = make_task("copy");
  const ArchitectureConfig arch = copy->architecture();
  std::mt19937_64 rng(1);
  const Genome random = initial_genome(genome_size(arch), rng);

  SUBCASE("three levels give three rows") {
    const std::vector<int> levels{100, 500, 1000};
    const EvalReport r = evaluate_levels(random, arch, *copy, levels, 5, 1, 1);
    REQUIRE(r.levels.size() == 3);
    CHECK(count_lines(report_csv(r)) == 4);
    CHECK(r.levels[0].percent() < 100.0);
    CHECK(report_json(r).find("\"levels\"") != std::string::npos);
  }
  SUBCASE("evaluation never changes the genome") {
    const Genome before = random;
    const std::vector<int> levels{3};
    evaluate_levels(random, arch, *copy, levels, 5, 1, 2);
    CHECK(random == before);
  }
  SUBCASE("the hand genome generalizes") {
    const Genome hand = pack(test::hand_copy_parameters(arch), arch);
    const std::vector<int> levels{100, 1000};
    const EvalReport r = evaluate_levels(hand, arch, *copy, levels, 10, 3, 2);
    CHECK(r.errors() == 0);
    const EvalReport t = run_transfer(hand, arch, "copy", "decimal", 10, 3, 2);
    CHECK(t.levels.size() == 11);
    CHECK(t.errors() == 0);
  }
  SUBCASE("mismatched interfaces are refused") {
    CHECK_THROWS_AS(adapt_architecture(arch, *make_task("sort")), InterfaceMismatch);
    CHECK_THROWS_AS(run_transfer(random, arch, "copy", "sliding", 5, 1, 1), ConfigError);
    const ArchitectureConfig decimal = adapt_architecture(arch, *make_task("copy", "decimal"));
    CHECK(decimal.data_word == 60);
  }
  SUBCASE("default sample counts") {
    CHECK(default_samples_per_level("copy", 1000) == 50);
    CHECK(default_samples_per_level("sort", 100) == 50);
    CHECK(default_samples_per_level("sort", 500) == 20);
  }
}
