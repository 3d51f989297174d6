#include "nhc/selftest.hpp"

#include "nhc/nes.hpp"
#include "nhc/reference.hpp"
#include "nhc/tasks/grid_worlds.hpp"
#include "nhc/tasks/task.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

namespace nhc::suites {
namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SuiteResult finish(std::string name, std::size_t failures, std::string first, const Stopwatch& w,
                   const std::string& summary) {
  SuiteResult r;
  r.name = std::move(name);
  r.passed = failures == 0;
  r.detail = failures == 0 ? summary : std::to_string(failures) + " mismatches; first: " + first;
  r.seconds = w.seconds();
  return r;
}

Eigen::VectorXd random_ints(std::mt19937_64& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  Eigen::VectorXd v(n);
  for (int k = 0; k < n; ++k) v(k) = d(rng);
  return v;
}

bool bit(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

SuiteResult memory_oracle(int sequences, int operations, std::uint64_t seed) {
  Stopwatch watch;
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  std::string first;
  const int cw = 3, dw = 2;
  for (int seq = 0; seq < sequences; ++seq) {
    const int hw = std::uniform_int_distribution<int>(1, 2)(rng);
    const int hr = std::uniform_int_distribution<int>(1, 3)(rng);
    const bool ancestry = bit(rng, 0.8);
    MemoryState<double> mem(static_cast<Location>(operations) * hw + 1, cw, dw, hw, hr);
    reference::LinkedMemory ref(hw, hr, cw, dw);
    const int modes = read_mode_count(hr, hw, ancestry);
    auto fail = [&](int op, const std::string& why) {
      if (failures++ == 0) first = "sequence " + std::to_string(seq) + " op " + std::to_string(op) + ": " + why;
    };

    for (int op = 0; op < operations; ++op) {
      const double kind = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      if (kind < 0.45) {
        // Previous-location update followed by a write.
        std::vector<std::uint8_t> gates(hr);
        std::vector<bool> ref_gates(hr);
        std::vector<Eigen::VectorXd> values, erases;
        for (int j = 0; j < hr; ++j) {
          gates[j] = bit(rng, 0.3);
          ref_gates[j] = gates[j] != 0;
          values.push_back(random_ints(rng, cw, -1, 1));
          erases.push_back(random_ints(rng, cw, 0, 1));
        }
        update_previous(mem, gates, values, erases);
        ref.update_previous(ref_gates, values, erases);

        std::vector<Eigen::VectorXd> words;
        std::vector<std::uint8_t> free_write(hw);
        std::vector<bool> ref_free(hw);
        for (int i = 0; i < hw; ++i) {
          words.push_back(random_ints(rng, cw, -3, 3));
          free_write[i] = bit(rng, 0.15);
          ref_free[i] = free_write[i] != 0;
        }
        const Eigen::VectorXd data = random_ints(rng, dw, 0, 9);
        write_step(mem, words, free_write, data);
        ref.write(words, ref_free, data);
      } else {
        // Read with random modes; "free" operations release every read location.
        const bool free_all = kind > 0.85;
        std::vector<ReadMode> chosen;
        std::vector<std::uint8_t> free_read(hr);
        std::vector<bool> ref_free(hr);
        for (int j = 0; j < hr; ++j) {
          chosen.push_back(decode_read_mode(std::uniform_int_distribution<int>(0, modes - 1)(rng), hr, hw, ancestry));
          free_read[j] = free_all || bit(rng, 0.1);
          ref_free[j] = free_read[j] != 0;
        }
        std::vector<Location> targets(hr);
        for (int j = 0; j < hr; ++j) targets[j] = resolve_read(mem, j, chosen[j]);
        const std::vector<Location> expected = ref.targets(chosen);
        if (targets != expected) {
          fail(op, "read targets differ");
          break;
        }
        const Readout<double> got = read_step(mem, targets, free_read);
        const auto [want_c, want_d] = ref.read(expected, ref_free);
        if (got.control != want_c || got.data != want_d) {
          fail(op, "readout differs");
          break;
        }
      }
      if (auto why = reference::compare_memory(mem, ref)) {
        fail(op, *why);
        break;
      }
    }
  }
  std::ostringstream s;
  s << sequences << " sequences x " << operations << " operations";
  return finish("memory oracle", failures, first, watch, s.str());
}

SuiteResult fitness_scorer(int traces, std::uint64_t seed, double tolerance) {
  Stopwatch watch;
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  std::string first;
  double worst = 0.0;
  const double m_max = 0.1;
  for (int n = 0; n < traces; ++n) {
    const int t_max = std::uniform_int_distribution<int>(1, 24)(rng);
    const int ops = std::uniform_int_distribution<int>(2, 5)(rng);
    OracleTrace oracle;
    for (int k = 0; k < t_max; ++k)
      oracle.push_back({random_ints(rng, 3, 0, 1), std::uniform_int_distribution<int>(0, ops - 1)(rng)});

    EpisodeTrace trace;
    std::vector<Eigen::VectorXd> data, bus;
    std::vector<int> chosen;
    const int length = bit(rng, 0.2) ? std::uniform_int_distribution<int>(0, t_max)(rng) : t_max;
    for (int k = 0; k < length; ++k) {
      StepRecord rec;
      rec.memory_data = oracle[k].data;
      rec.operation = oracle[k].operation;
      if (bit(rng, 0.05)) rec.memory_data(std::uniform_int_distribution<int>(0, 2)(rng)) += 1.0;
      if (bit(rng, 0.05)) rec.operation = (rec.operation + 1) % ops;
      rec.raw_bus = Eigen::VectorXd(ops);
      for (int o = 0; o < ops; ++o)
        rec.raw_bus(o) = std::uniform_real_distribution<double>(-1.0, 1.5)(rng);
      if (bit(rng, 0.1)) rec.raw_bus(1) = rec.raw_bus(0);  // ties
      if (bit(rng, 0.1)) rec.raw_bus(rec.operation) = 1.0 + std::uniform_real_distribution<double>(0.0, 0.2)(rng);
      data.push_back(rec.memory_data);
      chosen.push_back(rec.operation);
      bus.push_back(rec.raw_bus);
      trace.steps.push_back(rec);
    }
    const double want = reference::score_steps(data, chosen, bus, oracle, m_max);
    const double got = sample_fitness(trace, oracle, m_max).fitness;
    double diff = std::abs(want - got);
    for (const auto& b : bus) diff = std::max(diff, std::abs(margin_penalty(b, m_max) - reference::margin_of(b, m_max)));
    worst = std::max(worst, diff);
    if (diff > tolerance && failures++ == 0) {
      std::ostringstream s;
      s << "trace " << n << ": scorer " << want << " vs " << got;
      first = s.str();
    }
  }
  std::ostringstream s;
  s << traces << " traces, max |diff| " << worst;
  return finish("fitness scorer", failures, first, watch, s.str());
}

SuiteResult addition_oracle(int max_bits, bool mutate) {
  Stopwatch watch;
  const auto task = make_task("addition");
  std::size_t failures = 0, checked = 0;
  std::string first;
  for (int bits = 1; bits <= max_bits; ++bits) {
    const long limit = 1L << bits;
    for (long a = 0; a < limit; ++a) {
      for (long b = 0; b < limit; ++b) {
        TaskSample s;
        s.task = "addition";
        s.level = s.complexity = bits;
        for (long number : {a, b}) {
          s.inputs.push_back(scalar_word(0.0));
          for (int k = bits - 1; k >= 0; --k) s.inputs.push_back(scalar_word((number >> k) & 1));
        }
        s.oracle = task->oracle_trace(s);
        if (mutate) {
          // Swap add and add-with-carry on the final (leading zero) digit.
          auto& last = s.oracle.back().operation;
          last = 1 - last;
        }
        const Replay replay = replay_oracle(*task, s);
        const std::size_t n = static_cast<std::size_t>(bits) + 1;
        long sum = 0;
        bool ok = replay.halted_after == s.oracle.size() && replay.outputs.size() == 3 * n;
        for (std::size_t k = 0; ok && k < n; ++k) {
          const double digit = replay.outputs[2 * n + k].data(0);
          ok = digit == 0.0 || digit == 1.0;
          sum += static_cast<long>(digit) << k;
        }
        ++checked;
        if ((!ok || sum != a + b) && failures++ == 0)
          first = std::to_string(a) + " + " + std::to_string(b) + " gave " + std::to_string(sum);
      }
    }
  }
  return finish(mutate ? "addition oracle (mutated)" : "addition oracle", failures, first, watch,
                std::to_string(checked) + " pairs up to " + std::to_string(max_bits) + " bits");
}

SuiteResult sort_oracle(int samples, std::uint64_t seed) {
  Stopwatch watch;
  const auto task = make_task("sort");
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  std::string first;
  auto decode = [](const Eigen::VectorXd& v) {
    int x = 0;
    for (int k = 0; k < 8; ++k) x = 2 * x + (v(k) == 1.0 ? 1 : 0);
    return x;
  };
  for (int n = 0; n < samples; ++n) {
    const int level = std::uniform_int_distribution<int>(1, 10)(rng);
    const TaskSample s = task->generate(level, rng());
    std::vector<int> expected;
    for (const auto& x : s.inputs) expected.push_back(decode(x));
    std::sort(expected.begin(), expected.end());

    const Replay replay = replay_oracle(*task, s);
    std::vector<int> emitted;
    for (std::size_t k = s.inputs.size(); k < replay.outputs.size(); ++k)
      if (s.oracle[k].operation == 2) emitted.push_back(decode(replay.outputs[k].data));
    if ((replay.halted_after != s.oracle.size() || emitted != expected) && failures++ == 0)
      first = "seed sample " + std::to_string(n) + " at level " + std::to_string(level);
  }
  return finish("sort oracle", failures, first, watch, std::to_string(samples) + " sequences");
}

SuiteResult arithmetic_oracle(int samples, std::uint64_t seed) {
  Stopwatch watch;
  const auto task = make_task("arithmetic");
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  std::string first;
  for (int n = 0; n < samples; ++n) {
    const int level = std::uniform_int_distribution<int>(1, 10)(rng);
    const TaskSample s = task->generate(level, rng());
    std::vector<double> tokens;
    for (const auto& t : s.inputs) tokens.push_back(t(0));
    const long expected = reference::evaluate_postfix(tokens, false);
    const Replay replay = replay_oracle(*task, s);
    const bool ok = replay.halted_after == s.oracle.size() && !replay.outputs.empty() &&
                    replay.outputs.back().data(0) == static_cast<double>(expected);
    if (!ok && failures++ == 0)
      first = "expression " + std::to_string(n) + " expected " + std::to_string(expected);
  }
  return finish("arithmetic oracle", failures, first, watch, std::to_string(samples) + " expressions");
}

SuiteResult search_plan_oracle(int worlds, std::uint64_t seed) {
  Stopwatch watch;
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  std::string first;
  const std::vector<std::string> names{"search", "search+", "plan", "plan+"};
  const auto sim = reference::GridSimulator::for_variant("default");
  for (int n = 0; n < worlds; ++n) {
    const std::string& name = names[n % names.size()];
    const bool extended = name.back() == '+';
    const bool plan = name.rfind("plan", 0) == 0;
    const auto task = make_task(name);
    const int level = std::uniform_int_distribution<int>(1, 10)(rng);
    const TaskSample s = task->generate(level, rng());
    const Replay replay = replay_oracle(*task, s);
    std::string why;
    auto state = [&](std::size_t k) { return sim.decode(replay.inputs[k].data); };

    if (replay.halted_after != s.oracle.size()) why = "halt step differs from oracle length";
    // Expansion: written states are expanded in write order, each with its
    // moves in ascending order, and every transition matches the simulator.
    std::size_t k = 0, node = 0;
    while (why.empty() && k < s.oracle.size() && s.oracle[k].operation != kNoop) {
      const std::vector<int> cells = state(node);
      for (int a = 0; a < kMoveCount && why.empty(); ++a) {
        if (s.oracle[k].operation == kNoop) break;  // goal generated mid-expansion
        const auto next = sim.move(cells, a);
        if (extended && !next) continue;
        if (s.oracle[k].operation != a || sim.decode(s.oracle[k].data) != cells)
          why = "expansion of node " + std::to_string(node) + " is not FIFO";
        else if (k + 1 >= replay.inputs.size() || state(k + 1) != next.value_or(cells))
          why = "transition at step " + std::to_string(k + 1) + " disagrees with the simulator";
        ++k;
      }
      ++node;
    }
    const auto goal = sim.decode(s.goal);
    const auto start = sim.decode(s.start);
    if (why.empty() && (k >= replay.inputs.size() || state(k) != goal)) why = "search did not reach the goal";
    if (why.empty() && plan) {
      // Re-execute the backtracked path forward from the start.
      std::vector<std::vector<int>> path;
      for (std::size_t t = k; t < replay.inputs.size(); ++t)
        if (path.empty() || path.back() != state(t)) path.push_back(state(t));
      if (path.back() != start) why = "plan does not end at the start";
      for (std::size_t p = path.size() - 1; why.empty() && p > 0; --p) {
        bool step_ok = false;
        for (int a = 0; a < kMoveCount && !step_ok; ++a) {
          const auto next = sim.move(path[p], a);
          step_ok = next && *next == path[p - 1];
        }
        if (!step_ok) why = "plan step " + std::to_string(path.size() - 1 - p) + " is not executable";
      }
      if (why.empty() && path.front() != goal) why = "plan does not reach the goal";
    }
    if (!why.empty() && failures++ == 0) first = name + " world " + std::to_string(n) + ": " + why;
  }
  return finish("search/plan oracle", failures, first, watch, std::to_string(worlds) + " worlds");
}

SuiteResult nes_sphere(int seeds, int iterations, double threshold) {
  Stopwatch watch;
  NesConfig cfg;  // P=20, sigma=0.1, alpha=0.01
  std::size_t failures = 0;
  std::string first;
  std::ostringstream summary;
  summary << "iterations to |theta| < " << threshold << ":";
  for (int seed = 1; seed <= seeds; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::normal_distribution<double> normal;
    Eigen::VectorXd theta(10);
    for (auto& v : theta) v = normal(rng);
    theta.normalize();
    int reached = -1;
    for (int it = 1; it <= iterations && reached < 0; ++it) {
      const auto eps = sample_population(theta.size(), cfg.population, rng);
      std::vector<double> f;
      for (const auto& e : eps) f.push_back(-(theta + cfg.sigma * e).squaredNorm());
      theta = nes_update(theta, eps, rank_transform(f), cfg);
      if (theta.norm() < threshold) reached = it;
    }
    summary << ' ' << reached;
    if (reached < 0 && failures++ == 0) first = "seed " + std::to_string(seed) + " ended at |theta| = " + std::to_string(theta.norm());
  }
  return finish("NES sphere", failures, first, watch, summary.str());
}

}  // namespace nhc::suites
