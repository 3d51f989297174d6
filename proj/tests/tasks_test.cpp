#include "nhc/reference.hpp"
#include "nhc/selftest.hpp"
#include "nhc/tasks/task.hpp"

#include <doctest.h>

#include <set>

using namespace nhc;
using Vector = Eigen::VectorXd;

namespace {

TaskSample manual_sample(const Task& task, std::vector<Vector> inputs) {
  TaskSample s;
  s.task = task.name();
  s.variant = task.variant();
  s.inputs = std::move(inputs);
  s.oracle = task.oracle_trace(s);
  return s;
}

Vector bits(std::initializer_list<int> v) {
  Vector w(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (int b : v) w(k++) = b;
  return w;
}

Vector byte(int value) {
  Vector v(8);
  for (int b = 0; b < 8; ++b) v(b) = (value >> (7 - b)) & 1;
  return v;
}

}  // namespace

TEST_CASE("every task closes the loop on every variant and level") {
  for (const std::string& name : task_names()) {
    for (const std::string& variant : task_variants(name)) {
      const auto task = make_task(name, variant);
      for (int level = 1; level <= kMixedLevel; ++level) {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
          CAPTURE(name);
          CAPTURE(variant);
          CAPTURE(level);
          CAPTURE(seed);
          const TaskSample s = task->generate(level, seed * 7919 + level);
          REQUIRE(s.t_max() > 0);
          CHECK(closes_the_loop(*task, s));
        }
      }
    }
  }
}

TEST_CASE("task registry") {
  CHECK(task_names().size() == 11);
  CHECK_THROWS_AS(make_task("juggle"), ConfigError);
  CHECK_THROWS_AS(make_task("copy", "boolean"), ConfigError);
  CHECK_THROWS_AS(make_task("sort", "sliding"), ConfigError);
  CHECK(make_task("plan+", "sokoban8")->name() == "plan+");
  CHECK_THROWS_AS(make_task("copy")->generate(0, 1), GeneratorError);
}

TEST_CASE("instance shapes") {
  SUBCASE("addition numbers carry a leading zero") {
    const auto task = make_task("addition");
    const TaskSample s = task->generate(3, 77);
    REQUIRE(s.inputs.size() == 8);
    CHECK(s.inputs[0](0) == 0.0);
    CHECK(s.inputs[4](0) == 0.0);
    for (const auto& d : s.inputs) CHECK((d(0) == 0.0 || d(0) == 1.0));
    CHECK(s.t_max() == 12);
  }
  SUBCASE("sort level 3 has four numbers") {
    CHECK(make_task("sort")->generate(3, 5).inputs.size() == 4);
  }
  SUBCASE("arithmetic level 2 has two operators in postfix") {
    const auto task = make_task("arithmetic");
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const TaskSample s = task->generate(2, seed);
      REQUIRE(s.inputs.size() == 5);
      std::vector<double> tokens;
      int operators = 0;
      for (const auto& w : s.inputs) {
        tokens.push_back(w(0));
        if (w(0) < 0) ++operators;
      }
      CHECK(operators == 2);
      CHECK(tokens.back() < 0);
      CHECK_NOTHROW(reference::evaluate_postfix(tokens, false));
    }
  }
  SUBCASE("boolean arithmetic only uses AND and OR on bits") {
    const auto task = make_task("arithmetic", "boolean");
    for (std::uint64_t seed = 0; seed < 50; ++seed)
      for (const auto& w : task->generate(4, seed).inputs)
        CHECK((w(0) == -1.0 || w(0) == -2.0 || w(0) == 0.0 || w(0) == 1.0));
  }
  SUBCASE("decimal addition uses one-hot digits") {
    const auto task = make_task("addition", "decimal");
    const TaskSample s = task->generate(4, 3);
    for (const auto& d : s.inputs) {
      CHECK(d.size() == 10);
      CHECK(d.sum() == 1.0);
    }
  }
  SUBCASE("sort level 1000 takes over a million steps") {
    const TaskSample s = make_task("sort")->generate(1000, 1);
    CHECK(s.t_max() > 1000000);
  }
}

TEST_CASE("addition replay") {
  const auto task = make_task("addition");
  // 0101 + 0011, most significant digit first.
  const TaskSample s =
      manual_sample(*task, {bits({0}), bits({1}), bits({0}), bits({1}), bits({0}), bits({0}),
                            bits({1}), bits({1})});
  const Replay r = replay_oracle(*task, s);
  REQUIRE(r.outputs.size() == 12);
  // Sum digits come out least significant first: 1000.
  const std::vector<double> expected{0, 0, 0, 1};
  for (int k = 0; k < 4; ++k) CHECK(r.outputs[8 + k].data(0) == expected[k]);
  CHECK(task->verify_replay(s, r));
  CHECK(r.halted_after == 12);
}

TEST_CASE("addition ALU") {
  SUBCASE("binary carry") {
    const auto task = make_task("addition");
    const TaskSample s = task->generate(1, 1);
    auto m = task->make_module(s);
    m->input(Vector::Zero(1));
    const AluOutput out = m->alu(bits({1, 1}), 1);
    CHECK(out.data(0) == 1.0);
    CHECK(out.control(0) == 1.0);
    CHECK(out.control(1) == 0.0);
  }
  SUBCASE("decimal carry") {
    const auto task = make_task("addition", "decimal");
    const TaskSample s = task->generate(1, 1);
    auto m = task->make_module(s);
    m->input(Vector::Zero(10));
    Vector operands = Vector::Zero(20);
    operands(7) = 1.0;
    operands(10 + 8) = 1.0;
    const AluOutput out = m->alu(operands, 1);
    Vector six = Vector::Zero(10);
    six(6) = 1.0;
    CHECK(out.data == six);
    CHECK(out.control(0) == 1.0);
  }
}

TEST_CASE("sort emits ascending order") {
  const auto task = make_task("sort");
  const TaskSample s = manual_sample(*task, {byte(3), byte(1), byte(2)});
  const Replay r = replay_oracle(*task, s);
  std::vector<Vector> emitted;
  for (std::size_t k = 3; k < r.outputs.size(); ++k)
    if (r.outputs[k].control(3) == 1.0) emitted.push_back(r.outputs[k].data);
  REQUIRE(emitted.size() == 3);
  CHECK(emitted[0] == byte(1));
  CHECK(emitted[1] == byte(2));
  CHECK(emitted[2] == byte(3));
  CHECK(closes_the_loop(*task, s));
}

TEST_CASE("arithmetic") {
  const auto task = make_task("arithmetic");
  SUBCASE("5 6 * 3 + evaluates to 33") {
    const TaskSample s = manual_sample(
        *task, {Vector::Constant(1, 5), Vector::Constant(1, 6), Vector::Constant(1, -3),
                Vector::Constant(1, 3), Vector::Constant(1, -1)});
    const Replay r = replay_oracle(*task, s);
    CHECK(r.outputs.back().data(0) == 33.0);
    CHECK(r.halted_after == s.t_max());
    CHECK(closes_the_loop(*task, s));
  }
  SUBCASE("the module halts once the last operator is presented") {
    const TaskSample s = task->generate(4, 9);
    auto m = task->make_module(s);
    Vector previous = Vector::Zero(1);
    std::size_t k = 0;
    for (; k < s.t_max(); ++k) {
      const InputSignals in = m->input(previous);
      previous = m->alu(s.oracle[k].data, s.oracle[k].operation).data;
      if (m->halted()) {
        CHECK(in.data(0) == s.inputs.back()(0));
        break;
      }
    }
    CHECK(k + 1 == s.t_max());
  }
  SUBCASE("calculate applies the operator to the operands") {
    const TaskSample s = task->generate(1, 1);
    auto m = task->make_module(s);
    m->input(Vector::Zero(1));
    CHECK(m->alu(Vector{{-1.0, 4.0, 5.0}}, 0).data(0) == 9.0);
  }
  SUBCASE("random expressions agree with a stack evaluator") {
    const suites::SuiteResult r = suites::arithmetic_oracle(2000, 4);
    INFO(r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("copy family input signals") {
  SUBCASE("output phase starts with c_o = 1 and a zero data word") {
    const auto task = make_task("copy");
    const TaskSample s = task->generate(4, 2);
    const Replay r = replay_oracle(*task, s);
    const InputSignals& in = r.inputs[4];
    CHECK(in.to_controller(3) == 1.0);
    CHECK(in.data.isZero(0.0));
  }
  SUBCASE("duplicated flags first occurrences and repeats") {
    const auto task = make_task("duplicated");
    const Vector a = bits({1, 0, 0, 1, 1, 0}), b = bits({0, 1, 1, 0, 0, 1});
    TaskSample s = manual_sample(*task, {a, a, b, b});
    s.repeats = 2;
    const Replay r = replay_oracle(*task, s);
    CHECK(r.inputs[0].to_controller(0) == 1.0);
    CHECK(r.inputs[1].to_controller(1) == 1.0);
    CHECK(r.inputs[2].to_controller(0) == 1.0);
    CHECK(r.inputs[3].to_controller(1) == 1.0);
    CHECK(r.inputs[3].to_controller(2) == 1.0);
    CHECK(closes_the_loop(*task, s));
  }
}

TEST_CASE("search signals the goal") {
  for (const std::string name : {"search", "plan"}) {
    const auto task = make_task(name);
    const TaskSample s = task->generate(5, 21);
    const Replay r = replay_oracle(*task, s);
    std::size_t seen = 0;
    while (seen < r.inputs.size() && r.inputs[seen].data != s.goal) ++seen;
    REQUIRE(seen < r.inputs.size());
    CHECK(r.inputs[seen].to_controller(1) == 1.0);
    if (name == "search") {
      CHECK(r.halted_after == seen + 1);
    } else {
      CHECK(r.inputs.back().to_controller(3) == 1.0);
      CHECK(r.inputs.back().data == s.start);
    }
  }
}

TEST_CASE("extended search explores a subset of plain search") {
  for (const std::string variant : {"default", "sliding"}) {
    const auto plus = make_task("search+", variant);
    const auto plain = make_task("search", variant);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const TaskSample s = plus->generate(1 + static_cast<int>(seed % 10), seed);
      TaskSample same_world = s;
      same_world.task = "search";
      same_world.oracle = plain->oracle_trace(same_world);
      std::set<std::vector<double>> plain_states;
      for (const auto& step : same_world.oracle)
        plain_states.insert(std::vector<double>(step.data.begin(), step.data.end()));
      CAPTURE(seed);
      CHECK(s.t_max() <= same_world.t_max());
      for (const auto& step : s.oracle)
        CHECK(plain_states.count(std::vector<double>(step.data.begin(), step.data.end())) == 1);
    }
  }
}

TEST_CASE("oracle suites") {
  SUBCASE("addition, all numbers up to 6 bits") {
    const suites::SuiteResult r = suites::addition_oracle(6);
    INFO(r.detail);
    CHECK(r.passed);
  }
  SUBCASE("a corrupted addition oracle is detected") {
    CHECK_FALSE(suites::addition_oracle(3, true).passed);
  }
  SUBCASE("sort") {
    const suites::SuiteResult r = suites::sort_oracle(1000, 6);
    INFO(r.detail);
    CHECK(r.passed);
  }
  SUBCASE("search and plan") {
    const suites::SuiteResult r = suites::search_plan_oracle(200, 7);
    INFO(r.detail);
    CHECK(r.passed);
  }
}
