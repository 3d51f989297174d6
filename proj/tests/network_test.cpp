#include "nhc/fitness.hpp"
#include "nhc/layers.hpp"
#include "nhc/nhc.hpp"
#include "nhc/tasks/task.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nhc;
using Vector = Eigen::VectorXd;

namespace {

Vector random_vec(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = normal(rng);
  return v;
}

Parameters<double> random_parameters(const ArchitectureConfig& arch, std::mt19937_64& rng) {
  return unpack<double>(random_vec(genome_size(arch), rng), arch);
}

/// Plain loops over a row-major weight block; no Eigen products.
Vector reference_affine(const AffineLayer<double>& layer, const Vector& x) {
  Vector y(layer.outputs());
  for (Eigen::Index r = 0; r < layer.outputs(); ++r) {
    double acc = layer.bias(r);
    for (Eigen::Index c = 0; c < layer.inputs(); ++c) acc += layer.weight(r, c) * x(c);
    y(r) = acc;
  }
  return y;
}

/// Parameter count summed from every weight matrix and bias of the model.
long shape_sum(const ArchitectureConfig& a) {
  const long c = a.control_word, hr = a.read_heads, hw = a.write_heads, lc = a.controller_size;
  const long controller_in = a.input_to_controller + (a.feedback_bus ? a.operations : 0) +
                             (a.feedback_alu ? a.alu_feedback_width : 0) + hr * c;
  const long xm = a.input_to_memory + lc;
  long n = lc * controller_in + lc;                    // W_c, b_c
  n += hw * c * xm + hw * c;                           // write vectors
  if (a.prev_update) n += 2 * (hr * c * xm + hr * c);  // value and erase
  if (a.prev_update) n += hr * xm + hr;                // gates
  const long modes = hr + (a.ancestry ? 4 : 2) * hw;
  n += hr * modes * xm + hr * modes;
  if (a.free_gates) n += (hw + hr) * xm + (hw + hr);
  const long bus_in = a.input_to_bus + lc + hr * c;
  n += a.operations * bus_in + a.operations;
  return n;
}

}  // namespace

TEST_CASE("heaviside and first-max argmax") {
  CHECK(heaviside(0.0) == 1);
  CHECK(heaviside(-1e-300) == 0);
  CHECK(argmax_first(Vector{{0.2, 0.9, 0.1}}) == 1);
  CHECK(argmax_first(Vector{{0.5, 0.5}}) == 0);
}

TEST_CASE("controller forward") {
  ArchitectureConfig arch;
  const Vector in = Vector::Zero(arch.input_to_controller);
  const Vector bus = Vector::Zero(arch.operations);
  const Vector alu;
  const Vector mem = Vector::Zero(arch.read_heads * arch.control_word);

  SUBCASE("zero parameters give zeros") {
    const Parameters<double> p = zero_parameters(arch);
    CHECK(controller_forward(p[Block::Controller], arch, in, bus, alu, mem).isZero(0.0));
  }
  SUBCASE("large bias saturates") {
    Parameters<double> p = zero_parameters(arch);
    p[Block::Controller].bias.setConstant(10.0);
    const Vector out = controller_forward(p[Block::Controller], arch, in, bus, alu, mem);
    for (Eigen::Index k = 0; k < out.size(); ++k) CHECK(std::abs(out(k) - 1.0) < 1e-4);
  }
  SUBCASE("random parameters match affine then tanh") {
    std::mt19937_64 rng(3);
    arch.feedback_alu = true;
    arch.alu_feedback_width = 3;
    for (int trial = 0; trial < 50; ++trial) {
      const Parameters<double> p = random_parameters(arch, rng);
      const Vector i = random_vec(arch.input_to_controller, rng), b = random_vec(arch.operations, rng),
                a = random_vec(3, rng), m = random_vec(arch.read_heads * arch.control_word, rng);
      Vector x(i.size() + b.size() + a.size() + m.size());
      x << i, b, a, m;
      const Vector expected = reference_affine(p[Block::Controller], x).array().tanh().matrix();
      const Vector got = controller_forward(p[Block::Controller], arch, i, b, a, m);
      CHECK((got - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("bus forward picks the largest raw output") {
  ArchitectureConfig arch;
  arch.operations = 3;
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Parameters<double> p = random_parameters(arch, rng);
    const Vector i = random_vec(arch.input_to_bus, rng), c = random_vec(arch.controller_size, rng),
              m = random_vec(arch.read_heads * arch.control_word, rng);
    Vector x(i.size() + c.size() + m.size());
    x << i, c, m;
    const Vector raw = reference_affine(p[Block::Bus], x);
    int best = 0;
    for (int k = 1; k < raw.size(); ++k)
      if (raw(k) > raw(best)) best = k;
    CHECK(bus_forward(p[Block::Bus], i, c, m).operation == best);
  }
}

TEST_CASE("memory interface") {
  SUBCASE("zero parameters") {
    ArchitectureConfig arch;
    arch.free_gates = true;
    const Parameters<double> p = zero_parameters(arch);
    const auto s = memory_interface_forward(p, arch, Vector(Vector::Zero(arch.input_to_memory)),
                                            Vector(Vector::Zero(arch.controller_size)));
    CHECK(s.prev_erase_vec[0].isApprox(Vector::Constant(arch.control_word, 0.5)));
    CHECK(s.prev_gate[0] == 1);
    CHECK(s.free_write[0] == 1);
    CHECK(s.free_read[0] == 1);
    CHECK(s.read_mode[0] == 0);
  }
  SUBCASE("read-mode logits select the largest") {
    ArchitectureConfig arch;
    arch.read_heads = 2;
    Parameters<double> p = zero_parameters(arch);
    REQUIRE(arch.read_modes() == 6);
    p[Block::ReadMode].bias.head(6) = Vector{{0.1, 2.0, -1.0, 0.0, 0.0, 0.0}};
    const auto s = memory_interface_forward(p, arch, Vector(Vector::Zero(arch.input_to_memory)),
                                            Vector(Vector::Zero(arch.controller_size)));
    CHECK(s.read_mode[0] == 1);
    CHECK(s.read_mode[1] == 0);
  }
  SUBCASE("random parameters match the per-signal formulas") {
    ArchitectureConfig arch;
    arch.read_heads = 2;
    arch.write_heads = 2;
    arch.free_gates = true;
    std::mt19937_64 rng(8);
    const int c = arch.control_word, modes = arch.read_modes();
    for (int trial = 0; trial < 50; ++trial) {
      const Parameters<double> p = random_parameters(arch, rng);
      const Vector im = random_vec(arch.input_to_memory, rng), cc = random_vec(arch.controller_size, rng);
      Vector x(im.size() + cc.size());
      x << im, cc;
      const auto s = memory_interface_forward(p, arch, im, cc);
      const Vector w = reference_affine(p[Block::Write], x), v = reference_affine(p[Block::PrevWrite], x),
                e = reference_affine(p[Block::PrevErase], x), g = reference_affine(p[Block::PrevGate], x),
                m = reference_affine(p[Block::ReadMode], x), fw = reference_affine(p[Block::FreeWrite], x),
                fr = reference_affine(p[Block::FreeRead], x);
      for (int i = 0; i < 2; ++i) {
        CHECK((s.write_vec[i] - w.segment(i * c, c)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(s.free_write[i] == (fw(i) >= 0 ? 1 : 0));
      }
      for (int j = 0; j < 2; ++j) {
        CHECK((s.prev_write_vec[j] - v.segment(j * c, c)).cwiseAbs().maxCoeff() <= 1e-12);
        for (int k = 0; k < c; ++k) {
          const double expected = 1.0 / (1.0 + std::exp(-e(j * c + k)));
          CHECK(std::abs(s.prev_erase_vec[j](k) - expected) <= 1e-15);
          CHECK(s.prev_erase_vec[j](k) > 0.0);
          CHECK(s.prev_erase_vec[j](k) < 1.0);
        }
        CHECK(s.prev_gate[j] == (g(j) >= 0 ? 1 : 0));
        CHECK(s.free_read[j] == (fr(j) >= 0 ? 1 : 0));
        int best = 0;
        for (int k = 1; k < modes; ++k)
          if (m(j * modes + k) > m(j * modes + best)) best = k;
        CHECK(s.read_mode[j] == best);
      }
    }
  }
}

TEST_CASE("genome layout") {
  SUBCASE("counts of every task lie in the stated range") {
    for (const std::string& name : task_names()) {
      const auto task = make_task(name);
      const ArchitectureConfig arch = task->architecture();
      CAPTURE(name);
      CHECK(genome_size(arch) == shape_sum(arch));
      CHECK(genome_size(arch) >= 300);
      CHECK(genome_size(arch) <= 650);
    }
  }
  SUBCASE("ablations") {
    const ArchitectureConfig base = make_task("copy")->architecture();
    const ArchitectureConfig anc = apply_ablation(base, Ablation::NoAncestry);
    const ArchitectureConfig prev = apply_ablation(base, Ablation::NoPrevUpdate);
    CHECK(anc.read_modes() == base.read_heads + 2 * base.write_heads);
    CHECK(prev.write_heads == 2);
    CHECK_FALSE(prev.prev_update);
    CHECK(genome_layout(prev)[Block::PrevWrite].rows == 0);
    CHECK(genome_layout(prev)[Block::PrevGate].rows == 0);
    CHECK(genome_size(anc) == shape_sum(anc));
    CHECK(genome_size(prev) == shape_sum(prev));
  }
  SUBCASE("pack after unpack is the identity") {
    std::mt19937_64 rng(9);
    for (const std::string& name : task_names()) {
      const ArchitectureConfig arch = make_task(name)->architecture();
      const Vector theta = random_vec(genome_size(arch), rng);
      CHECK(pack(unpack(theta, arch), arch) == theta);
    }
  }
  SUBCASE("wrong length is rejected") {
    const ArchitectureConfig arch;
    CHECK_THROWS_AS(unpack<double>(Vector::Zero(genome_size(arch) + 1), arch), ConfigError);
  }
}

TEST_CASE("episodes") {
  const auto copy = make_task("copy");
  const ArchitectureConfig arch = copy->architecture();

  SUBCASE("zero genome runs without crashing") {
    const TaskSample s = copy->generate(1, 17);
    auto module = copy->make_module(s);
    const EpisodeTrace t = run_episode(zero_parameters(arch), arch, *module, s.t_max());
    CHECK(t.steps.size() <= s.t_max());
    CHECK_FALSE(t.steps.empty());
  }
  SUBCASE("hand genome reproduces the oracle trace") {
    const Parameters<double> p = test::hand_copy_parameters(arch);
    const TaskSample s = copy->generate(2, 5);
    auto module = copy->make_module(s);
    const EpisodeTrace t = run_episode(p, arch, *module, s.t_max());
    REQUIRE(t.steps.size() == s.t_max());
    CHECK(t.halted);
    for (std::size_t k = 0; k < s.t_max(); ++k) {
      CHECK(t.steps[k].operation == s.oracle[k].operation);
      CHECK(t.steps[k].memory_data == s.oracle[k].data);
    }
    CHECK(sample_fitness(t, s.oracle, 0.1).fitness == kMaxSampleFitness);
  }
  SUBCASE("hand genome emits long sequences in order") {
    const Parameters<double> p = test::hand_copy_parameters(arch);
    for (int level : {1, 7, 64, 300}) {
      const TaskSample s = copy->generate(level, 100 + level);
      auto module = copy->make_module(s);
      const EpisodeTrace t = run_episode(p, arch, *module, s.t_max());
      CAPTURE(level);
      REQUIRE(t.steps.size() == 2 * s.inputs.size());
      for (std::size_t k = 0; k < s.inputs.size(); ++k)
        CHECK(t.steps[s.inputs.size() + k].memory_data == s.inputs[k]);
    }
  }
  SUBCASE("stopping at the first mistake keeps the fitness") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
      const Parameters<double> p = random_parameters(arch, rng);
      const TaskSample s = copy->generate(3, trial);
      auto full = copy->make_module(s);
      auto early = copy->make_module(s);
      EpisodeOptions options;
      options.stop_on_mismatch = &s.oracle;
      const double a = sample_fitness(run_episode(p, arch, *full, s.t_max()), s.oracle, 0.1).fitness;
      const double b =
          sample_fitness(run_episode(p, arch, *early, s.t_max(), options), s.oracle, 0.1).fitness;
      CHECK(a == b);
    }
  }
  SUBCASE("addition: the first presented bit lands at location 0") {
    const auto addition = make_task("addition");
    const ArchitectureConfig a = addition->architecture();
    const TaskSample s = addition->generate(3, 2);
    auto module = addition->make_module(s);
    NhcState state = initial_state(a, 64, module->data_width(), a.alu_feedback_width);
    const StepResult r = nhc_step(zero_parameters(a), a, state, *module);
    CHECK(state.memory.used(0));
    CHECK(state.memory.data.row(0).transpose() == s.inputs[0]);
    CHECK_FALSE(r.halt);
  }
  SUBCASE("memory exhaustion ends the episode") {
    const TaskSample s = copy->generate(5, 1);
    ArchitectureConfig small = arch;
    small.memory_size = 3;
    auto module = copy->make_module(s);
    const EpisodeTrace t = run_episode(test::hand_copy_parameters(small), small, *module, s.t_max());
    CHECK(t.memory_full);
    CHECK(t.steps.size() == 3);
  }
}
