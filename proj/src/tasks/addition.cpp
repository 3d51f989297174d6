// Addition of two numbers presented digit by digit, most significant first.

#include "nhc/tasks/task.hpp"
#include "tasks/factories.hpp"

namespace nhc {
namespace {

enum AddOp : int { kAdd = 0, kAddCarry = 1, kNop = 2 };

/// Digit representation: binary digits as a scalar word, decimal digits one-hot.
struct DigitCodec {
  int base = 2;
  int width() const { return base == 2 ? 1 : base; }
  Eigen::VectorXd encode(int digit) const {
    if (base == 2) return scalar_word(digit);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(base);
    v(digit) = 1.0;
    return v;
  }
  int decode(const Eigen::VectorXd& v) const {
    if (base == 2) return v(0) >= 0.5 ? 1 : 0;
    Eigen::Index k = 0;
    v.maxCoeff(&k);
    return v(k) > 0.5 ? static_cast<int>(k) : 0;
  }
};

class AdditionModule final : public DataModule {
 public:
  AdditionModule(const TaskSample& s, DigitCodec codec) : inputs_(s.inputs), codec_(codec) {
    digits_ = inputs_.size() / 2;
  }

  InputSignals input(const Eigen::VectorXd&) override {
    ++t_;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(3);
    Eigen::VectorXd d;
    if (t_ <= 2 * digits_) {
      d = inputs_[t_ - 1];
      c(t_ <= digits_ ? 0 : 1) = 1.0;
    } else {
      d = Eigen::VectorXd::Zero(codec_.width());
      c(2) = 1.0;
      if (t_ == 3 * digits_) halted_ = true;
    }
    return {d, c, c, c};
  }

  AluOutput alu(const Eigen::VectorXd& memory_data, int operation) override {
    const int w = codec_.width();
    const int v1 = codec_.decode(memory_data.segment(0, w));
    const int v2 = codec_.decode(memory_data.segment(w, w));
    int carry_out = 0;
    Eigen::VectorXd out;
    if (operation == kNop) {
      out = Eigen::VectorXd::Zero(w);
    } else {
      const int sum = v1 + v2 + (operation == kAddCarry ? 1 : 0);
      carry_out = sum >= codec_.base ? 1 : 0;
      out = codec_.encode(sum % codec_.base);
    }
    Eigen::VectorXd ca(3);
    ca << carry_out, 1 - carry_out, operation == kNop ? 1 : 0;
    return {out, ca};
  }

  bool halted() const override { return halted_; }
  int data_width() const override { return codec_.width(); }

 private:
  std::vector<Eigen::VectorXd> inputs_;
  DigitCodec codec_;
  std::size_t digits_ = 0;
  std::size_t t_ = 0;
  bool halted_ = false;
};

class AdditionTask final : public Task {
 public:
  explicit AdditionTask(std::string variant)
      : variant_(std::move(variant)), codec_{variant_ == "decimal" ? 10 : 2} {}

  std::string name() const override { return "addition"; }
  std::string variant() const override { return variant_; }

  ArchitectureConfig architecture() const override {
    ArchitectureConfig cfg;
    cfg.data_word = codec_.width();
    cfg.operations = 3;
    cfg.read_heads = 2;
    cfg.input_to_controller = cfg.input_to_memory = cfg.input_to_bus = 3;
    cfg.alu_feedback_width = 3;
    cfg.feedback_bus = true;
    cfg.feedback_alu = true;
    cfg.free_gates = false;
    return cfg;
  }

  std::vector<std::string> operation_names() const override { return {"A", "C", "N"}; }

  OracleTrace oracle_trace(const TaskSample& s) const override {
    const std::size_t n = s.inputs.size() / 2;
    const auto& a = s.inputs;
    auto b = [&](std::size_t i) -> const Eigen::VectorXd& { return s.inputs[n + i]; };
    OracleTrace trace;
    for (std::size_t t = 0; t < n; ++t) trace.push_back({concat({a[t], a[t]}), kNop});
    for (std::size_t t = 0; t < n; ++t) trace.push_back({concat({a[n - 1], b(t)}), kNop});
    int carry = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = n - 1 - k;
      trace.push_back({concat({a[i], b(i)}), carry ? kAddCarry : kAdd});
      carry = codec_.decode(a[i]) + codec_.decode(b(i)) + carry >= codec_.base ? 1 : 0;
    }
    return trace;
  }

  std::unique_ptr<DataModule> make_module(const TaskSample& s) const override {
    return std::make_unique<AdditionModule>(s, codec_);
  }

  bool verify_replay(const TaskSample& s, const Replay& replay) const override {
    const std::size_t n = s.inputs.size() / 2;
    if (replay.outputs.size() != 3 * n) return false;
    if (n > 18) {
      // Too long for an integer; schoolbook check from the least significant digit.
      int carry = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = n - 1 - k;
        const int total = codec_.decode(s.inputs[i]) + codec_.decode(s.inputs[n + i]) + carry;
        if (codec_.decode(replay.outputs[2 * n + k].data) != total % codec_.base) return false;
        carry = total / codec_.base;
      }
      return carry == 0;
    }
    long long a = 0, b = 0, sum = 0, place = 1;
    for (std::size_t i = 0; i < n; ++i) {
      a = a * codec_.base + codec_.decode(s.inputs[i]);
      b = b * codec_.base + codec_.decode(s.inputs[n + i]);
    }
    for (std::size_t k = 0; k < n; ++k) {
      sum += place * codec_.decode(replay.outputs[2 * n + k].data);
      place *= codec_.base;
    }
    return sum == a + b;
  }

 protected:
  void fill_instance(TaskSample& s, std::mt19937_64& rng) const override {
    const int digits = s.complexity + 1;  // leading zero
    std::uniform_int_distribution<int> digit(0, codec_.base - 1);
    for (int which = 0; which < 2; ++which) {
      s.inputs.push_back(codec_.encode(0));
      for (int k = 1; k < digits; ++k) s.inputs.push_back(codec_.encode(digit(rng)));
    }
  }

 private:
  std::string variant_;
  DigitCodec codec_;
};

}  // namespace

std::unique_ptr<Task> make_addition_task(const std::string& name, const std::string& variant) {
  if (name != "addition") return nullptr;
  if (variant != "default" && variant != "decimal")
    throw ConfigError("variant '" + variant + "' is not available for addition");
  return std::make_unique<AdditionTask>(variant);
}

}  // namespace nhc
