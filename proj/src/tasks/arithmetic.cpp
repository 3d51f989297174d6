// Postfix expression evaluation; the model has to emulate a stack.

#include "nhc/tasks/task.hpp"
#include "tasks/factories.hpp"

#include <cmath>
#include <functional>

namespace nhc {
namespace {

enum ArithOp : int { kCalculate = 0, kRead = 1 };

constexpr long kModulus = 10000;

/// Operator domain: decimal [+,-,*,/] on 1..10, or boolean [AND, OR] on {0,1}.
/// Operators are coded as -1, -2, ... in the data stream.
struct Algebra {
  bool boolean = false;
  int operator_count() const { return boolean ? 2 : 4; }
  int min_value() const { return boolean ? 0 : 1; }
  int max_value() const { return boolean ? 1 : 10; }

  /// Applies operator `code` (negative) to (a, b). Unknown codes give 0.
  long apply(int code, long a, long b) const {
    if (boolean) {
      if (code == -1) return (a != 0 && b != 0) ? 1 : 0;
      if (code == -2) return (a != 0 || b != 0) ? 1 : 0;
      return 0;
    }
    long r = 0;
    switch (code) {
      case -1: r = a + b; break;
      case -2: r = a - b; break;
      case -3: r = a * b; break;
      case -4: r = b == 0 ? 0 : a / b; break;
      default: return 0;
    }
    return ((r % kModulus) + kModulus) % kModulus;
  }
};

bool is_operator(double token) { return token < 0.0; }

class ArithmeticModule final : public DataModule {
 public:
  ArithmeticModule(const TaskSample& s, Algebra algebra) : algebra_(algebra) {
    for (const auto& w : s.inputs) tokens_.push_back(w(0));
  }

  InputSignals input(const Eigen::VectorXd& previous_output) override {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2);
    Eigen::VectorXd d;
    if (previous_was_operator_) {
      d = previous_output;
      c(0) = 1.0;
      previous_was_operator_ = false;
    } else {
      const double token = next_ < tokens_.size() ? tokens_[next_] : 0.0;
      ++next_;
      d = scalar_word(token);
      previous_was_operator_ = is_operator(token);
      c(previous_was_operator_ ? 1 : 0) = 1.0;
      if (previous_was_operator_ && next_ >= tokens_.size()) halted_ = true;
    }
    return {d, c, c, c};
  }

  AluOutput alu(const Eigen::VectorXd& memory_data, int operation) override {
    double out = memory_data(1);
    if (operation == kCalculate) {
      const long a = std::lround(memory_data(1));
      const long b = std::lround(memory_data(2));
      out = static_cast<double>(algebra_.apply(static_cast<int>(std::lround(memory_data(0))), a, b));
    }
    Eigen::VectorXd ca = Eigen::VectorXd::Zero(2);
    ca(operation) = 1.0;
    return {scalar_word(out), ca};
  }

  bool halted() const override { return halted_; }
  int data_width() const override { return 1; }

 private:
  Algebra algebra_;
  std::vector<double> tokens_;
  std::size_t next_ = 0;
  bool previous_was_operator_ = false;
  bool halted_ = false;
};

class ArithmeticTask final : public Task {
 public:
  explicit ArithmeticTask(std::string variant)
      : variant_(std::move(variant)), algebra_{variant_ == "boolean"} {}

  std::string name() const override { return "arithmetic"; }
  std::string variant() const override { return variant_; }

  ArchitectureConfig architecture() const override {
    ArchitectureConfig cfg;
    cfg.data_word = 1;
    cfg.operations = 2;
    cfg.read_heads = 3;
    cfg.input_to_controller = cfg.input_to_memory = cfg.input_to_bus = 2;
    cfg.alu_feedback_width = 2;
    // c^a already equals c^b here, so the Bus feedback would be redundant.
    cfg.feedback_bus = false;
    cfg.feedback_alu = true;
    cfg.free_gates = true;
    return cfg;
  }

  std::vector<std::string> operation_names() const override { return {"C", "R"}; }

  OracleTrace oracle_trace(const TaskSample& s) const override {
    OracleTrace trace;
    std::vector<long> stack;
    for (std::size_t k = 0; k < s.inputs.size(); ++k) {
      const double token = s.inputs[k](0);
      if (!is_operator(token)) {
        stack.push_back(std::lround(token));
        trace.push_back({Eigen::VectorXd::Constant(3, token), kRead});
        continue;
      }
      const long b = stack.back();
      stack.pop_back();
      const long a = stack.back();
      stack.pop_back();
      Eigen::VectorXd d(3);
      d << token, static_cast<double>(a), static_cast<double>(b);
      trace.push_back({d, kCalculate});
      const long r = algebra_.apply(static_cast<int>(token), a, b);
      stack.push_back(r);
      if (k + 1 < s.inputs.size())
        trace.push_back({Eigen::VectorXd::Constant(3, static_cast<double>(r)), kRead});
    }
    return trace;
  }

  std::unique_ptr<DataModule> make_module(const TaskSample& s) const override {
    return std::make_unique<ArithmeticModule>(s, algebra_);
  }

  bool verify_replay(const TaskSample& s, const Replay& replay) const override {
    if (replay.outputs.empty()) return false;
    // Right-to-left recursive reading of the postfix string.
    std::size_t pos = s.inputs.size();
    std::function<long()> eval = [&]() -> long {
      const double token = s.inputs[--pos](0);
      if (!is_operator(token)) return std::lround(token);
      const long b = eval();
      const long a = eval();
      return algebra_.apply(static_cast<int>(token), a, b);
    };
    const long expected = eval();
    return pos == 0 && std::lround(replay.outputs.back().data(0)) == expected;
  }

 protected:
  void fill_instance(TaskSample& s, std::mt19937_64& rng) const override {
    std::uniform_int_distribution<int> number(algebra_.min_value(), algebra_.max_value());
    std::uniform_int_distribution<int> op(1, algebra_.operator_count());
    // Random binary expression tree with `complexity` operators, emitted in postfix.
    std::function<void(int)> emit = [&](int operators) {
      if (operators == 0) {
        s.inputs.push_back(scalar_word(number(rng)));
        return;
      }
      const int left = std::uniform_int_distribution<int>(0, operators - 1)(rng);
      emit(left);
      emit(operators - 1 - left);
      s.inputs.push_back(scalar_word(-op(rng)));
    };
    emit(s.complexity);
  }

 private:
  std::string variant_;
  Algebra algebra_;
};

}  // namespace

std::unique_ptr<Task> make_arithmetic_task(const std::string& name, const std::string& variant) {
  if (name != "arithmetic") return nullptr;
  if (variant != "default" && variant != "boolean")
    throw ConfigError("variant '" + variant + "' is not available for arithmetic");
  return std::make_unique<ArithmeticTask>(variant);
}

}  // namespace nhc
