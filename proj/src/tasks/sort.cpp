// Sort by repeated scan-and-emit of the smallest remaining object.

#include "nhc/tasks/task.hpp"
#include "tasks/factories.hpp"

#include <algorithm>

namespace nhc {
namespace {

enum SortOp : int { kCompare = 0, kSkip = 1, kOutputObject = 2 };

/// Number representation: 8 binary digits, or 3 one-hot decimal digits.
struct NumberCodec {
  bool decimal = false;
  int width() const { return decimal ? 30 : 8; }
  int max_value() const { return decimal ? 999 : 255; }
  Eigen::VectorXd encode(int value) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(width());
    if (decimal) {
      for (int d = 0; d < 3; ++d) {
        const int digit = (value / (d == 0 ? 100 : d == 1 ? 10 : 1)) % 10;
        v(d * 10 + digit) = 1.0;
      }
    } else {
      for (int b = 0; b < 8; ++b) v(b) = (value >> (7 - b)) & 1;
    }
    return v;
  }
  int decode(const Eigen::VectorXd& v) const {
    int value = 0;
    if (decimal) {
      for (int d = 0; d < 3; ++d) {
        Eigen::Index k = 0;
        v.segment(d * 10, 10).maxCoeff(&k);
        value = value * 10 + static_cast<int>(k);
      }
    } else {
      for (int b = 0; b < 8; ++b) value = value * 2 + (v(b) >= 0.5 ? 1 : 0);
    }
    return value;
  }
};

/// compare(o1, o2) = o1 <= o2
bool compare(int a, int b) { return a <= b; }

class SortModule final : public DataModule {
 public:
  SortModule(const TaskSample& s, NumberCodec codec) : inputs_(s.inputs), codec_(codec) {}

  InputSignals input(const Eigen::VectorXd&) override {
    ++t_;
    const std::size_t n = inputs_.size();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(4);
    Eigen::VectorXd d;
    if (t_ <= n) {
      d = inputs_[t_ - 1];
      if (t_ == 1) c(0) = 1.0;
      else if (t_ == n) c(2) = 1.0;
      else c(1) = 1.0;
    } else {
      d = Eigen::VectorXd::Zero(codec_.width());
      c(3) = 1.0;
    }
    return {d, c, c, c};
  }

  AluOutput alu(const Eigen::VectorXd& memory_data, int operation) override {
    const int w = codec_.width();
    const Eigen::VectorXd o1 = memory_data.segment(0, w);
    const int c = compare(codec_.decode(o1), codec_.decode(memory_data.segment(w, w))) ? 1 : 0;
    if (t_ > inputs_.size() && operation == kOutputObject && ++outputs_ == inputs_.size())
      halted_ = true;
    Eigen::VectorXd ca(4);
    ca << c, 1 - c, operation == kSkip ? 1 : 0, operation == kOutputObject ? 1 : 0;
    return {o1, ca};
  }

  bool halted() const override { return halted_; }
  int data_width() const override { return codec_.width(); }

 private:
  std::vector<Eigen::VectorXd> inputs_;
  NumberCodec codec_;
  std::size_t t_ = 0;
  std::size_t outputs_ = 0;
  bool halted_ = false;
};

class SortTask final : public Task {
 public:
  explicit SortTask(std::string variant)
      : variant_(std::move(variant)), codec_{variant_ == "decimal"} {}

  std::string name() const override { return "sort"; }
  std::string variant() const override { return variant_; }

  ArchitectureConfig architecture() const override {
    ArchitectureConfig cfg;
    cfg.data_word = codec_.width();
    cfg.operations = 3;
    cfg.read_heads = 2;
    cfg.input_to_controller = cfg.input_to_memory = cfg.input_to_bus = 4;
    cfg.alu_feedback_width = 4;
    cfg.feedback_bus = true;
    cfg.feedback_alu = true;
    cfg.free_gates = false;
    return cfg;
  }

  std::vector<std::string> operation_names() const override { return {"C", "S", "O"}; }

  OracleTrace oracle_trace(const TaskSample& s) const override {
    const auto& x = s.inputs;
    const std::size_t n = x.size();
    std::vector<int> value(n);
    for (std::size_t k = 0; k < n; ++k) value[k] = codec_.decode(x[k]);

    OracleTrace trace;
    trace.reserve(n + n * (n + 1));
    for (std::size_t t = 0; t < n; ++t) trace.push_back({concat({x[0], x[t]}), kSkip});

    std::vector<bool> emitted(n, false);
    for (std::size_t round = 0; round < n; ++round) {
      std::size_t cand = 0;
      while (emitted[cand]) ++cand;
      for (std::size_t k = 0; k < n; ++k) {
        if (emitted[k]) {
          trace.push_back({concat({x[cand], x[k]}), kSkip});
          continue;
        }
        trace.push_back({concat({x[cand], x[k]}), kCompare});
        if (!compare(value[cand], value[k])) cand = k;
      }
      trace.push_back({concat({x[cand], x[n - 1]}), kOutputObject});
      emitted[cand] = true;
    }
    return trace;
  }

  std::unique_ptr<DataModule> make_module(const TaskSample& s) const override {
    return std::make_unique<SortModule>(s, codec_);
  }

  bool verify_replay(const TaskSample& s, const Replay& replay) const override {
    std::vector<int> expected;
    for (const auto& x : s.inputs) expected.push_back(codec_.decode(x));
    std::stable_sort(expected.begin(), expected.end());
    std::vector<int> emitted;
    for (std::size_t k = s.inputs.size(); k < replay.outputs.size(); ++k)
      if (replay.outputs[k].control(3) == 1.0)
        emitted.push_back(codec_.decode(replay.outputs[k].data));
    return emitted == expected;
  }

 protected:
  void fill_instance(TaskSample& s, std::mt19937_64& rng) const override {
    std::uniform_int_distribution<int> number(0, codec_.max_value());
    for (int k = 0; k < s.complexity + 1; ++k) s.inputs.push_back(codec_.encode(number(rng)));
  }

 private:
  std::string variant_;
  NumberCodec codec_;
};

}  // namespace

std::unique_ptr<Task> make_sort_task(const std::string& name, const std::string& variant) {
  if (name != "sort") return nullptr;
  if (variant != "default" && variant != "decimal")
    throw ConfigError("variant '" + variant + "' is not available for sort");
  return std::make_unique<SortTask>(variant);
}

}  // namespace nhc
