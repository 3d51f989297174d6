// Copy, repeatCopy, reverse and duplicated: pure data management, the ALU
// forwards what was read.

#include "nhc/tasks/task.hpp"
#include "tasks/factories.hpp"

#include <algorithm>
#include <set>

namespace nhc {
namespace {

enum class CopyKind { Copy, RepeatCopy, Reverse, Duplicated };
enum CopyOp : int { kOutput = 0, kMark = 1 };

constexpr int kObjectSymbols = 6;

/// Object representation: binary symbols (one value per symbol) or decimal
/// digits (one-hot of width 10 per symbol).
struct ObjectCodec {
  bool decimal = false;
  int width() const { return decimal ? kObjectSymbols * 10 : kObjectSymbols; }
  Eigen::VectorXd random(std::mt19937_64& rng) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(width());
    for (int s = 0; s < kObjectSymbols; ++s) {
      if (decimal)
        v(s * 10 + std::uniform_int_distribution<int>(0, 9)(rng)) = 1.0;
      else
        v(s) = std::uniform_int_distribution<int>(0, 1)(rng);
    }
    return v;
  }
};

bool same(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() && a == b;
}

class CopyModule final : public DataModule {
 public:
  CopyModule(CopyKind kind, const TaskSample& s, int width)
      : kind_(kind), inputs_(s.inputs), width_(width) {
    const std::size_t n = inputs_.size();
    if (kind_ == CopyKind::Duplicated) {
      marks_needed_ = 1;
    } else {
      marks_needed_ = n * (kind_ == CopyKind::RepeatCopy ? s.repeats : 1);
    }
  }

  InputSignals input(const Eigen::VectorXd&) override {
    ++t_;
    const std::size_t n = inputs_.size();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(4);
    Eigen::VectorXd d;
    if (t_ <= n) {
      d = inputs_[t_ - 1];
      if (kind_ == CopyKind::Duplicated) {
        const bool first = t_ == 1 || !same(inputs_[t_ - 1], inputs_[t_ - 2]);
        c(0) = first ? 1.0 : 0.0;
        c(1) = first ? 0.0 : 1.0;
        c(2) = t_ == n ? 1.0 : 0.0;
      } else {
        c(0) = t_ == 1 ? 1.0 : 0.0;
        c(2) = t_ == n ? 1.0 : 0.0;
        c(1) = (c(0) == 0.0 && c(2) == 0.0) ? 1.0 : 0.0;
      }
    } else {
      d = Eigen::VectorXd::Zero(width_);
      c(3) = 1.0;
    }
    return {d, c, c, c};
  }

  AluOutput alu(const Eigen::VectorXd& memory_data, int operation) override {
    if (t_ > inputs_.size() && operation == kMark && ++marks_ >= marks_needed_) halted_ = true;
    Eigen::VectorXd ca = Eigen::VectorXd::Zero(2);
    ca(operation) = 1.0;
    return {memory_data, ca};
  }

  bool halted() const override { return halted_; }
  int data_width() const override { return width_; }

 private:
  CopyKind kind_;
  std::vector<Eigen::VectorXd> inputs_;
  int width_;
  std::size_t t_ = 0;
  std::size_t marks_ = 0;
  std::size_t marks_needed_ = 0;
  bool halted_ = false;
};

class CopyTask final : public Task {
 public:
  CopyTask(CopyKind kind, std::string variant)
      : kind_(kind), variant_(std::move(variant)), codec_{variant_ == "decimal"} {}

  std::string name() const override {
    switch (kind_) {
      case CopyKind::Copy: return "copy";
      case CopyKind::RepeatCopy: return "repeatCopy";
      case CopyKind::Reverse: return "reverse";
      case CopyKind::Duplicated: return "duplicated";
    }
    return "copy";
  }
  std::string variant() const override { return variant_; }

  ArchitectureConfig architecture() const override {
    ArchitectureConfig cfg;
    cfg.data_word = codec_.width();
    cfg.operations = 2;
    cfg.read_heads = 1;
    cfg.input_to_controller = cfg.input_to_memory = cfg.input_to_bus = 4;
    cfg.alu_feedback_width = 2;
    cfg.feedback_bus = true;
    cfg.feedback_alu = false;
    cfg.free_gates = true;
    return cfg;
  }

  std::vector<std::string> operation_names() const override { return {"O", "M"}; }

  OracleTrace oracle_trace(const TaskSample& s) const override {
    OracleTrace trace;
    const auto& x = s.inputs;
    const std::size_t n = x.size();
    switch (kind_) {
      case CopyKind::Copy:
        for (std::size_t t = 0; t < n; ++t) trace.push_back({x[0], kOutput});
        for (std::size_t k = 0; k < n; ++k) trace.push_back({x[k], kMark});
        break;
      case CopyKind::Reverse:
        for (std::size_t t = 0; t < n; ++t) trace.push_back({x[t], kOutput});
        for (std::size_t k = 0; k < n; ++k) trace.push_back({x[n - 1 - k], kMark});
        break;
      case CopyKind::RepeatCopy:
        for (std::size_t t = 0; t < n; ++t) trace.push_back({x[0], kOutput});
        for (int r = 0; r < s.repeats; ++r)
          for (std::size_t k = 0; k < n; ++k) trace.push_back({x[k], kMark});
        break;
      case CopyKind::Duplicated: {
        for (std::size_t t = 0; t < n; ++t) trace.push_back({x[0], kOutput});
        const auto unique = unique_objects(s);
        for (std::size_t k = 0; k < unique.size(); ++k)
          trace.push_back({unique[k], k + 1 == unique.size() ? kMark : kOutput});
        break;
      }
    }
    return trace;
  }

  std::unique_ptr<DataModule> make_module(const TaskSample& s) const override {
    return std::make_unique<CopyModule>(kind_, s, codec_.width());
  }

  bool verify_replay(const TaskSample& s, const Replay& replay) const override {
    const std::size_t n = s.inputs.size();
    std::vector<Eigen::VectorXd> emitted;
    for (std::size_t k = n; k < replay.outputs.size(); ++k)
      emitted.push_back(replay.outputs[k].data);
    std::vector<Eigen::VectorXd> expected;
    switch (kind_) {
      case CopyKind::Copy: expected = s.inputs; break;
      case CopyKind::Reverse: expected.assign(s.inputs.rbegin(), s.inputs.rend()); break;
      case CopyKind::RepeatCopy:
        for (int r = 0; r < s.repeats; ++r)
          expected.insert(expected.end(), s.inputs.begin(), s.inputs.end());
        break;
      case CopyKind::Duplicated: expected = unique_objects(s); break;
    }
    if (emitted.size() != expected.size()) return false;
    for (std::size_t k = 0; k < expected.size(); ++k)
      if (!same(emitted[k], expected[k])) return false;
    return true;
  }

 protected:
  void fill_instance(TaskSample& s, std::mt19937_64& rng) const override {
    const int level = s.complexity;
    switch (kind_) {
      case CopyKind::Copy:
      case CopyKind::Reverse:
        for (int k = 0; k < level; ++k) s.inputs.push_back(codec_.random(rng));
        break;
      case CopyKind::RepeatCopy: {
        s.repeats = level;
        const int n = std::uniform_int_distribution<int>(1, 6)(rng);
        for (int k = 0; k < n; ++k) s.inputs.push_back(codec_.random(rng));
        break;
      }
      case CopyKind::Duplicated: {
        s.repeats = level;
        const int n = std::uniform_int_distribution<int>(1, 6)(rng);
        std::vector<Eigen::VectorXd> objects;
        while (static_cast<int>(objects.size()) < n) {
          Eigen::VectorXd o = codec_.random(rng);
          if (std::none_of(objects.begin(), objects.end(),
                           [&](const Eigen::VectorXd& p) { return same(p, o); }))
            objects.push_back(std::move(o));
        }
        for (const auto& o : objects)
          for (int r = 0; r < level; ++r) s.inputs.push_back(o);
        break;
      }
    }
  }

 private:
  static std::vector<Eigen::VectorXd> unique_objects(const TaskSample& s) {
    std::vector<Eigen::VectorXd> out;
    for (std::size_t t = 0; t < s.inputs.size(); ++t)
      if (t == 0 || !same(s.inputs[t], s.inputs[t - 1])) out.push_back(s.inputs[t]);
    return out;
  }

  CopyKind kind_;
  std::string variant_;
  ObjectCodec codec_;
};

}  // namespace

std::unique_ptr<Task> make_copy_task(const std::string& name, const std::string& variant) {
  CopyKind kind;
  if (name == "copy") kind = CopyKind::Copy;
  else if (name == "repeatCopy") kind = CopyKind::RepeatCopy;
  else if (name == "reverse") kind = CopyKind::Reverse;
  else if (name == "duplicated") kind = CopyKind::Duplicated;
  else return nullptr;
  if (variant != "default" && variant != "decimal")
    throw ConfigError("variant '" + variant + "' is not available for " + name);
  return std::make_unique<CopyTask>(kind, variant);
}

}  // namespace nhc
