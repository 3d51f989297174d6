// Breadth-first search over a grid world, optionally followed by backtracking
// the path from the goal to the start (plan).

#include "nhc/tasks/grid_worlds.hpp"
#include "nhc/tasks/task.hpp"
#include "tasks/factories.hpp"

#include <set>

namespace nhc {
namespace {

constexpr int kGeneratorAttempts = 10000;

/// Moves considered when expanding `s`: all four, or only those with an effect.
std::vector<int> expansion_actions(const GridDomain& domain, const GridState& s, bool extended) {
  std::vector<int> actions;
  for (int a = 0; a < kMoveCount; ++a)
    if (!extended || domain.applicable(s, a)) actions.push_back(a);
  return actions;
}

struct SearchTree {
  std::vector<GridState> nodes;   // every generated state, in generation order
  std::vector<int> parent;        // index of the expanded node, -1 for the root
  std::vector<int> action;        // move that generated the node
  int goal = -1;                  // index of the goal node, -1 if not reached
};

/// Expands nodes FIFO until `goal` is generated. Duplicates are kept as nodes.
SearchTree expand_until(const GridDomain& domain, const GridState& start, const GridState& goal,
                        bool extended) {
  SearchTree tree;
  tree.nodes.push_back(start);
  tree.parent.push_back(-1);
  tree.action.push_back(kNoop);
  for (std::size_t e = 0; e < tree.nodes.size(); ++e) {
    const GridState node = tree.nodes[e];
    for (int a : expansion_actions(domain, node, extended)) {
      tree.nodes.push_back(domain.step(node, a));
      tree.parent.push_back(static_cast<int>(e));
      tree.action.push_back(a);
      if (tree.nodes.back() == goal) {
        tree.goal = static_cast<int>(tree.nodes.size()) - 1;
        return tree;
      }
    }
  }
  return tree;
}

class SearchModule final : public DataModule {
 public:
  SearchModule(const GridDomain& domain, const TaskSample& s, bool plan, bool extended)
      : domain_(domain), start_(s.start), goal_(s.goal), plan_(plan), extended_(extended) {}

  InputSignals input(const Eigen::VectorXd& previous_output) override {
    ++t_;
    const Eigen::VectorXd d = t_ == 1 ? start_ : previous_output;
    const Eigen::VectorXd& target = found_ ? start_ : goal_;
    const double e = d.size() == target.size() && d == target ? 1.0 : 0.0;
    const double c2_prev = found_ ? 1.0 : 0.0;
    Eigen::VectorXd cp(4);
    cp << std::max(0.0, 1.0 - e - c2_prev), std::min(1.0, e + c2_prev), (1.0 - e) * c2_prev,
        e * c2_prev;
    found_ = cp(1) == 1.0;
    halted_ = plan_ ? cp(3) == 1.0 : cp(1) == 1.0;

    Eigen::VectorXd to_memory = cp;
    if (extended_) {
      const GridState state = domain_.decode(d);
      Eigen::VectorXd mask = Eigen::VectorXd::Zero(kMoveCount + 1);
      for (int a = 0; a < kMoveCount; ++a) mask(a) = domain_.applicable(state, a) ? 1.0 : 0.0;
      to_memory = concat({mask, cp});
    }
    return {d, cp, to_memory, cp};
  }

  AluOutput alu(const Eigen::VectorXd& memory_data, int operation) override {
    Eigen::VectorXd ca = Eigen::VectorXd::Zero(3);
    if (operation == kNoop) {
      ca << 0.0, 1.0, 1.0;
      return {memory_data, ca};
    }
    const GridState state = domain_.decode(memory_data);
    const auto actions = expansion_actions(domain_, state, extended_);
    const double last = !actions.empty() && actions.back() == operation ? 1.0 : 0.0;
    ca << last, 1.0 - last, 0.0;
    return {domain_.encode(domain_.step(state, operation)), ca};
  }

  bool halted() const override { return halted_; }
  int data_width() const override { return domain_.encoding_width(); }

 private:
  const GridDomain& domain_;
  Eigen::VectorXd start_;
  Eigen::VectorXd goal_;
  bool plan_;
  bool extended_;
  std::size_t t_ = 0;
  bool found_ = false;
  bool halted_ = false;
};

class SearchTask final : public Task {
 public:
  SearchTask(bool plan, bool extended, std::string variant)
      : plan_(plan), extended_(extended), variant_(std::move(variant)),
        domain_(make_grid_domain(variant_)) {}

  std::string name() const override {
    return std::string(plan_ ? "plan" : "search") + (extended_ ? "+" : "");
  }
  std::string variant() const override { return variant_; }

  ArchitectureConfig architecture() const override {
    ArchitectureConfig cfg;
    cfg.data_word = domain_->encoding_width();
    cfg.operations = 5;
    cfg.read_heads = 1;
    cfg.input_to_controller = cfg.input_to_bus = 4;
    cfg.input_to_memory = extended_ ? kMoveCount + 1 + 4 : 4;
    cfg.alu_feedback_width = 3;
    cfg.feedback_bus = true;
    cfg.feedback_alu = true;
    cfg.free_gates = false;
    return cfg;
  }

  std::vector<std::string> operation_names() const override { return {"U", "R", "D", "L", "N"}; }

  OracleTrace oracle_trace(const TaskSample& s) const override {
    const GridState start = domain_->decode(s.start);
    const GridState goal = domain_->decode(s.goal);
    const SearchTree tree = expand_until(*domain_, start, goal, extended_);
    if (tree.goal < 0) throw GeneratorError("goal is unreachable from the start state");

    OracleTrace trace;
    // Every generated node except the goal was produced by expanding its parent.
    for (int k = 1; k <= tree.goal; ++k)
      trace.push_back({domain_->encode(tree.nodes[tree.parent[k]]), tree.action[k]});
    trace.push_back({s.goal, kNoop});
    if (plan_) {
      for (int k = tree.parent[tree.goal]; k >= 0; k = tree.parent[k])
        trace.push_back({domain_->encode(tree.nodes[k]), kNoop});
      trace.push_back({s.start, kNoop});
    }
    return trace;
  }

  std::unique_ptr<DataModule> make_module(const TaskSample& s) const override {
    return std::make_unique<SearchModule>(*domain_, s, plan_, extended_);
  }

  bool verify_replay(const TaskSample& s, const Replay& replay) const override {
    if (replay.inputs.empty()) return false;
    const auto& last = replay.inputs.back();
    if (!plan_) return last.data == s.goal && last.to_controller(1) == 1.0;
    if (last.to_controller(3) != 1.0) return false;

    // Backtracked states: from the first step that saw the goal to the end.
    std::size_t first = 0;
    while (first < replay.inputs.size() && replay.inputs[first].to_controller(1) != 1.0) ++first;
    std::vector<GridState> path;
    for (std::size_t k = first; k < replay.inputs.size(); ++k) {
      const GridState state = domain_->decode(replay.inputs[k].data);
      if (path.empty() || path.back() != state) path.push_back(state);
    }
    if (path.empty() || path.front() != domain_->decode(s.goal) ||
        path.back() != domain_->decode(s.start))
      return false;
    // Executing the reversed path from the start must step through each state.
    for (std::size_t k = path.size() - 1; k > 0; --k) {
      bool linked = false;
      for (int a = 0; a < kMoveCount && !linked; ++a) {
        const auto next = domain_->apply(path[k], a);
        linked = next && *next == path[k - 1];
      }
      if (!linked) return false;
    }
    return true;
  }

 protected:
  void fill_instance(TaskSample& s, std::mt19937_64& rng) const override {
    const int explored = s.complexity;
    for (int attempt = 0; attempt < kGeneratorAttempts; ++attempt)
      if (try_world(s, rng, explored, false)) return;
    // Some domains have no world where expansion `explored` generates a new
    // state (the sliding puzzle at level 8, where that node is always a
    // duplicate). Take the first later expansion that does.
    for (int attempt = 0; attempt < kGeneratorAttempts; ++attempt)
      if (try_world(s, rng, explored, true)) return;
    throw GeneratorError("no world with " + std::to_string(explored) + " explored nodes after " +
                         std::to_string(kGeneratorAttempts) + " attempts");
  }

 private:
  /// Expands nodes FIFO from a random start and picks the goal among the
  /// states first generated while expanding node `explored`, or the first
  /// later node that generates any when `later` is set.
  bool try_world(TaskSample& s, std::mt19937_64& rng, int explored, bool later) const {
    const GridState start = domain_->random_state(rng);
    if (expansion_actions(*domain_, start, true).empty()) return false;
    std::vector<GridState> nodes{start};
    std::set<GridState> seen{start};
    std::vector<GridState> candidates;
    for (int e = 0; e < static_cast<int>(nodes.size()); ++e) {
      if (e >= explored && (!later || !candidates.empty() || e >= explored + kGeneratorAttempts)) break;
      const GridState node = nodes[e];
      for (int a : expansion_actions(*domain_, node, extended_)) {
        GridState child = domain_->step(node, a);
        const bool fresh = seen.insert(child).second;
        if (fresh && e >= explored - 1) candidates.push_back(child);
        nodes.push_back(std::move(child));
      }
    }
    if (candidates.empty()) return false;
    const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng);
    s.start = domain_->encode(start);
    s.goal = domain_->encode(candidates[pick]);
    s.inputs = {s.start, s.goal};
    return true;
  }

  bool plan_;
  bool extended_;
  std::string variant_;
  std::unique_ptr<GridDomain> domain_;
};

}  // namespace

std::unique_ptr<Task> make_search_task(const std::string& name, const std::string& variant) {
  bool plan = false, extended = false;
  if (name == "search") {
  } else if (name == "search+") {
    extended = true;
  } else if (name == "plan") {
    plan = true;
  } else if (name == "plan+") {
    plan = extended = true;
  } else {
    return nullptr;
  }
  return std::make_unique<SearchTask>(plan, extended, variant);
}

}  // namespace nhc
