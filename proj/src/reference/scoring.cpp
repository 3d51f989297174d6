#include "nhc/reference.hpp"

#include "nhc/config.hpp"

#include <algorithm>
#include <functional>
#include <stack>

namespace nhc::reference {

double margin_of(const Eigen::VectorXd& raw_bus, double m_max) {
  std::vector<double> v(raw_bus.data(), raw_bus.data() + raw_bus.size());
  std::sort(v.begin(), v.end(), std::greater<>());
  const double c1 = v[0];
  const double c2 = v.size() > 1 ? v[1] : 0.0;
  if (c1 <= 0.0) return 0.0;
  if (c2 <= 0.0) return 1.0;
  const double m = (c1 / c2 - 1.0) / m_max;
  return m < 0.0 ? 0.0 : (m > 1.0 ? 1.0 : m);
}

double score_steps(const std::vector<Eigen::VectorXd>& data, const std::vector<int>& ops,
                   const std::vector<Eigen::VectorXd>& raw_bus, const OracleTrace& oracle,
                   double m_max) {
  const std::size_t t_max = oracle.size();
  std::vector<int> data_ok(t_max, 0), op_ok(t_max, 0);
  for (std::size_t k = 0; k < t_max && k < data.size(); ++k) {
    bool same = data[k].size() == oracle[k].data.size();
    for (Eigen::Index i = 0; same && i < data[k].size(); ++i) same = data[k](i) == oracle[k].data(i);
    data_ok[k] = same;
    op_ok[k] = ops[k] == oracle[k].operation;
  }
  std::size_t first_mistake = t_max;
  for (std::size_t k = 0; k < t_max; ++k) {
    if (data_ok[k] * op_ok[k] == 0) {
      first_mistake = k;
      break;
    }
  }
  double total = 0.0;
  for (std::size_t k = 0; k < first_mistake; ++k)
    total += data_ok[k] + op_ok[k] * margin_of(raw_bus[k], m_max);
  return t_max == 0 ? 0.0 : total / static_cast<double>(t_max);
}

long evaluate_postfix(const std::vector<double>& tokens, bool boolean) {
  std::stack<long> st;
  for (const double token : tokens) {
    if (token >= 0.0) {
      st.push(static_cast<long>(token + 0.5));
      continue;
    }
    if (st.size() < 2) throw std::invalid_argument("malformed postfix expression");
    const long rhs = st.top();
    st.pop();
    const long lhs = st.top();
    st.pop();
    const int code = static_cast<int>(-token + 0.5);
    long value = 0;
    if (boolean) {
      value = code == 1 ? (lhs && rhs) : (lhs || rhs);
    } else {
      if (code == 1) value = lhs + rhs;
      else if (code == 2) value = lhs - rhs;
      else if (code == 3) value = lhs * rhs;
      else value = rhs == 0 ? 0 : lhs / rhs;
      value %= 10000;
      if (value < 0) value += 10000;
    }
    st.push(value);
  }
  if (st.size() != 1) throw std::invalid_argument("malformed postfix expression");
  return st.top();
}

GridSimulator GridSimulator::for_variant(const std::string& variant) {
  if (variant == "default") return {Kind::Sokoban, 6, 4, {0, 1, 2, 3}};
  if (variant == "sokoban8") return {Kind::Sokoban, 8, 4, {0, 1, 2, 3}};
  if (variant == "recoded") return {Kind::Sokoban, 6, 4, {2, 1, 0, 3}};
  if (variant == "sliding") return {Kind::Sliding, 3, 9, {0, 1, 2, 3, 4, 5, 6, 7, 8}};
  throw ConfigError("no simulator for variant '" + variant + "'");
}

std::vector<int> GridSimulator::decode(const Eigen::VectorXd& word) const {
  std::vector<int> cells(side * side, -1);
  for (int cell = 0; cell < side * side; ++cell)
    for (int cls = 0; cls < classes; ++cls)
      if (word(cell * classes + slot_of_class[cls]) == 1.0) cells[cell] = cls;
  return cells;
}

std::optional<std::vector<int>> GridSimulator::move(const std::vector<int>& cells, int action) const {
  // Sokoban classes: 0 agent, 1 box, 2 wall, 3 empty. Sliding: 0 is the gap.
  static const int dr[] = {-1, 0, 1, 0};
  static const int dc[] = {0, 1, 0, -1};
  auto at = [&](int r, int c) { return r * side + c; };
  auto inside = [&](int r, int c) { return r >= 0 && c >= 0 && r < side && c < side; };
  const int anchor = static_cast<int>(std::find(cells.begin(), cells.end(), 0) - cells.begin());
  const int r = anchor / side, c = anchor % side;
  std::vector<int> out = cells;
  if (kind == Kind::Sliding) {
    const int tr = r - dr[action], tc = c - dc[action];
    if (!inside(tr, tc)) return std::nullopt;
    std::swap(out[at(r, c)], out[at(tr, tc)]);
    return out;
  }
  const int tr = r + dr[action], tc = c + dc[action];
  if (!inside(tr, tc)) return std::nullopt;
  const int target = cells[at(tr, tc)];
  if (target == 2) return std::nullopt;
  if (target == 1) {
    const int br = tr + dr[action], bc = tc + dc[action];
    if (!inside(br, bc) || cells[at(br, bc)] != 3) return std::nullopt;
    out[at(br, bc)] = 1;
  }
  out[at(tr, tc)] = 0;
  out[at(r, c)] = 3;
  return out;
}

}  // namespace nhc::reference
