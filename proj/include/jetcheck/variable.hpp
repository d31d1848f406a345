#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace jetcheck {

enum class VarKind {
  Time,        // reserved; systems here are autonomous and never sample it
  State,
  ControlJet,  // k-th derivative of a control, written name@k (order 0 = the control)
};

/// A coordinate on some prolongation. Identity is (name, order): the kind is
/// the owning system's classification and changes when a jet is reclassified
/// as a state under partial prolongation.
struct Variable {
  VarKind kind{VarKind::State};
  std::string name;
  int order{0};

  friend bool operator==(const Variable& a, const Variable& b) {
    return a.order == b.order && a.name == b.name;
  }
  friend bool operator<(const Variable& a, const Variable& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.order < b.order;
  }

  std::string str() const {
    if (order == 0) return name;
    return name + "@" + std::to_string(order);
  }
};

inline Variable state_var(std::string name, int order = 0) {
  return Variable{VarKind::State, std::move(name), order};
}
inline Variable jet_var(std::string name, int order = 0) {
  return Variable{VarKind::ControlJet, std::move(name), order};
}

struct VariableHash {
  std::size_t operator()(const Variable& v) const {
    return std::hash<std::string>()(v.name) * 1000003u +
           static_cast<std::size_t>(v.order);
  }
};

/// Total assignment of reals to the variables of the expressions it is used
/// with.
class Point {
 public:
  void set(const Variable& v, double value) { values_[v] = value; }

  std::optional<double> get(const Variable& v) const {
    auto it = values_.find(v);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return values_.size(); }

  /// Entries sorted by (name, order), for deterministic rendering.
  std::vector<std::pair<Variable, double>> sorted() const {
    std::vector<std::pair<Variable, double>> out(values_.begin(),
                                                 values_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

 private:
  std::unordered_map<Variable, double, VariableHash> values_;
};

}  // namespace jetcheck
