#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "jetcheck/expr.hpp"
#include "jetcheck/exprmatrix.hpp"
#include "jetcheck/parser.hpp"
#include "jetcheck/sampler.hpp"

namespace jetcheck {

/// Contact generator dx - f dt written over the coordinate differentials:
/// finitely many jet coefficients plus the dt direction.
struct OneForm {
  Expr dt_coefficient;
  std::vector<std::pair<Variable, Expr>> jet_coefficients;
};

/// Contact coframe by level: level 0 carries one form per state, every level
/// k >= 1 one form per control.
struct Coframe {
  std::vector<std::vector<OneForm>> levels;
  int depth() const { return static_cast<int>(levels.size()) - 1; }
};

/// An autonomous control system x' = f(x, u) viewed as the Pfaffian system
/// generated by dx_i - f_i dt. Controls may themselves be jet coordinates
/// (partial prolongations), in which case their `order` is the base order of
/// the jet chain they head.
class ControlSystem {
 public:
  /// Validates shapes, name resolution and the generic-rank condition
  /// rank(df/du) = m; throws NotAControlSystemError on rank deficiency.
  static ControlSystem make(std::string name, std::vector<Variable> states,
                            std::vector<Variable> controls,
                            std::vector<Expr> dynamics,
                            const Sampler& s = Sampler{},
                            std::map<std::string, Rational> constants = {});

  const std::string& name() const { return name_; }
  int n() const { return static_cast<int>(states_.size()); }
  int m() const { return static_cast<int>(controls_.size()); }
  const std::vector<Variable>& states() const { return states_; }
  const std::vector<Variable>& controls() const { return controls_; }
  const std::vector<Expr>& dynamics() const { return dynamics_; }
  const std::map<std::string, Rational>& constants() const {
    return constants_;
  }

  bool is_state(const Variable& v) const;
  bool is_coordinate(const Variable& v) const;

  /// d/dt of a single coordinate: the dynamics entry for a state, the next
  /// jet for a control jet.
  Expr coordinate_derivative(const Variable& v) const;

  /// Total derivative D_t e = sum f_i de/dx_i + sum u@(k+1) de/du@k. The
  /// systems here are autonomous, so there is no de/dt term.
  Expr total_derivative(const Expr& e) const;

  /// All coordinates of the prolongation carrying control jets of relative
  /// order 0..jet_order (states first, then jets level by level).
  std::vector<Variable> coordinates(int jet_order) const;

  /// Coordinates whose differentials index coframe level k: the states for
  /// k = 0, the relative-order-(k-1) control jets for k >= 1.
  std::vector<Variable> level_coordinates(int k) const;
  int level_size(int k) const { return k == 0 ? n() : m(); }

  Coframe contact_coframe(int depth) const;

  /// Adjoins all control derivatives up to order k as new states; the k-th
  /// jets become the controls. k = 0 returns the system unchanged.
  ControlSystem total_prolong(int k) const;

  /// Per-control prolongation: control c gains orders.at(c.name) chain
  /// states (missing names prolong by 0). The number of controls is
  /// preserved.
  ControlSystem partial_prolong(const std::map<std::string, int>& orders) const;

  /// Jacobian df/du of the dynamics with respect to the controls.
  ExprMatrix control_jacobian() const;

  /// Parsing scope exposing states, control jets of relative order
  /// 0..jet_order, and the named constants.
  Scope scope(int jet_order) const;

 private:
  ControlSystem() = default;
  void index();

  std::string name_;
  std::vector<Variable> states_;
  std::vector<Variable> controls_;
  std::vector<Expr> dynamics_;
  std::map<std::string, Rational> constants_;

  std::map<std::pair<std::string, int>, int> state_index_;
  std::map<std::string, int> control_base_order_;  // name -> order of the control
};

using SystemPtr = std::shared_ptr<const ControlSystem>;

}  // namespace jetcheck
