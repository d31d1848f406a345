#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetcheck/system.hpp"
#include "jetcheck/zerotest.hpp"

namespace jetcheck {

/// A candidate map source^(order) -> target given by one expression per
/// target state and per target control, over the source coordinates
/// prolonged to the declared order.
struct EquivalenceMap {
  std::string name;
  SystemPtr source;
  SystemPtr target;
  int declared_order{0};
  std::vector<Expr> state_components;    // indexed like target->states()
  std::vector<Expr> control_components;  // indexed like target->controls()

  const Expr& component_for_target_state(int i) const {
    return state_components[i];
  }
};

struct EquivalencePair {
  std::string name;
  EquivalenceMap phi;  // M^(p) -> N
  EquivalenceMap psi;  // N^(q) -> M
};

/// Components of the induced map through target jet level `depth`:
/// jets(0) are the state components, jets(k >= 1) the level-k control-jet
/// components (k-1 total derivatives of the control components).
class ProlongedMap {
 public:
  ProlongedMap(const EquivalenceMap& map, int depth);

  int depth() const { return static_cast<int>(control_jets_.size()) - 1; }
  const std::vector<Expr>& states() const { return state_components_; }
  /// control jets of order k (k = 0 are the control components themselves)
  const std::vector<Expr>& control_jets(int k) const {
    return control_jets_[k];
  }
  /// component for the coordinate indexing target coframe level k
  const std::vector<Expr>& level_components(int k) const {
    return k == 0 ? state_components_ : control_jets_[k - 1];
  }

  /// All components as one list: states, then jets level by level.
  std::vector<Expr> flatten() const;

  /// Substitution sending each target^(depth) coordinate to its component.
  std::unordered_map<Variable, Expr, VariableHash> as_substitution() const;

  /// Image of a source point under the induced map.
  Point image_point(const Point& source_pt) const;

  const EquivalenceMap& base() const { return *map_; }

 private:
  const EquivalenceMap* map_;
  std::vector<Expr> state_components_;
  std::vector<std::vector<Expr>> control_jets_;
};

inline ProlongedMap prolong_map(const EquivalenceMap& map, int depth) {
  return ProlongedMap(map, depth);
}

/// True iff the Jacobian of all components with respect to all source
/// prolongation coordinates has generic rank dim(target).
bool check_submersion(const EquivalenceMap& map, const Sampler& s);

/// Level-0 contact preservation: the pullback of every target contact
/// generator lies in the span of the source contact forms, i.e. for each
/// target state the residual D_t(state component) - g o (components)
/// vanishes identically. Higher levels hold by construction of the lift.
ZeroTestResult check_contact_preservation(const EquivalenceMap& map,
                                          const Sampler& s);

/// Smallest k such that every component's partial derivative with respect to
/// source control jets of relative order > k is identically zero.
int effective_order(const EquivalenceMap& map, const Sampler& s);

struct RoundtripResult {
  bool ok{true};
  std::string failing_coordinate;
  std::optional<Point> witness;
};

/// Substitutes the induced prolongation of one map into the other and tests
/// that every source coordinate comes back identically.
RoundtripResult check_roundtrip_direction(const EquivalenceMap& outer,
                                          const EquivalenceMap& inner,
                                          const Sampler& s);

struct VerificationReport {
  std::string pair_name;
  int n1{0}, n2{0}, m{0};
  int p{0}, q{0};                    // effective heights
  bool submersion_phi{false}, submersion_psi{false};
  bool contact_phi{false}, contact_psi{false};
  bool minimal_order_phi{false}, minimal_order_psi{false};
  bool roundtrip_psi_phi{false};     // psi o phi-lift == id on M
  bool roundtrip_phi_psi{false};     // phi o psi-lift == id on N
  bool p_q_consistency{true};        // dichotomy check when n1 == n2
  bool p_q_consistency_applicable{false};
  bool balance_applicable{false};      // m == 2 cross-check n1 + p == n2 + q
  bool balance_ok{true};
  std::optional<Point> failure_witness;
  std::string failure_detail;

  bool verdict() const {
    return submersion_phi && submersion_psi && contact_phi && contact_psi &&
           minimal_order_phi && minimal_order_psi && roundtrip_psi_phi &&
           roundtrip_phi_psi && p_q_consistency;
  }
};

/// Runs every check of the equivalence definition and aggregates the flags.
/// Throws ControlCountMismatchError when the systems do not share m.
VerificationReport verify_equivalence(const EquivalencePair& pair,
                                      const Sampler& s);

}  // namespace jetcheck
