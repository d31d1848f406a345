#include "jetcheck/equivmap.hpp"

#include <algorithm>

#include "jetcheck/errors.hpp"

namespace jetcheck {

ProlongedMap::ProlongedMap(const EquivalenceMap& map, int depth) : map_(&map) {
  if (depth < 0) throw Error("prolongation depth must be nonnegative");
  state_components_ = map.state_components;
  control_jets_.push_back(map.control_components);
  for (int k = 1; k <= depth; ++k) {
    std::vector<Expr> next;
    next.reserve(control_jets_.back().size());
    for (const auto& e : control_jets_.back())
      next.push_back(map.source->total_derivative(e));
    control_jets_.push_back(std::move(next));
  }
}

std::vector<Expr> ProlongedMap::flatten() const {
  std::vector<Expr> out = state_components_;
  for (const auto& level : control_jets_)
    out.insert(out.end(), level.begin(), level.end());
  return out;
}

std::unordered_map<Variable, Expr, VariableHash> ProlongedMap::as_substitution()
    const {
  std::unordered_map<Variable, Expr, VariableHash> subs;
  const auto& target = *map_->target;
  for (int i = 0; i < target.n(); ++i)
    subs[target.states()[i]] = state_components_[i];
  for (std::size_t k = 0; k < control_jets_.size(); ++k) {
    for (int a = 0; a < target.m(); ++a) {
      const Variable& c = target.controls()[a];
      subs[jet_var(c.name, c.order + static_cast<int>(k))] =
          control_jets_[k][a];
    }
  }
  return subs;
}

Point ProlongedMap::image_point(const Point& source_pt) const {
  Point out;
  const auto& target = *map_->target;
  for (int i = 0; i < target.n(); ++i)
    out.set(target.states()[i], evaluate(state_components_[i], source_pt));
  for (std::size_t k = 0; k < control_jets_.size(); ++k) {
    for (int a = 0; a < target.m(); ++a) {
      const Variable& c = target.controls()[a];
      out.set(jet_var(c.name, c.order + static_cast<int>(k)),
              evaluate(control_jets_[k][a], source_pt));
    }
  }
  return out;
}

bool check_submersion(const EquivalenceMap& map, const Sampler& s) {
  std::vector<Variable> coords = map.source->coordinates(map.declared_order);
  std::vector<Expr> comps = map.state_components;
  comps.insert(comps.end(), map.control_components.begin(),
               map.control_components.end());

  ExprMatrix jac(static_cast<int>(comps.size()),
                 static_cast<int>(coords.size()));
  for (std::size_t r = 0; r < comps.size(); ++r)
    for (std::size_t c = 0; c < coords.size(); ++c)
      jac.at(static_cast<int>(r), static_cast<int>(c)) =
          differentiate(comps[r], coords[c]);
  return generic_rank(jac, s) == map.target->n() + map.target->m();
}

ZeroTestResult check_contact_preservation(const EquivalenceMap& map,
                                          const Sampler& s) {
  const ControlSystem& target = *map.target;
  std::unordered_map<Variable, Expr, VariableHash> subs;
  for (int i = 0; i < target.n(); ++i)
    subs[target.states()[i]] = map.state_components[i];
  for (int a = 0; a < target.m(); ++a)
    subs[target.controls()[a]] = map.control_components[a];

  for (int i = 0; i < target.n(); ++i) {
    Expr residual = map.source->total_derivative(map.state_components[i]) -
                    substitute(target.dynamics()[i], subs);
    ZeroTestResult r = zero_test(residual, s);
    if (!r.is_zero) return r;
  }
  return ZeroTestResult{};
}

int effective_order(const EquivalenceMap& map, const Sampler& s) {
  const auto& base = map.source->controls();
  int order = 0;
  std::vector<Expr> comps = map.state_components;
  comps.insert(comps.end(), map.control_components.begin(),
               map.control_components.end());
  for (const auto& e : comps) {
    for (const auto& v : free_variables(e)) {
      auto it = std::find_if(base.begin(), base.end(), [&](const Variable& c) {
        return c.name == v.name && v.order >= c.order;
      });
      if (it == base.end()) continue;
      int rel = v.order - it->order;
      if (rel <= order) continue;
      if (!is_identically_zero(differentiate(e, v), s)) order = rel;
    }
  }
  return order;
}

RoundtripResult check_roundtrip_direction(const EquivalenceMap& outer,
                                          const EquivalenceMap& inner,
                                          const Sampler& s) {
  // outer o (inner lifted to outer's declared order) == identity on
  // inner.source
  auto lift = prolong_map(inner, outer.declared_order);
  auto subs = lift.as_substitution();

  RoundtripResult result;
  const ControlSystem& sys = *inner.source;
  std::vector<Variable> coords = sys.states();
  for (const auto& c : sys.controls()) coords.push_back(c);

  for (std::size_t i = 0; i < coords.size(); ++i) {
    const Expr& comp = i < static_cast<std::size_t>(sys.n())
                           ? outer.state_components[i]
                           : outer.control_components[i - sys.n()];
    Expr residual = substitute(comp, subs) - Expr::variable(coords[i]);
    ZeroTestResult r = zero_test(residual, s);
    if (!r.is_zero) {
      result.ok = false;
      result.failing_coordinate = coords[i].str();
      result.witness = r.witness;
      return result;
    }
  }
  return result;
}

VerificationReport verify_equivalence(const EquivalencePair& pair,
                                      const Sampler& s) {
  const EquivalenceMap& phi = pair.phi;
  const EquivalenceMap& psi = pair.psi;
  if (phi.source->m() != phi.target->m())
    throw ControlCountMismatchError(
        "dynamically equivalent systems must have the same number of "
        "control variables (got m = " +
        std::to_string(phi.source->m()) + " and m = " +
        std::to_string(phi.target->m()) + ")");
  if (phi.source.get() != psi.target.get() ||
      phi.target.get() != psi.source.get())
    throw Error("pair '" + pair.name +
                "': phi and psi do not connect the same two systems");

  VerificationReport rep;
  rep.pair_name = pair.name;
  rep.n1 = phi.source->n();
  rep.n2 = phi.target->n();
  rep.m = phi.source->m();

  rep.submersion_phi = check_submersion(phi, s);
  rep.submersion_psi = check_submersion(psi, s);

  ZeroTestResult contact_phi = check_contact_preservation(phi, s);
  ZeroTestResult contact_psi = check_contact_preservation(psi, s);
  rep.contact_phi = contact_phi.is_zero;
  rep.contact_psi = contact_psi.is_zero;
  if (!contact_phi.is_zero && !rep.failure_witness) {
    rep.failure_witness = contact_phi.witness;
    rep.failure_detail = "contact preservation fails for phi";
  }
  if (!contact_psi.is_zero && !rep.failure_witness) {
    rep.failure_witness = contact_psi.witness;
    rep.failure_detail = "contact preservation fails for psi";
  }

  rep.p = effective_order(phi, s);
  rep.q = effective_order(psi, s);
  rep.minimal_order_phi = rep.p == phi.declared_order;
  rep.minimal_order_psi = rep.q == psi.declared_order;

  RoundtripResult tau = check_roundtrip_direction(psi, phi, s);
  RoundtripResult sigma = check_roundtrip_direction(phi, psi, s);
  rep.roundtrip_psi_phi = tau.ok;
  rep.roundtrip_phi_psi = sigma.ok;
  if (!tau.ok && !rep.failure_witness) {
    rep.failure_witness = tau.witness;
    rep.failure_detail =
        "roundtrip psi o phi fails at coordinate " + tau.failing_coordinate;
  }
  if (!sigma.ok && !rep.failure_witness) {
    rep.failure_witness = sigma.witness;
    rep.failure_detail =
        "roundtrip phi o psi fails at coordinate " + sigma.failing_coordinate;
  }

  if (rep.n1 == rep.n2) {
    rep.p_q_consistency_applicable = true;
    rep.p_q_consistency =
        (rep.p == 0 && rep.q == 0) || (rep.p > 0 && rep.q > 0);
  }
  if (rep.m == 2) {
    rep.balance_applicable = true;
    rep.balance_ok = rep.n1 + rep.p == rep.n2 + rep.q;
  }
  return rep;
}

}  // namespace jetcheck
