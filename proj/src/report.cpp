#include "jetcheck/report.hpp"

#include <iomanip>
#include <sstream>

#include "jetcheck/feasibility.hpp"

namespace jetcheck {

namespace {

const char* pass(bool ok) { return ok ? "pass" : "FAIL"; }

std::string kind_name(CandidateKind k) {
  switch (k) {
    case CandidateKind::Static:
      return "static";
    case CandidateKind::Inequality:
      return "inequality";
    case CandidateKind::Reduction:
      return "reduction";
  }
  return "?";
}

Json window_json(const RankMatrix& r) {
  Json rows = Json::array();
  for (const auto& row : r.window) rows.push_back(row);
  return rows;
}

}  // namespace

Json point_json(const Point& pt) {
  Json out = Json::object();
  for (const auto& [var, value] : pt.sorted()) out[var.str()] = value;
  return out;
}

Json verify_report_json(const VerificationReport& rep,
                        const EquivalencePair& pair,
                        const ReportContext& ctx) {
  Json j;
  j["command"] = "verify";
  j["pair"] = rep.pair_name;
  j["seed"] = ctx.seed;
  j["trials"] = ctx.trials;
  j["systems"] = {
      {"source", {{"name", pair.phi.source->name()},
                  {"states", rep.n1},
                  {"controls", rep.m}}},
      {"target", {{"name", pair.phi.target->name()},
                  {"states", rep.n2},
                  {"controls", rep.m}}},
  };
  j["checks"] = {
      {"submersion_phi", rep.submersion_phi},
      {"submersion_psi", rep.submersion_psi},
      {"contact_phi", rep.contact_phi},
      {"contact_psi", rep.contact_psi},
      {"minimal_order_phi", rep.minimal_order_phi},
      {"minimal_order_psi", rep.minimal_order_psi},
      {"roundtrip_psi_phi", rep.roundtrip_psi_phi},
      {"roundtrip_phi_psi", rep.roundtrip_phi_psi},
  };
  j["height"] = {rep.p, rep.q};
  j["declared_order"] = {pair.phi.declared_order, pair.psi.declared_order};
  j["height_dichotomy"] = {{"applicable", rep.p_q_consistency_applicable},
                           {"ok", rep.p_q_consistency}};
  j["state_count_balance"] = {{"applicable", rep.balance_applicable},
                              {"ok", rep.balance_ok},
                              {"lhs", rep.n1 + rep.p},
                              {"rhs", rep.n2 + rep.q}};
  if (rep.failure_witness)
    j["witness"] = point_json(*rep.failure_witness);
  else
    j["witness"] = nullptr;
  if (!rep.failure_detail.empty()) j["failure"] = rep.failure_detail;
  j["verdict"] = rep.verdict() ? "pass" : "fail";
  return j;
}

std::string verify_report_text(const VerificationReport& rep,
                               const EquivalencePair& pair,
                               const ReportContext& ctx) {
  std::ostringstream out;
  out << "pair " << rep.pair_name << ": " << pair.phi.source->name() << " (n1="
      << rep.n1 << ")  <->  " << pair.phi.target->name() << " (n2=" << rep.n2
      << "),  m=" << rep.m << ", seed=" << ctx.seed << "\n";
  out << "  submersion       phi: " << pass(rep.submersion_phi)
      << "   psi: " << pass(rep.submersion_psi) << "\n";
  out << "  contact          phi: " << pass(rep.contact_phi)
      << "   psi: " << pass(rep.contact_psi) << "\n";
  out << "  minimal order    phi: " << pass(rep.minimal_order_phi)
      << "   psi: " << pass(rep.minimal_order_psi) << "\n";
  out << "  roundtrip  psi o phi: " << pass(rep.roundtrip_psi_phi)
      << "   phi o psi: " << pass(rep.roundtrip_phi_psi) << "\n";
  out << "  height (p, q) = (" << rep.p << ", " << rep.q << ")\n";
  if (rep.p_q_consistency_applicable)
    out << "  equal state counts: heights must be (0,0) or both positive: "
        << pass(rep.p_q_consistency) << "\n";
  if (rep.balance_applicable)
    out << "  two controls: n1 + p = n2 + q reads " << rep.n1 + rep.p
        << " = " << rep.n2 + rep.q << ": " << pass(rep.balance_ok) << "\n";
  if (!rep.failure_detail.empty()) out << "  failure: " << rep.failure_detail << "\n";
  if (rep.failure_witness) {
    out << "  witness point:";
    for (const auto& [var, value] : rep.failure_witness->sorted())
      out << " " << var.str() << "=" << value;
    out << "\n";
  }
  out << "verdict: " << (rep.verdict() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

Json rank_matrix_json(const RankMatrix& r, const RankValidation& validation,
                      const std::string& pair_name, const ReportContext& ctx) {
  Json j;
  j["command"] = "rank-matrix";
  j["pair"] = pair_name;
  j["seed"] = ctx.seed;
  j["trials"] = ctx.trials;
  j["height"] = {r.p, r.q};
  j["n1"] = r.n1;
  j["n2"] = r.n2;
  j["m"] = r.m;
  j["r1"] = r.r1;
  j["r2"] = r.r2;
  j["margin"] = r.margin;
  j["window"] = window_json(r);
  j["stationary_tails"] = r.stationary_tails;
  j["samples_consistent"] = r.samples_consistent;
  Json failures = Json::array();
  for (const auto& item : validation.items)
    if (!item.ok)
      failures.push_back({{"constraint", item.constraint},
                          {"detail", item.detail}});
  j["validation"] = {{"constraints", validation.items.size()},
                     {"failures", failures}};
  j["verdict"] = validation.all_ok() ? "pass" : "fail";
  return j;
}

std::string rank_matrix_text(const RankMatrix& r,
                             const RankValidation& validation,
                             const std::string& pair_name,
                             const ReportContext& ctx) {
  std::ostringstream out;
  out << "rank matrix for pair " << pair_name << " (seed=" << ctx.seed
      << ")\n";
  out << "  height (p, q) = (" << r.p << ", " << r.q << "),  n1=" << r.n1
      << ", n2=" << r.n2 << ", m=" << r.m << ",  r1=" << r.r1
      << ", r2=" << r.r2 << "\n";
  out << "  window rows 0.." << r.rows() - 1 << ", columns 0.." << r.cols() - 1
      << ":\n";
  for (const auto& row : r.window) {
    out << "   ";
    for (int v : row) out << std::setw(3) << v;
    out << "\n";
  }
  out << "  stationary tails: " << (r.stationary_tails ? "yes" : "NO") << "\n";
  if (!r.samples_consistent)
    out << "  warning: samples disagreed (non-generic locus); max rule used\n";
  int failures = 0;
  for (const auto& item : validation.items)
    if (!item.ok) ++failures;
  out << "  validation: " << validation.items.size() - failures << "/"
      << validation.items.size() << " constraints hold\n";
  for (const auto& item : validation.items)
    if (!item.ok)
      out << "    FAIL " << item.constraint << ": " << item.detail << "\n";
  out << "verdict: " << (validation.all_ok() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

Json heights_json(const std::vector<HeightCandidate>& candidates, int n1,
                  int n2, int m, int p_max, int q_max, bool with_witness,
                  int margin) {
  Json j;
  j["command"] = "heights";
  j["n1"] = n1;
  j["n2"] = n2;
  j["m"] = m;
  j["pmax"] = p_max;
  j["qmax"] = q_max;
  Json list = Json::array();
  for (const auto& c : candidates) {
    Json e;
    e["p"] = c.p;
    e["q"] = c.q;
    e["r1"] = c.r1;
    e["r2"] = c.r2;
    e["kind"] = kind_name(c.kind);
    e["delta"] = c.report.delta;
    e["lhs"] = c.report.lhs;
    e["rhs"] = c.report.rhs;
    e["admissible"] = c.report.admissible;
    e["equality"] = c.report.equality;
    if (with_witness && c.kind == CandidateKind::Inequality) {
      auto witness = search_rank_matrix(n1, n2, m, c.p, c.q, c.r1, c.r2, margin);
      if (witness) {
        Json rows = Json::array();
        for (const auto& row : witness->window) rows.push_back(row);
        e["witness"] = rows;
      } else {
        e["witness"] = nullptr;
      }
    }
    list.push_back(std::move(e));
  }
  j["candidates"] = std::move(list);
  return j;
}

std::string heights_text(const std::vector<HeightCandidate>& candidates,
                         int n1, int n2, int m, int p_max, int q_max,
                         bool with_witness, int margin) {
  std::ostringstream out;
  out << "heights not ruled out for n1=" << n1 << ", n2=" << n2 << ", m=" << m
      << " (p <= " << p_max << ", q <= " << q_max << ")\n";
  out << "  semantics: candidates survive the necessary conditions; "
         "admission never certifies existence\n";
  if (candidates.empty()) {
    out << "  (none)\n";
    return out.str();
  }
  for (const auto& c : candidates) {
    out << "  (p=" << c.p << ", q=" << c.q << ")";
    if (c.kind == CandidateKind::Inequality)
      out << "  r1=" << c.r1 << " r2=" << c.r2 << "  delta=" << c.report.delta
          << "  lhs=" << c.report.lhs << " rhs=" << c.report.rhs
          << (c.report.equality ? "  (equality)" : "");
    else
      out << "  [" << kind_name(c.kind) << "]";
    out << "\n";
    if (with_witness && c.kind == CandidateKind::Inequality) {
      auto witness =
          search_rank_matrix(n1, n2, m, c.p, c.q, c.r1, c.r2, margin);
      if (witness) {
        out << "    witness window:\n";
        for (const auto& row : witness->window) {
          out << "     ";
          for (int v : row) out << std::setw(3) << v;
          out << "\n";
        }
      } else {
        out << "    no witness window exists\n";
      }
    }
  }
  return out.str();
}

}  // namespace jetcheck
