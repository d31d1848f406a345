#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "jetcheck/equivmap.hpp"
#include "jetcheck/feasibility.hpp"
#include "jetcheck/rankmatrix.hpp"

namespace jetcheck {

using Json = nlohmann::ordered_json;

struct ReportContext {
  std::uint64_t seed{42};
  int trials{5};
};

Json verify_report_json(const VerificationReport& rep, const EquivalencePair& pair,
                        const ReportContext& ctx);
std::string verify_report_text(const VerificationReport& rep,
                               const EquivalencePair& pair,
                               const ReportContext& ctx);

Json rank_matrix_json(const RankMatrix& r, const RankValidation& validation,
                      const std::string& pair_name, const ReportContext& ctx);
std::string rank_matrix_text(const RankMatrix& r,
                             const RankValidation& validation,
                             const std::string& pair_name,
                             const ReportContext& ctx);

Json heights_json(const std::vector<HeightCandidate>& candidates, int n1,
                  int n2, int m, int p_max, int q_max, bool with_witness,
                  int margin);
std::string heights_text(const std::vector<HeightCandidate>& candidates,
                         int n1, int n2, int m, int p_max, int q_max,
                         bool with_witness, int margin);

Json point_json(const Point& pt);

}  // namespace jetcheck
