#pragma once

#include <map>
#include <string>

#include "jetcheck/equivmap.hpp"

namespace jetcheck {

/// A parsed problem file: named systems, maps and pairs plus the sampler
/// configuration. Sections:
///
///   [sampler]            seed = 42 / trials = 5 / box = [-2, 2]
///   [constants]          e = 1/100          (visible to every scope)
///   [system NAME]        states = [..] / controls = [..]
///                        constant.c = 1/2 / dynamics.<state> = "expr"
///   [map NAME]           from = SYS / to = SYS / order = k
///                        state.<var> = "expr" / control.<var> = "expr"
///   [pair NAME]          phi = MAP / psi = MAP
///
/// '#' starts a comment; list and jet tokens use the name@k convention.
struct ProblemFile {
  Sampler sampler;
  std::map<std::string, SystemPtr> systems;
  std::map<std::string, EquivalenceMap> maps;
  std::map<std::string, EquivalencePair> pairs;

  const EquivalencePair& pair(const std::string& name) const;
  const SystemPtr& system(const std::string& name) const;
};

ProblemFile parse_problem_file(const std::string& text);

/// Renders a system as a problem-file section (used by the prolong command).
std::string render_system_section(const ControlSystem& sys);

}  // namespace jetcheck
