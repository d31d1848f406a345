#pragma once

#include <string>
#include <vector>

#include "jetcheck/problemfile.hpp"

namespace jetcheck {

struct BuiltinExample {
  std::string name;         // also the name of the pair the file defines
  std::string description;
  std::string text;         // problem-file source
};

const std::vector<BuiltinExample>& builtin_examples();

/// Loads the builtin whose pair name matches; throws when unknown.
ProblemFile load_builtin(const std::string& name);

const BuiltinExample* find_builtin(const std::string& name);

}  // namespace jetcheck
