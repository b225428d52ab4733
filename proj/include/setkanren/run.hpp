#pragma once

#include <string>
#include <vector>

#include "setkanren/goal.hpp"
#include "setkanren/solve.hpp"

namespace setkanren {

struct RunOutcome {
  std::vector<std::string> answers;
  SolveStats stats;
};

// Runs `body` against `relations` and reifies each answer state over the
// query variables, which occupy slots [0, qvar_count) of the body frame.
// n < 0 asks for every answer; unique drops textual duplicates, keeping
// the first occurrence.
RunOutcome run_query(const std::vector<Relation>& relations, const GoalT& body,
                     int qvar_count, int slot_count, long n, bool unique);

}  // namespace setkanren
