#include "setkanren/run.hpp"

#include <unordered_set>

#include "setkanren/reify.hpp"
#include "setkanren/stream.hpp"

namespace setkanren {

RunOutcome run_query(const std::vector<Relation>& relations, const GoalT& body,
                     int qvar_count, int slot_count, long n, bool unique) {
  RunOutcome out;

  State st0;
  std::vector<Term> qvars;
  qvars.reserve(qvar_count);
  std::vector<Term> frame;
  frame.reserve(slot_count);
  for (int i = 0; i < slot_count; ++i) {
    Term v = var(st0.next_var++);
    frame.push_back(v);
    if (i < qvar_count) qvars.push_back(v);
  }

  Goal g = instantiate(body, frame);

  RunCtx cx;
  cx.solve.stats = &out.stats;
  cx.relations = &relations;

  std::unordered_set<std::string> seen;
  take(
      n, [&]() { return apply_goal(g, st0, cx); },
      [&](const State& st) {
        std::string a = answer_str(st, qvars);
        if (unique && !seen.insert(a).second) return true;
        out.answers.push_back(std::move(a));
        return true;
      });

  return out;
}

}  // namespace setkanren
