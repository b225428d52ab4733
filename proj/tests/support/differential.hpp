#pragma once

#include <string>
#include <vector>

#include "setkanren/oracle.hpp"
#include "setkanren/run.hpp"

namespace setkanren::testsup {

inline int oracle_arity(OracleTag tag) {
  switch (tag) {
    case OracleTag::Seto:
    case OracleTag::Symbolo:
    case OracleTag::Numbero:
    case OracleTag::Listo:
      return 1;
    case OracleTag::Uniono:
    case OracleTag::UnionPluso:
    case OracleTag::NotUniono:
    case OracleTag::Subtracto:
    case OracleTag::Lookupo:
      return 3;
    default:
      return 2;
  }
}

inline const char* oracle_name(OracleTag tag) {
  switch (tag) {
    case OracleTag::Eq: return "==";
    case OracleTag::Diseq: return "=/=";
    case OracleTag::Seto: return "seto";
    case OracleTag::Symbolo: return "symbolo";
    case OracleTag::Numbero: return "numbero";
    case OracleTag::Listo: return "listo";
    case OracleTag::Ino: return "ino";
    case OracleTag::NotIno: return "!ino";
    case OracleTag::Uniono: return "uniono";
    case OracleTag::UnionPluso: return "union+o";
    case OracleTag::NotUniono: return "!uniono";
    case OracleTag::Disjo: return "disjo";
    case OracleTag::NotDisjo: return "!disjo";
    case OracleTag::Subseteqo: return "subseteqo";
    case OracleTag::Subseto: return "subseto";
    case OracleTag::Subtracto: return "subtracto";
    case OracleTag::SubAbsento: return "sub-absento";
    case OracleTag::Absento: return "absento";
    case OracleTag::Freeo: return "freeo";
    case OracleTag::Lookupo: return "lookupo";
  }
  return "?";
}

// The goal for one constraint application. ts supplies the argument terms
// (literals or slots); fresh_slot must be a slot unused elsewhere, consumed
// only by the expansions that introduce an existential.
inline GoalT constraint_goal(OracleTag tag, const std::vector<TTerm>& ts, int fresh_slot) {
  switch (tag) {
    case OracleTag::Eq:
      return g_eq(ts[0], ts[1]);
    case OracleTag::Diseq:
      return g_op(OpTag::Diseq, ts);
    case OracleTag::Seto:
      return g_op(OpTag::Seto, ts);
    case OracleTag::Symbolo:
      return g_op(OpTag::Symbolo, ts);
    case OracleTag::Numbero:
      return g_op(OpTag::Numbero, ts);
    case OracleTag::Listo:
      return g_op(OpTag::Listo, ts);
    case OracleTag::Ino:
      return g_op(OpTag::Ino, ts);
    case OracleTag::NotIno:
      return g_op(OpTag::NotIno, ts);
    case OracleTag::Uniono:
      return g_op(OpTag::Uniono, ts);
    case OracleTag::UnionPluso:
      return d_union_plus(ts[0], ts[1], ts[2]);
    case OracleTag::NotUniono:
      return d_not_union(ts[0], ts[1], ts[2], fresh_slot);
    case OracleTag::Disjo:
      return g_op(OpTag::Disjo, ts);
    case OracleTag::NotDisjo:
      return d_not_disjoint(ts[0], ts[1], fresh_slot);
    case OracleTag::Subseteqo:
      return d_subseteq(ts[0], ts[1]);
    case OracleTag::Subseto:
      return d_subset(ts[0], ts[1], fresh_slot);
    case OracleTag::Subtracto:
      return d_subtract(ts[0], ts[1], ts[2]);
    case OracleTag::SubAbsento:
      return g_op(OpTag::SubAbsento, ts);
    case OracleTag::Absento:
      return g_op(OpTag::Absento, ts);
    case OracleTag::Freeo:
      return g_op(OpTag::Freeo, ts);
    case OracleTag::Lookupo:
      return g_op(OpTag::Lookupo, ts);
  }
  return g_fail();
}

// Ground decision through the solver: slot 0 is a dummy query var, slot 1
// the spare existential. One answer settles satisfiability; finite failure
// on ground arguments is part of what is under test.
inline bool engine_holds(OracleTag tag, const std::vector<Term>& args) {
  std::vector<TTerm> ts;
  for (const auto& a : args) ts.push_back(t_lit(a));
  RunOutcome res = run_query({}, constraint_goal(tag, ts, 1), 1, 2, 1, false);
  return !res.answers.empty();
}

// Same decision with a chosen argument pattern: positions whose mask bit is
// set arrive ground inside the constraint, the rest are asserted fresh and
// bound afterwards, exercising suspension and wake-up rather than the eager
// ground path.
inline bool engine_holds_mask(OracleTag tag, const std::vector<Term>& args, unsigned mask) {
  int k = static_cast<int>(args.size());
  std::vector<TTerm> ts;
  for (int i = 0; i < k; i++) {
    ts.push_back(mask & (1u << i) ? t_lit(args[static_cast<std::size_t>(i)]) : t_slot(1 + i));
  }
  std::vector<GoalT> gs;
  gs.push_back(constraint_goal(tag, ts, 1 + k));
  for (int i = 0; i < k; i++) {
    if (!(mask & (1u << i))) {
      gs.push_back(g_eq(t_slot(1 + i), t_lit(args[static_cast<std::size_t>(i)])));
    }
  }
  RunOutcome res = run_query({}, g_conj_all(gs), 1, 2 + k, 1, false);
  return !res.answers.empty();
}

inline bool engine_holds_lazy(OracleTag tag, const std::vector<Term>& args) {
  return engine_holds_mask(tag, args, 0);
}

struct Mismatch {
  OracleTag tag;
  std::vector<Term> args;
  bool oracle = false;
  bool engine = false;
  bool lazy = false;
};

inline std::string mismatch_str(const Mismatch& m) {
  std::string s = std::string("(") + oracle_name(m.tag);
  for (const auto& a : m.args) s += " " + term_str(a);
  s += m.lazy ? ") [lazy]" : ")";
  s += " oracle=" + std::string(m.oracle ? "true" : "false") +
       " engine=" + std::string(m.engine ? "true" : "false");
  return s;
}

// Exhaustive comparison of oracle and engine over every argument tuple drawn
// from the per-position pools. Stops collecting after max_mismatches but
// keeps counting checks.
struct SweepResult {
  std::uint64_t checked = 0;
  std::vector<Mismatch> mismatches;
};

inline void sweep_tuples_mask(OracleTag tag, const std::vector<std::vector<Term>>& pools,
                              unsigned mask, std::size_t max_mismatches, SweepResult& out) {
  const int arity = static_cast<int>(pools.size());
  const unsigned all = (1u << arity) - 1u;
  const bool ground = (mask & all) == all;
  std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
  std::vector<Term> args(static_cast<std::size_t>(arity));
  for (;;) {
    for (int i = 0; i < arity; i++) args[static_cast<std::size_t>(i)] = pools[i][idx[i]];
    bool want = holds(tag, args);
    bool got = ground ? engine_holds(tag, args) : engine_holds_mask(tag, args, mask);
    out.checked++;
    if (want != got && out.mismatches.size() < max_mismatches) {
      out.mismatches.push_back({tag, args, want, got, !ground});
    }
    int pos = arity - 1;
    while (pos >= 0 && ++idx[pos] == pools[pos].size()) {
      idx[pos] = 0;
      pos--;
    }
    if (pos < 0) return;
  }
}

inline void sweep_tuples(OracleTag tag, const std::vector<std::vector<Term>>& pools, bool lazy,
                         std::size_t max_mismatches, SweepResult& out) {
  const int arity = static_cast<int>(pools.size());
  sweep_tuples_mask(tag, pools, lazy ? 0u : (1u << arity) - 1u, max_mismatches, out);
}

inline SweepResult sweep(OracleTag tag, const std::vector<Term>& pool, bool lazy = false,
                         std::size_t max_mismatches = 5) {
  SweepResult res;
  std::vector<std::vector<Term>> pools(static_cast<std::size_t>(oracle_arity(tag)), pool);
  sweep_tuples(tag, pools, lazy, max_mismatches, res);
  return res;
}

}  // namespace setkanren::testsup
