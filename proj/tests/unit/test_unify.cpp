#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "setkanren/oracle.hpp"
#include "setkanren/solve.hpp"

using namespace setkanren;

namespace {

Term set_of(std::vector<Term> elems) { return set_cell(std::move(elems), empty_set()); }

States try_unify(const Term& u, const Term& v, const State& st) {
  Ctx cx;
  return unify(u, v, st, cx);
}

bool unifies(const Term& u, const Term& v) {
  State st;
  return !try_unify(u, v, st).empty();
}

}  // namespace

TEST_CASE("atoms and pairs unify structurally") {
  CHECK(unifies(num(1), num(1)));
  CHECK(!unifies(num(1), num(2)));
  CHECK(!unifies(num(1), sym("1")));
  CHECK(unifies(cons(num(1), nil()), cons(num(1), nil())));
  CHECK(!unifies(cons(num(1), nil()), cons(num(2), nil())));
  CHECK(!unifies(nil(), empty_set()));
  CHECK(!unifies(boolean(false), nil()));
}

TEST_CASE("variable bindings walk through the substitution") {
  State st;
  st.next_var = 2;
  Term x = var(0);
  Term y = var(1);
  States r1 = try_unify(x, y, st);
  REQUIRE(r1.size() == 1);
  States r2 = try_unify(y, num(7), r1[0]);
  REQUIRE(r2.size() == 1);
  CHECK(term_str(walk(x, r2[0].subst)) == "7");
}

TEST_CASE("occurs check rejects cyclic pairs but absorbs set tails") {
  State st;
  st.next_var = 1;
  Term x = var(0);
  CHECK(try_unify(x, cons(num(1), x), st).empty());

  // x = {1 | x} pins 1 into x without a cycle: x = {1 | fresh}.
  States r = try_unify(x, set_cell({num(1)}, x), st);
  REQUIRE(!r.empty());
  Term got = walk_deep(x, r[0].subst);
  REQUIRE(is_set_cell(got));
  CHECK(term_str(as_set_cell(got).elems[0]) == "1");
}

TEST_CASE("ground sets unify extensionally") {
  CHECK(unifies(set_of({num(1), num(2)}), set_of({num(2), num(1)})));
  CHECK(unifies(set_of({num(2), num(2)}), set_of({num(2)})));
  CHECK(unifies(set_cell({num(1)}, set_of({num(2)})), set_of({num(1), num(2)})));
  CHECK(!unifies(set_of({num(1)}), set_of({num(2)})));
  CHECK(!unifies(empty_set(), set_of({num(1)})));
}

TEST_CASE("set unification against a tail variable fans out") {
  State st;
  st.next_var = 1;
  Term p = var(0);
  States r = try_unify(set_of({num(1), num(2), num(3)}), set_cell({num(2), num(3)}, p), st);
  std::vector<std::string> ps;
  for (const auto& s : r) {
    auto c = canon(walk_deep(p, s.subst));
    REQUIRE(c.has_value());
    ps.push_back(term_str(*c));
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  CHECK(ps == std::vector<std::string>{"#(set (1 2 3))", "#(set (1 2))", "#(set (1 3))",
                                       "#(set (1))"});
}

TEST_CASE("unifying two open sets introduces a shared typed tail") {
  State st;
  st.next_var = 2;
  Term p = var(0);
  Term q = var(1);
  States r = try_unify(set_cell({num(1)}, p), set_cell({num(2)}, q), st);
  bool found = false;
  for (const auto& s : r) {
    Term pv = walk_deep(p, s.subst);
    Term qv = walk_deep(q, s.subst);
    // The branch that explains the unification with a common remainder.
    if (is_set_cell(pv) && is_set_cell(qv)) found = true;
    CHECK(s.next_var >= st.next_var);
  }
  CHECK(found);
}

TEST_CASE("ground unification agrees with the oracle everywhere") {
  Universe mid{{num(0), num(1), sym("a")}, 2, 2, 2};
  auto pool = enumerate_terms(mid);
  std::size_t bad = 0;
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      bool want = holds(OracleTag::Eq, {a, b});
      if (unifies(a, b) != want) {
        bad++;
        if (bad <= 3) {
          CAPTURE(term_str(a));
          CAPTURE(term_str(b));
          CHECK(unifies(a, b) == want);
        }
      }
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("unification is symmetric on a ground sample") {
  Universe tiny{{num(0), num(1)}, 2, 1, 1};
  auto pool = enumerate_terms(tiny);
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      CHECK(unifies(a, b) == unifies(b, a));
    }
  }
}
