#include <sstream>
#include <string>

#include "doctest.h"
#include "setkanren/runner.hpp"

using namespace setkanren;

namespace {

std::string answer_line(const std::string& src) {
  std::ostringstream out, err;
  int code = eval_source(src, {}, out, err);
  REQUIRE_MESSAGE(code == 0, err.str());
  std::string line = out.str();
  if (!line.empty() && line.back() == '\n') line.pop_back();
  return line;
}

}  // namespace

TEST_CASE("fresh variables are numbered in order of appearance in the value") {
  CHECK(answer_line("(run* (q) (fresh (a b) (== q `(,b ,a ,b))))") == "((_.0 _.1 _.0))");
  CHECK(answer_line("(run* (p q) (== p q))") == "((_.0 _.0))");
  // A variable first seen inside a set still numbers before later ones.
  CHECK(answer_line("(run* (q) (fresh (a b) (== q `(#(set (,b)) ,a ,b))))") ==
        "((#(set (_.0)) _.1 _.0))");
}

TEST_CASE("constrained answers carry sorted constraint groups") {
  CHECK(answer_line("(run* (q) (=/= q 1) (seto q) )") == "((_.0 (=/= ((1 _.0))) (set _.0)))");
  // =/= sorts before set, which sorts before sym.
  CHECK(answer_line("(run* (p q r) (symbolo r) (seto q) (=/= p 1))") ==
        "(((_.0 _.1 _.2) (=/= ((1 _.0))) (set _.1) (sym _.2)))");
  // Several disequalities merge into one group, ordered by their terms.
  CHECK(answer_line("(run* (p q) (=/= q 2) (=/= p 1))") ==
        "(((_.0 _.1) (=/= ((1 _.0)) ((2 _.1)))))");
}

TEST_CASE("disequality pairs print the smaller side first") {
  // Numbers order before reified variables, which order before other symbols.
  CHECK(answer_line("(run* (p q) (=/= `(,p) `(,q)))") == "(((_.0 _.1) (=/= ((_.0 _.1)))))");
  CHECK(answer_line("(run* (q) (=/= q 'lambda))") == "((_.0 (=/= ((_.0 lambda)))))");
  CHECK(answer_line("(run* (q) (=/= q 7))") == "((_.0 (=/= ((7 _.0)))))");
}

TEST_CASE("constraints on hidden variables are pruned") {
  CHECK(answer_line("(run* (q) (fresh (h) (=/= h 1)))") == "(_.0)");
  CHECK(answer_line("(run* (q) (fresh (h) (seto h) (symbolo q)))") == "((_.0 (sym _.0)))");
  // But a hidden variable reachable from the answer keeps its constraints.
  CHECK(answer_line("(run* (q) (fresh (h) (== q `(,h)) (=/= h 1)))") ==
        "(((_.0) (=/= ((1 _.0)))))");
}

TEST_CASE("set values display with sorted distinct elements") {
  CHECK(answer_line("(run* (q) (== q '#(set (3 1 2))))") == "(#(set (1 2 3)))");
  CHECK(answer_line("(run* (q) (== q '#(set (a 1 a))))") == "(#(set (1 a)))");
  // Open sets keep the tail after the element list. A plain binding does not
  // type the tail; that is the job of seto and the set operations.
  CHECK(answer_line("(run* (p q) (== p `#(set (2 1) ,q)))") ==
        "((#(set (1 2) _.0) _.0))");
  CHECK(answer_line("(run* (p q) (seto q) (== p `#(set (2 1) ,q)))") ==
        "(((#(set (1 2) _.0) _.0) (set _.0)))");
}

TEST_CASE("unconstrained answers print bare") {
  CHECK(answer_line("(run* (q) (== q 1))") == "(1)");
  CHECK(answer_line("(run* (q) succeed)") == "(_.0)");
  CHECK(answer_line("(run* (p q) (== p 1))") == "((1 _.0))");
}
