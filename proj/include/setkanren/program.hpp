#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "setkanren/goal.hpp"
#include "setkanren/reader.hpp"

namespace setkanren {

class CompileError : public std::runtime_error {
 public:
  CompileError(SourcePos p, const std::string& msg) : std::runtime_error(msg), pos(p) {}
  SourcePos pos;
};

struct Query {
  enum class Mode { RunN, RunStar, RunUnique };
  Mode mode = Mode::RunStar;
  long n = -1;  // RunN only
  int qvar_count = 0;
  int slot_count = 0;
  GoalT body;
  SourcePos pos;
};

struct FeedResult {
  std::optional<Query> query;
  std::vector<std::string> warnings;
};

// Holds the relations defined so far and compiles further forms against
// them. User definitions shadow the builtin constraint heads; within one
// load() duplicates are an error, while feed() allows redefinition (the
// REPL path) and reports it as a warning.
class Session {
 public:
  const std::vector<Relation>& relations() const { return rels_; }

  // One toplevel form: a defrel extends the session, a run form comes back
  // as a query for the caller to execute.
  FeedResult feed(const Datum& form);

  // A whole file's worth of forms. Definition signatures are collected
  // first so relations may refer to each other regardless of order;
  // queries are returned in source order. The session is unchanged if any
  // form fails to compile.
  std::vector<Query> load(const std::vector<Datum>& forms);

 private:
  int declare(const Datum& form, bool allow_redefine, std::vector<std::string>* warnings);
  void compile_body(const Datum& form, int rel_index);
  Query compile_query(const Datum& form) const;

  std::vector<Relation> rels_;
  std::map<std::string, int> index_;
};

bool is_defrel(const Datum& form);

}  // namespace setkanren
