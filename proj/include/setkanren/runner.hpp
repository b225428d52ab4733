#pragma once

#include <iosfwd>
#include <string>

namespace setkanren {

struct RunOptions {
  long max_answers = -1;  // < 0: no cap
  bool unique = false;
  bool trace = false;
};

// Exit codes shared by the CLI entry points: 0 on success, 1 for read or
// load errors, 2 when a query signals a program error.
int run_file(const std::string& path, const RunOptions& opt, std::ostream& out,
             std::ostream& err);
int run_repl(std::istream& in, std::ostream& out, std::ostream& err);
int eval_source(const std::string& source, const RunOptions& opt, std::ostream& out,
                std::ostream& err);

}  // namespace setkanren
