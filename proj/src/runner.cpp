#include "setkanren/runner.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "setkanren/program.hpp"
#include "setkanren/run.hpp"
#include "setkanren/stream.hpp"

namespace setkanren {
namespace {

void print_answers(const std::vector<std::string>& answers, std::ostream& out) {
  out << "(";
  for (std::size_t i = 0; i < answers.size(); i++) {
    if (i) out << " ";
    out << answers[i];
  }
  out << ")\n";
}

RunOutcome run_one(const Session& ses, const Query& q, const RunOptions& opt) {
  long n = -1;
  if (q.mode == Query::Mode::RunN) n = q.n;
  if (opt.max_answers >= 0 && (n < 0 || n > opt.max_answers)) n = opt.max_answers;
  bool unique = opt.unique || q.mode == Query::Mode::RunUnique;
  return run_query(ses.relations(), q.body, q.qvar_count, q.slot_count, n, unique);
}

void trace_line(int qnum, const RunOutcome& res, std::ostream& err) {
  err << ";; query " << qnum << ": " << res.answers.size() << " answers, "
      << res.stats.unify_calls << " unify calls, " << res.stats.constraint_fires
      << " constraint fires, " << res.stats.diseq_reexams << " diseq re-exams\n";
}

void report(const std::string& where, SourcePos pos, const std::string& msg,
            std::ostream& err) {
  if (!where.empty()) err << where << ":";
  err << pos.line << ":" << pos.col << ": error: " << msg << "\n";
}

}  // namespace

int run_file(const std::string& path, const RunOptions& opt, std::ostream& out,
             std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open " << path << "\n";
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string src = buf.str();

  Session ses;
  std::vector<Query> queries;
  try {
    queries = ses.load(read_all(src));
  } catch (const ReadError& e) {
    report(path, e.pos, e.what(), err);
    return 1;
  } catch (const CompileError& e) {
    report(path, e.pos, e.what(), err);
    return 1;
  }

  int qnum = 0;
  for (const auto& q : queries) {
    qnum++;
    try {
      RunOutcome res = run_one(ses, q, opt);
      print_answers(res.answers, out);
      if (opt.trace) trace_line(qnum, res, err);
    } catch (const EngineError& e) {
      report(path, q.pos, e.what(), err);
      return 2;
    }
  }
  return 0;
}

int run_repl(std::istream& in, std::ostream& out, std::ostream& err) {
  Session ses;
  RunOptions opt;
  std::string buffer;
  std::string line;
  for (;;) {
    if (buffer.empty()) out << "setkanren> " << std::flush;
    if (!std::getline(in, line)) break;
    buffer += line;
    buffer += "\n";
    if (paren_depth(buffer) > 0) continue;
    std::string src;
    std::swap(src, buffer);
    try {
      for (const Datum& form : read_all(src)) {
        FeedResult fed = ses.feed(form);
        for (const auto& w : fed.warnings) err << ";; warning: " << w << "\n";
        if (fed.query) {
          RunOutcome res = run_one(ses, *fed.query, opt);
          print_answers(res.answers, out);
        }
      }
    } catch (const ReadError& e) {
      report("", e.pos, e.what(), err);
    } catch (const CompileError& e) {
      report("", e.pos, e.what(), err);
    } catch (const EngineError& e) {
      err << "error: " << e.what() << "\n";
    }
  }
  if (!buffer.empty() && paren_depth(buffer) > 0) {
    err << "error: unterminated form at end of input\n";
  }
  out << "\n";
  return 0;
}

int eval_source(const std::string& source, const RunOptions& opt, std::ostream& out,
                std::ostream& err) {
  Session ses;
  std::vector<Query> queries;
  try {
    queries = ses.load(read_all(source));
  } catch (const ReadError& e) {
    report("", e.pos, e.what(), err);
    return 1;
  } catch (const CompileError& e) {
    report("", e.pos, e.what(), err);
    return 1;
  }

  int qnum = 0;
  for (const auto& q : queries) {
    qnum++;
    try {
      RunOutcome res = run_one(ses, q, opt);
      print_answers(res.answers, out);
      if (opt.trace) trace_line(qnum, res, err);
    } catch (const EngineError& e) {
      report("", q.pos, e.what(), err);
      return 2;
    }
  }
  return 0;
}

}  // namespace setkanren
