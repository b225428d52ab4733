#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "setkanren/program.hpp"
#include "setkanren/run.hpp"
#include "setkanren/stream.hpp"

namespace py = pybind11;
using namespace setkanren;

namespace {

std::string pos_msg(SourcePos pos, const char* what) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + what;
}

std::vector<std::string> run_one(const Session& ses, const Query& q, long max_answers,
                                 bool unique) {
  long n = q.mode == Query::Mode::RunN ? q.n : -1;
  if (max_answers >= 0 && (n < 0 || n > max_answers)) n = max_answers;
  bool uniq = unique || q.mode == Query::Mode::RunUnique;
  return run_query(ses.relations(), q.body, q.qvar_count, q.slot_count, n, uniq).answers;
}

// One-shot program: definitions are hoisted, queries run in order. Returns
// one list of reified answer strings per query.
std::vector<std::vector<std::string>> run_program(const std::string& source, long max_answers,
                                                  bool unique) {
  Session ses;
  std::vector<Query> queries;
  try {
    queries = ses.load(read_all(source));
  } catch (const ReadError& e) {
    throw py::value_error(pos_msg(e.pos, e.what()));
  } catch (const CompileError& e) {
    throw py::value_error(pos_msg(e.pos, e.what()));
  }
  std::vector<std::vector<std::string>> out;
  for (const auto& q : queries) out.push_back(run_one(ses, q, max_answers, unique));
  return out;
}

// Incremental session: each feed sees the definitions of every earlier
// feed, so a REPL can be built on top directly.
class PySession {
 public:
  std::vector<std::vector<std::string>> feed(const std::string& source, long max_answers,
                                             bool unique) {
    std::vector<std::vector<std::string>> out;
    try {
      for (const Datum& form : read_all(source)) {
        FeedResult fed = ses_.feed(form);
        if (fed.query) out.push_back(run_one(ses_, *fed.query, max_answers, unique));
      }
    } catch (const ReadError& e) {
      throw py::value_error(pos_msg(e.pos, e.what()));
    } catch (const CompileError& e) {
      throw py::value_error(pos_msg(e.pos, e.what()));
    }
    return out;
  }

  std::vector<std::string> relation_names() const {
    std::vector<std::string> names;
    for (const auto& r : ses_.relations()) names.push_back(r.name);
    return names;
  }

 private:
  Session ses_;
};

}  // namespace

PYBIND11_MODULE(_setkanren, m) {
  m.doc() = "relational programming with first-class finite sets";
  m.attr("__version__") = "0.1.0";

  m.def("run_program", &run_program, py::arg("source"), py::arg("max_answers") = -1,
        py::arg("unique") = false,
        "Load a program and run its queries; returns one list of reified answer "
        "strings per query. Raises ValueError on read or compile errors and "
        "RuntimeError when a query exceeds the engine's expansion limit.");

  py::class_<PySession>(m, "Session")
      .def(py::init<>())
      .def("feed", &PySession::feed, py::arg("source"), py::arg("max_answers") = -1,
           py::arg("unique") = false,
           "Evaluate forms against the session, keeping definitions; returns one "
           "answer list per query in the source.")
      .def_property_readonly("relations", &PySession::relation_names);

  py::register_exception<EngineError>(m, "EngineError", PyExc_RuntimeError);
}
