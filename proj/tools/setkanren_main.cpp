#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "setkanren/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"relational programming with first-class finite sets"};
  app.require_subcommand(1);

  setkanren::RunOptions opt;
  std::string file;
  std::string form;

  auto* run = app.add_subcommand("run", "Run a program file");
  run->add_option("file", file, "program to run")->required();
  run->add_option("--max", opt.max_answers, "cap the number of answers per query");
  run->add_flag("--unique", opt.unique, "drop duplicate answers");
  run->add_flag("--trace", opt.trace, "log per-query statistics to stderr");

  auto* repl = app.add_subcommand("repl", "Interactive session");

  auto* eval = app.add_subcommand("eval", "Evaluate forms given on the command line");
  eval->add_option("form", form, "forms to evaluate")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return setkanren::run_file(file, opt, std::cout, std::cerr);
  if (repl->parsed()) return setkanren::run_repl(std::cin, std::cout, std::cerr);
  if (eval->parsed()) return setkanren::eval_source(form, {}, std::cout, std::cerr);
  return 1;
}
