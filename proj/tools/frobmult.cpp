// frobmult: batch front end for intersection multiplicities and Frobenius
// decompositions over F_p[x_1..x_n]/I.
//
//   frobmult <command> problem.json [--x NAME] [--y NAME...] [--order u] ...
//   frobmult run problem.json            runs every task in the file

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "frobmult/cli.hpp"

using namespace frobmult;

namespace {

void emit(const std::vector<cli::Report>& reports, bool as_array, const std::string& format) {
  if (format == "text") {
    for (std::size_t k = 0; k < reports.size(); ++k)
      std::cout << (k ? "\n" : "") << cli::to_text(reports[k]);
    return;
  }
  if (!as_array) {
    std::cout << reports.front().to_json().dump(2) << "\n";
    return;
  }
  io::Json all = io::Json::array();
  for (const auto& r : reports)
    all.push_back(r.to_json());
  std::cout << all.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intersection multiplicities, Euler forms and Frobenius eigen-decompositions"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string format = "json";
  bool timing = false;
  std::optional<std::size_t> task_index;
  cli::Task flags;
  std::vector<std::string> ys;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("problem", problem_path, "problem file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--output", format, "report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--timing", timing, "include wall-clock time in the report");
  };

  CLI::App* run_all = app.add_subcommand("run", "run every task listed in the problem file");
  add_common(run_all);

  for (const auto& name : cli::commands()) {
    CLI::App* sub = app.add_subcommand(name, "run the '" + name + "' computation");
    add_common(sub);
    sub->add_option("--x", flags.x, "name of the free complex X");
    sub->add_option("--y", ys, "name(s) of the test object(s) Y");
    sub->add_option("--order", flags.order, "decomposition order u")->check(CLI::NonNegativeNumber);
    sub->add_option("--power", flags.power, "Frobenius power e (largest e for check-numvanishing)");
    sub->add_option("--degree", flags.degree, "homological degree for homology");
    sub->add_option("--steps", flags.steps, "resolution length cap");
    sub->add_flag("--lenient", flags.lenient, "report dimension-hypothesis violations as warnings");
    sub->add_option("--task", task_index, "take defaults from this entry of the problem's task list");
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* chosen = app.get_subcommands().front();

  try {
    io::Problem problem = io::load_problem(problem_path);
    std::vector<cli::Report> reports;
    cli::Status status = cli::Status::ok;

    if (chosen == run_all) {
      if (problem.tasks().empty())
        throw ParseError("the problem file lists no tasks");
      for (const auto& entry : problem.tasks()) {
        reports.push_back(cli::run(problem, cli::task_from_json(entry), timing));
        status = cli::worst(status, reports.back().status);
      }
      emit(reports, true, format);
      return cli::exit_code(status);
    }

    cli::Task task;
    if (task_index) {
      if (*task_index >= problem.tasks().size())
        throw ParseError("--task " + std::to_string(*task_index) + ": the file lists " +
                         std::to_string(problem.tasks().size()) + " task(s)");
      task = cli::task_from_json(problem.tasks()[*task_index]);
      if (task.command != chosen->get_name())
        throw ParseError("--task " + std::to_string(*task_index) + " is a '" + task.command + "' task, not '" +
                         chosen->get_name() + "'");
    }
    task.command = chosen->get_name();
    if (chosen->count("--x"))
      task.x = flags.x;
    if (!ys.empty())
      task.y = ys;
    for (const char* opt : {"--order", "--power", "--degree", "--steps"}) {
      if (!chosen->count(opt))
        continue;
      std::string o = opt;
      if (o == "--order")
        task.order = flags.order;
      else if (o == "--power")
        task.power = flags.power;
      else if (o == "--degree")
        task.degree = flags.degree;
      else
        task.steps = flags.steps;
    }
    task.lenient = task.lenient || flags.lenient;

    reports.push_back(cli::run(problem, task, timing));
    emit(reports, false, format);
    return cli::exit_code(reports.back().status);
  } catch (const Error& e) {
    std::cerr << "frobmult: " << e.what() << "\n";
    return 1;
  }
}
