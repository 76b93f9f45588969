#include <CLI11.hpp>
#include <iostream>

#include "poisskit_cli.hpp"

int main(int argc, char** argv) {
  using namespace poisskit;
  CLI::App app{"poisskit: exact Poisson geometry from JSON manifests"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the tasks of a manifest");
  std::string path;
  cli::RunOptions opts;
  std::string f, point;
  run->add_option("manifest", path, "manifest file")->required();
  run->add_option("--task", opts.tasks, "run only these tasks (repeatable)");
  run->add_option("--f", f, "expression for the f parameter");
  run->add_option("--point", point, "point as \"a,b,c\"");
  run->add_flag("--json", opts.json_output, "structured report");
  run->add_flag("--parallel", opts.parallel, "run tasks concurrently, output in task order");

  app.add_subcommand("fixtures", "list the built-in structures");
  auto* exp = app.add_subcommand("export", "print a fixture as a manifest");
  std::string name;
  exp->add_option("name", name, "fixture name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("fixtures")) {
      cli::list_fixtures(std::cout);
      return 0;
    }
    if (app.got_subcommand("export")) {
      std::cout << cli::export_fixture(name).dump(2) << "\n";
      return 0;
    }
    if (!f.empty()) opts.overrides.f = f;
    if (!point.empty()) opts.overrides.point = parse_point(point);
    return cli::run_file(path, opts, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
