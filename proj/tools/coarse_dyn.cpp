// coarse-dyn: runs checks on scenario files and generated corpora.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "coarse/cli/commands.hpp"

using namespace coarse;
using namespace coarse::cli;

int main(int argc, char** argv) {
  CLI::App app{"Finite coarse dynamical systems checker"};
  app.require_subcommand(1);

  CommandOptions opt;
  std::string report;
  std::string format = "json";
  bool timings = false;

  std::string scenario, space;
  std::uint64_t seed = 0;
  std::size_t count = 0, instance = 0, n = 0;
  double halfWidth = 0, step = 0;

  for (const auto& name : commandNames()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--scenario", scenario, "Scenario JSON file")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Seed recorded in the report; corpus base seed");
    sub->add_option("--report", report, "Write the report here instead of stdout");
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--timings", timings, "Include wall time per check");
    sub->add_option("--threads", opt.threads, "Worker threads (0 = hardware)");
    if (name == "asdim") {
      sub->add_option("--space", space, "Space name in the scenario");
      sub->add_option("--n", n, "Number of families minus one");
      sub->add_option("--exact-cap", opt.exactCap, "Largest ground for exact search");
    }
    if (name == "hyperlift" || name == "corpus")
      sub->add_option("--hyper-cap", opt.hyperCap, "Largest base ground for the hyperspace");
    if (name == "zr-demo") {
      sub->add_option("--half-width", halfWidth, "Window [-N, N]")->check(CLI::NonNegativeNumber);
      sub->add_option("--step", step, "Grid step")->check(CLI::PositiveNumber);
      sub->add_option("--scales", opt.scales, "Radii of the metric scales");
    }
    if (name == "corpus") {
      sub->add_option("--count", count, "Number of instances");
      sub->add_option("--instance", instance, "Run only this instance");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  auto* sub = app.get_subcommands().front();
  auto given = [&](const char* flag) {
    const auto* o = sub->get_option_no_throw(flag);
    return o != nullptr && o->count() > 0;
  };
  if (given("--scenario")) opt.scenario = scenario;
  if (given("--seed")) opt.seed = seed;
  if (given("--space")) opt.space = space;
  if (given("--n")) opt.n = n;
  if (given("--count")) opt.count = count;
  if (given("--instance")) opt.instance = instance;
  if (given("--half-width")) opt.halfWidth = halfWidth;
  if (given("--step")) opt.step = step;

  Report r;
  try {
    r = runCommand(sub->get_name(), opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string text = format == "text" ? renderText(r, timings) : renderJson(r, timings);
  if (report.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(report);
    if (!out) {
      std::cerr << "cannot write " << report << "\n";
      return 2;
    }
    out << text;
  }
  return r.allPass() ? 0 : 1;
}
