#include <iostream>

#include <CLI11.hpp>

#include "setlab/commands.hpp"
#include "setlab/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Random convex sets: counterexample, SLLN experiments, invariant suites"};
  app.require_subcommand(1);

  setlab::CounterexampleOptions cx;
  auto* counter = app.add_subcommand("counterexample", "Evaluate the non-convergence construction");
  counter->add_option("--n", cx.n, "n_max (1 or 2)")->required();
  counter->add_option("--mode", cx.mode, "certificate or exact")->check(CLI::IsMember({"certificate", "exact"}));
  counter->add_option("--omega", cx.omega, "all or sample:K");
  counter->add_option("--seed", cx.seed, "master seed for sampled patterns");
  counter->add_option("--out", cx.out, "output directory");

  std::string config;
  std::optional<std::string> slln_out;
  std::optional<unsigned> threads;
  auto* slln = app.add_subcommand("slln", "Run a configured averaging experiment");
  slln->add_option("--config", config, "JSON run configuration")->required();
  slln->add_option("--out", slln_out, "output directory (overrides the config)");
  slln->add_option("--threads", threads, "worker threads (overrides the config)")->check(CLI::PositiveNumber);

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(setlab::suite_names()));

  std::string csv, svg;
  auto* plot = app.add_subcommand("plot", "Render a CSV of distances as an SVG chart");
  plot->add_option("csv", csv, "input CSV")->required();
  plot->add_option("--out", svg, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : setlab::kExitUsage;
  }

  if (*counter) return setlab::cmd_counterexample(cx, std::cout, std::cerr);
  if (*slln) return setlab::cmd_slln(config, slln_out, threads, std::cout, std::cerr);
  if (*verify) return setlab::cmd_verify(suite, std::cout, std::cerr);
  return setlab::cmd_plot(csv, svg, std::cout, std::cerr);
}
