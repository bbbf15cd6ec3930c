#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "polybench/error.hpp"
#include "polybench/pipeline.hpp"

using namespace polybench;

int main(int argc, char** argv) {
  CLI::App app{"Polygon quality benchmark: dataset generation, metrics, VEM solves, correlation analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  BenchmarkConfig config;
  std::vector<std::string> families;
  app.add_option("--families", families, "comma-separated families (default: all eight plus random)")
      ->delimiter(',');
  app.add_option("--t-samples", config.t_samples, "samples per family, t_i = i/(n-1)")->capture_default_str();
  app.add_option("--random-count", config.random_count, "random polygons")->capture_default_str();
  app.add_option("--levels", config.levels, "mirror hierarchy depth")->capture_default_str();
  app.add_option("--seed", config.seed, "dataset seed")->capture_default_str();
  app.add_option("--jobs", config.jobs, "worker threads")->capture_default_str();
  app.add_option("--out", config.output_dir, "dataset directory")->capture_default_str();
  app.add_option("--problem", config.problem, "model problem: sinsin or patch")->capture_default_str();
  app.add_flag("--no-canvas", [&](std::int64_t) { config.canvas = false; }, "emit the bare polygon only");

  auto* generate = app.add_subcommand("generate", "polygons, canvas meshes and manifest");
  auto* measure = app.add_subcommand("measure", "metrics.csv");
  auto* solve = app.add_subcommand("solve", "solver.csv and convergence.csv");
  auto* analyze = app.add_subcommand("analyze", "correlation matrices");
  auto* report = app.add_subcommand("report", "report.json bundle");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!families.empty()) {
      config.families.clear();
      for (const auto& name : families) {
        const auto f = parse_family(name);
        if (!f) throw Error(ErrorKind::InvalidParameter, "unknown family " + name);
        config.families.push_back(*f);
      }
    }
    config.validate();

    CommandResult r;
    const char* what = "";
    if (generate->parsed()) {
      r = cmd_generate(config);
      what = "meshes";
    } else if (measure->parsed()) {
      r = cmd_measure(config.output_dir, config.jobs);
      what = "metric rows";
    } else if (solve->parsed()) {
      r = cmd_solve(config.output_dir, config.problem, config.jobs);
      what = "solver rows";
    } else if (analyze->parsed()) {
      r = cmd_analyze(config.output_dir);
      what = "joined rows";
    } else if (report->parsed()) {
      r = cmd_report(config.output_dir);
      what = "table rows";
    }
    std::printf("%zu %s, %zu failed\n", r.rows, what, r.failed);
    return r.failed == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
