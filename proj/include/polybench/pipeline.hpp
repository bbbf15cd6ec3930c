#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polybench/generators.hpp"
#include "polybench/mesh.hpp"
#include "polybench/metrics.hpp"
#include "polybench/perf.hpp"

namespace polybench {

struct BenchmarkConfig {
  std::vector<FamilyId> families = default_families();
  int t_samples = 20;
  int random_count = 100;
  int levels = 3;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "polybench-out";
  std::string problem = "sinsin";
  bool canvas = true;
  int jobs = 1;

  static std::vector<FamilyId> default_families();
  void validate() const;  ///< InvalidParameter on t_samples < 2, levels < 1, jobs < 1, unknown problem
};

/// i / (n - 1) for i = 0..n-1.
std::vector<double> t_grid(int n);

struct MeshEntry {
  std::string id;
  FamilyId family = FamilyId::Comb;
  double t = 0.0;
  std::uint64_t seed = 0;
  std::string polygon;              ///< relative to the dataset root
  std::vector<std::string> levels;  ///< OFF files, tags at `<off>.tags`
  std::string failure;              ///< empty when generation succeeded

  bool ok() const { return failure.empty(); }
};

struct Manifest {
  int t_samples = 0;
  int random_count = 0;
  int levels = 0;
  std::uint64_t seed = 0;
  bool canvas = true;
  std::vector<MeshEntry> meshes;
};

nlohmann::json to_json(const Manifest& m);
Manifest manifest_from_json(const nlohmann::json& j);
Manifest load_manifest(const std::filesystem::path& dataset);
void save_manifest(const std::filesystem::path& dataset, const Manifest& m);

/// One spec per family and t sample, then `random_count` random specs when
/// the family list holds Random. Ids are `<family>_<index>`.
std::vector<std::pair<std::string, PolygonSpec>> dataset_specs(const BenchmarkConfig& config);

/// Runs fn(0..n-1) on `jobs` threads. fn must not throw.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

/// "%.17g", with "nan" for NaN.
std::string format_real(double v);

struct CommandResult {
  std::size_t rows = 0;
  std::size_t failed = 0;
};

/// Polygon file, level meshes and manifest.json under config.output_dir.
CommandResult cmd_generate(const BenchmarkConfig& config);

std::vector<std::string> metrics_csv_header();
/// One metrics.csv line (without newline) for one mesh of the dataset.
std::string metrics_row(const MeshEntry& e, int level, const PolygonMesh& mesh);

/// metrics.csv: one row per manifest entry per level.
CommandResult cmd_measure(const std::filesystem::path& dataset, int jobs);

/// solver.csv, convergence.csv and per-level solution dumps.
CommandResult cmd_solve(const std::filesystem::path& dataset, const std::string& problem, int jobs);

/// Correlation matrices at the finest level in metrics.csv and solver.csv.
CommandResult cmd_analyze(const std::filesystem::path& dataset);

/// report.json bundling the manifest, every CSV and the matrices.
CommandResult cmd_report(const std::filesystem::path& dataset);

/// Comma-separated file read back as header plus string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  ///< Io error when absent
};
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace polybench
