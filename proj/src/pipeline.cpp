#include "polybench/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "polybench/error.hpp"
#include "polybench/mesher.hpp"
#include "polybench/stats.hpp"
#include "polybench/vem.hpp"

namespace polybench {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kSolverColumns = {"eps_inf", "eps_2", "eps_S", "kappa1"};

// Cells of our CSVs never contain commas or line breaks.
std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

std::string failure_status(const std::string& reason) { return "failed: " + sanitize(reason); }

// Every file the pipeline writes goes through here.
class Writer {
 public:
  void text(const fs::path& path, const std::string& content) {
    std::lock_guard lock(mutex_);
    fs::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    os << content;
    if (!os) throw Error(ErrorKind::Io, "cannot write " + path.string());
  }

  void mesh(const fs::path& off_path, const PolygonMesh& mesh) {
    std::lock_guard lock(mutex_);
    fs::create_directories(off_path.parent_path());
    save_mesh(off_path, mesh);
  }

 private:
  std::mutex mutex_;
};

std::string join_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

std::string csv_text(const std::vector<std::string>& header, const std::vector<std::string>& lines) {
  std::string out = join_line(header) + '\n';
  for (const auto& l : lines) out += l + '\n';
  return out;
}

std::string polygon_text(const Polygon2& p) {
  std::ostringstream os;
  write_polygon(os, p);
  return os.str();
}

std::string entry_prefix(const MeshEntry& e, int level) {
  return e.id + ',' + std::string(family_name(e.family)) + ',' + format_real(e.t) + ',' + std::to_string(level);
}

double parse_real(const std::string& s) {
  if (s == "nan") return kNaN;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Io, "not a number: " + s);
  }
  if (used != s.size()) throw Error(ErrorKind::Io, "not a number: " + s);
  return v;
}

nlohmann::json table_json(const CsvTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json line = nlohmann::json::array();
    for (const auto& cell : r) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell == "nan") {
        line.push_back(nullptr);
      } else if (!cell.empty() && end == cell.c_str() + cell.size()) {
        line.push_back(v);
      } else {
        line.push_back(cell);
      }
    }
    rows.push_back(std::move(line));
  }
  return {{"columns", t.header}, {"rows", rows}};
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot read " + path.string());
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, path.string() + ": " + e.what());
  }
}

}  // namespace

std::vector<FamilyId> BenchmarkConfig::default_families() {
  std::vector<FamilyId> all(kParametricFamilies.begin(), kParametricFamilies.end());
  all.push_back(FamilyId::Random);
  return all;
}

void BenchmarkConfig::validate() const {
  if (t_samples < 2) throw Error(ErrorKind::InvalidParameter, "t_samples must be at least 2");
  if (levels < 1) throw Error(ErrorKind::InvalidParameter, "levels must be at least 1");
  if (random_count < 0) throw Error(ErrorKind::InvalidParameter, "random_count must be non-negative");
  if (jobs < 1) throw Error(ErrorKind::InvalidParameter, "jobs must be at least 1");
  if (!find_problem(problem)) throw Error(ErrorKind::InvalidParameter, "unknown problem " + problem);
}

std::vector<double> t_grid(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "t grid needs at least two samples");
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
  return t;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json to_json(const Manifest& m) {
  nlohmann::json meshes = nlohmann::json::array();
  for (const auto& e : m.meshes) {
    nlohmann::json j = {{"id", e.id},         {"family", std::string(family_name(e.family))},
                        {"t", format_real(e.t)}, {"seed", e.seed},
                        {"polygon", e.polygon}, {"levels", e.levels}};
    if (!e.ok()) j["failure"] = e.failure;
    meshes.push_back(std::move(j));
  }
  return {{"t_samples", m.t_samples}, {"random_count", m.random_count}, {"levels", m.levels},
          {"seed", m.seed},           {"canvas", m.canvas},             {"meshes", meshes}};
}

Manifest manifest_from_json(const nlohmann::json& j) {
  Manifest m;
  try {
    m.t_samples = j.at("t_samples").get<int>();
    m.random_count = j.at("random_count").get<int>();
    m.levels = j.at("levels").get<int>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.canvas = j.at("canvas").get<bool>();
    for (const auto& mj : j.at("meshes")) {
      MeshEntry e;
      e.id = mj.at("id").get<std::string>();
      const auto family = parse_family(mj.at("family").get<std::string>());
      if (!family) throw Error(ErrorKind::Io, "unknown family in manifest entry " + e.id);
      e.family = *family;
      e.t = parse_real(mj.at("t").get<std::string>());
      e.seed = mj.at("seed").get<std::uint64_t>();
      e.polygon = mj.at("polygon").get<std::string>();
      e.levels = mj.at("levels").get<std::vector<std::string>>();
      if (mj.contains("failure")) e.failure = mj.at("failure").get<std::string>();
      m.meshes.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, std::string("malformed manifest: ") + e.what());
  }
  return m;
}

Manifest load_manifest(const fs::path& dataset) { return manifest_from_json(read_json(dataset / "manifest.json")); }

void save_manifest(const fs::path& dataset, const Manifest& m) {
  fs::create_directories(dataset);
  std::ofstream os(dataset / "manifest.json", std::ios::binary);
  os << to_json(m).dump(2) << '\n';
  if (!os) throw Error(ErrorKind::Io, "cannot write manifest in " + dataset.string());
}

std::vector<std::pair<std::string, PolygonSpec>> dataset_specs(const BenchmarkConfig& config) {
  std::vector<std::pair<std::string, PolygonSpec>> specs;
  const std::vector<double> ts = t_grid(config.t_samples);
  char buf[64];
  for (FamilyId f : config.families) {
    if (f == FamilyId::Random) continue;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s_%02zu", std::string(family_name(f)).c_str(), i);
      specs.emplace_back(buf, PolygonSpec{f, ts[i], config.seed});
    }
  }
  if (std::find(config.families.begin(), config.families.end(), FamilyId::Random) != config.families.end()) {
    Rng rng(config.seed);
    for (int i = 0; i < config.random_count; ++i) {
      std::snprintf(buf, sizeof buf, "random_%03d", i);
      specs.emplace_back(buf, PolygonSpec{FamilyId::Random, 0.0, rng.next()});
    }
  }
  return specs;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

CommandResult cmd_generate(const BenchmarkConfig& config) {
  config.validate();
  const auto specs = dataset_specs(config);
  Manifest manifest;
  manifest.t_samples = config.t_samples;
  manifest.random_count = config.random_count;
  manifest.levels = config.canvas ? config.levels : 1;
  manifest.seed = config.seed;
  manifest.canvas = config.canvas;
  manifest.meshes.resize(specs.size());

  Writer writer;
  const fs::path& root = config.output_dir;
  parallel_for(specs.size(), config.jobs, [&](std::size_t i) {
    const auto& [id, spec] = specs[i];
    MeshEntry& e = manifest.meshes[i];
    e.id = id;
    e.family = spec.family;
    e.t = spec.t;
    e.seed = spec.seed;
    e.polygon = "polygons/" + id + ".txt";
    for (int l = 0; l < manifest.levels; ++l) {
      e.levels.push_back("meshes/" + id + "/L" + std::to_string(l) + ".off");
    }
    try {
      const Polygon2 poly = make_polygon(spec);
      writer.text(root / e.polygon, polygon_text(poly));
      if (!config.canvas) {
        writer.mesh(root / e.levels[0], bare_polygon_mesh(poly));
        return;
      }
      const PolygonMesh base = build_canvas_mesh(poly);
      const MeshCheck check = check_mesh(base);
      if (!check.conforming || !check.cells_valid || std::abs(check.total_area - 1.0) > 1e-9) {
        throw Error(ErrorKind::GenerationFailed, "canvas mesh failed its consistency check");
      }
      PolygonMesh level = base;
      for (int l = 0; l < manifest.levels; ++l) {
        if (l > 0) level = mirror(level);
        writer.mesh(root / e.levels[static_cast<std::size_t>(l)], level);
      }
    } catch (const Error& err) {
      e.failure = err.what();
    }
  });
  save_manifest(root, manifest);

  CommandResult r;
  r.rows = manifest.meshes.size();
  r.failed = static_cast<std::size_t>(
      std::count_if(manifest.meshes.begin(), manifest.meshes.end(), [](const MeshEntry& e) { return !e.ok(); }));
  return r;
}

std::vector<std::string> metrics_csv_header() {
  std::vector<std::string> h = {"mesh_id", "family", "t", "level"};
  for (Metric m : kAllMetrics) {
    for (const char* s : {"_min", "_avg", "_max"}) h.push_back(std::string(metric_name(m)) + s);
  }
  for (Metric m : kAllMetrics) h.push_back(std::string(metric_name(m)) + "_worst");
  h.push_back("status");
  return h;
}

std::string metrics_row(const MeshEntry& e, int level, const PolygonMesh& mesh) {
  const MeshMetricsRecord poly = aggregate_mesh_metrics(mesh, ElementSelector::NonTriangle);
  const MeshMetricsRecord worst = aggregate_mesh_metrics(mesh, ElementSelector::Worst);
  std::string line = entry_prefix(e, level);
  for (Metric m : kAllMetrics) {
    const MetricStats& s = poly[m];
    line += ',' + format_real(s.min) + ',' + format_real(s.avg) + ',' + format_real(s.max);
  }
  for (Metric m : kAllMetrics) line += ',' + format_real(worst.worst_of(m));
  return line + ",ok";
}

CommandResult cmd_measure(const fs::path& dataset, int jobs) {
  const Manifest manifest = load_manifest(dataset);
  const std::size_t levels = static_cast<std::size_t>(manifest.levels);
  const std::size_t n = manifest.meshes.size() * levels;
  std::vector<std::string> lines(n);
  std::vector<char> failed(n, 0);

  parallel_for(n, jobs, [&](std::size_t k) {
    const MeshEntry& e = manifest.meshes[k / levels];
    const int level = static_cast<int>(k % levels);
    std::string reason = e.failure;
    if (reason.empty()) {
      try {
        lines[k] = metrics_row(e, level, load_mesh(dataset / e.levels[static_cast<std::size_t>(level)]));
        return;
      } catch (const Error& err) {
        reason = err.what();
      }
    }
    failed[k] = 1;
    std::string line = entry_prefix(e, level);
    for (std::size_t c = 0; c < 3 * kMetricCount + kMetricCount; ++c) line += ",nan";
    lines[k] = line + ',' + failure_status(reason);
  });

  Writer writer;
  writer.text(dataset / "metrics.csv", csv_text(metrics_csv_header(), lines));
  return {n, static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1))};
}

CommandResult cmd_solve(const fs::path& dataset, const std::string& problem_name, int jobs) {
  const Manifest manifest = load_manifest(dataset);
  const auto problem = find_problem(problem_name);
  if (!problem) throw Error(ErrorKind::InvalidParameter, "unknown problem " + problem_name);
  if (!manifest.canvas) {
    throw Error(ErrorKind::InvalidParameter, "solve needs a canvas dataset; this one was generated with --no-canvas");
  }
  const std::size_t levels = static_cast<std::size_t>(manifest.levels);
  const std::size_t n = manifest.meshes.size() * levels;
  std::vector<std::string> lines(n);
  std::vector<SolverReport> reports(n);
  std::vector<std::string> reasons(n);

  Writer writer;
  parallel_for(n, jobs, [&](std::size_t k) {
    const MeshEntry& e = manifest.meshes[k / levels];
    const int level = static_cast<int>(k % levels);
    reasons[k] = e.failure;
    if (reasons[k].empty()) {
      try {
        const PolygonMesh mesh = load_mesh(dataset / e.levels[static_cast<std::size_t>(level)]);
        const LinearSystem system = assemble(mesh, *problem);
        const Eigen::VectorXd uh = solve(system);
        SolverReport& r = reports[k];
        r.eps_inf = error_linf(problem->exact, uh, mesh);
        r.eps_2 = error_l2(problem->exact, uh, mesh);
        r.eps_S = error_energy(problem->exact, uh, system);
        r.kappa1 = condition_number_l1(system.reduced());
        r.h = mesh_size(mesh);
        r.n_dofs = mesh.vertex_count();

        std::string dump;
        for (Eigen::Index i = 0; i < uh.size(); ++i) dump += format_real(uh(i)) + '\n';
        writer.text(dataset / "solutions" / (e.id + "_L" + std::to_string(level) + ".txt"), dump);
      } catch (const Error& err) {
        reasons[k] = err.what();
      }
    }
    std::string line = entry_prefix(e, level);
    if (reasons[k].empty()) {
      const SolverReport& r = reports[k];
      line += ',' + format_real(r.h) + ',' + std::to_string(r.n_dofs) + ',' + format_real(r.eps_inf) + ',' +
              format_real(r.eps_2) + ',' + format_real(r.eps_S) + ',' + format_real(r.kappa1) + ",ok";
    } else {
      line += ",nan,nan,nan,nan,nan,nan," + failure_status(reasons[k]);
    }
    lines[k] = std::move(line);
  });

  CommandResult result;
  result.rows = n;
  result.failed = static_cast<std::size_t>(
      std::count_if(reasons.begin(), reasons.end(), [](const std::string& s) { return !s.empty(); }));
  writer.text(dataset / "solver.csv",
              csv_text({"mesh_id", "family", "t", "level", "h", "n_dofs", "eps_inf", "eps_2", "eps_S", "kappa1",
                        "status"},
                       lines));

  std::vector<std::string> fits;
  if (levels >= 2) {
    for (std::size_t i = 0; i < manifest.meshes.size(); ++i) {
      const MeshEntry& e = manifest.meshes[i];
      std::vector<std::pair<double, double>> samples;
      std::string reason;
      for (std::size_t l = 0; l < levels; ++l) {
        const std::size_t k = i * levels + l;
        if (!reasons[k].empty()) {
          reason = "level " + std::to_string(l) + " failed";
          break;
        }
        samples.emplace_back(reports[k].h, reports[k].eps_2);
      }
      std::string line = e.id + ',' + std::string(family_name(e.family)) + ',' + format_real(e.t);
      if (reason.empty()) {
        try {
          const ConvergenceFit fit = fit_convergence(samples);
          line += ',' + format_real(fit.C) + ',' + format_real(fit.p) + ',' + format_real(fit.residual) + ",ok";
          fits.push_back(std::move(line));
          continue;
        } catch (const Error& err) {
          reason = err.what();
        }
      }
      ++result.failed;
      fits.push_back(line + ",nan,nan,nan," + failure_status(reason));
    }
  }
  writer.text(dataset / "convergence.csv", csv_text({"mesh_id", "family", "t", "C", "p", "residual", "status"}, fits));
  return result;
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorKind::Io, "missing CSV column " + name);
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot read " + path.string());
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::Io, path.string() + " is empty");
  t.header = split(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size()) throw Error(ErrorKind::Io, path.string() + ": ragged row");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

CommandResult cmd_analyze(const fs::path& dataset) {
  const CsvTable metrics = read_csv(dataset / "metrics.csv");
  const CsvTable solver = read_csv(dataset / "solver.csv");

  int finest = -1;
  for (const auto& r : metrics.rows) finest = std::max(finest, std::stoi(r[metrics.column("level")]));
  if (finest < 0) throw Error(ErrorKind::InvalidSamples, "metrics.csv has no rows");

  // Rows at the finest level, keyed by mesh_id; failed rows carry NaN.
  auto table_of = [&](const CsvTable& csv, const std::vector<std::string>& columns) {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> values(columns.size());
    const std::size_t id_col = csv.column("mesh_id"), level_col = csv.column("level");
    std::vector<std::size_t> cols;
    for (const auto& c : columns) cols.push_back(csv.column(c));
    for (const auto& r : csv.rows) {
      if (std::stoi(r[level_col]) != finest) continue;
      ids.push_back(r[id_col] + "@L" + r[level_col]);
      for (std::size_t k = 0; k < cols.size(); ++k) values[k].push_back(parse_real(r[cols[k]]));
    }
    ObservationTable t(ids);
    for (std::size_t k = 0; k < columns.size(); ++k) t.add_column(columns[k], std::move(values[k]));
    return t;
  };

  std::vector<std::string> geometry, worst;
  for (Metric m : kScaleInvariantMetrics) {
    geometry.push_back(std::string(metric_name(m)) + "_avg");
    worst.push_back(std::string(metric_name(m)) + "_worst");
  }
  std::vector<std::string> geometry_columns = geometry;
  geometry_columns.insert(geometry_columns.end(), worst.begin(), worst.end());
  const ObservationTable joined = join(table_of(metrics, geometry_columns), table_of(solver, kSolverColumns));

  const std::vector<std::pair<std::string, CorrelationMatrix>> results = {
      {"geometry", correlation_matrix(joined, geometry)},
      {"solver", correlation_matrix(joined, kSolverColumns)},
      {"geometry_solver", correlation_matrix(joined, worst, kSolverColumns)},
  };

  Writer writer;
  nlohmann::json summary = {{"level", finest}, {"rows", joined.rows()}, {"matrices", nlohmann::json::object()}};
  for (const auto& [name, m] : results) {
    std::ostringstream csv;
    write_csv(csv, m);
    writer.text(dataset / ("correlation_" + name + ".csv"), csv.str());
    writer.text(dataset / ("correlation_" + name + ".json"), to_json(m).dump(2) + '\n');
    summary["matrices"][name] = {{"used_rows", m.used_rows}, {"dropped_rows", m.dropped_rows}};
  }
  writer.text(dataset / "analysis.json", summary.dump(2) + '\n');
  return {joined.rows(), 0};
}

CommandResult cmd_report(const fs::path& dataset) {
  nlohmann::json bundle;
  bundle["manifest"] = read_json(dataset / "manifest.json");
  std::size_t rows = 0;
  for (const char* name : {"metrics", "solver", "convergence"}) {
    const CsvTable t = read_csv(dataset / (std::string(name) + ".csv"));
    rows += t.rows.size();
    bundle["tables"][name] = table_json(t);
  }
  for (const char* name : {"geometry", "solver", "geometry_solver"}) {
    bundle["correlations"][name] = read_json(dataset / ("correlation_" + std::string(name) + ".json"));
  }
  bundle["analysis"] = read_json(dataset / "analysis.json");
  Writer writer;
  writer.text(dataset / "report.json", bundle.dump(2) + '\n');
  return {rows, 0};
}

}  // namespace polybench
