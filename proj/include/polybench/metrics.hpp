#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "polybench/geom.hpp"

namespace polybench {

class PolygonMesh;

/// Radius and center of the largest circle contained in `p`.
///
/// The optimum touches at least three boundary features (edge lines or
/// reflex vertices), so every such tangency configuration is enumerated and
/// scored by its true clearance to the boundary. Candidates whose clearance
/// falls short of the tangency radius by more than `tol` are still scored
/// by clearance, which keeps the result a valid inscribed circle.
Circle inscribed_circle(const Polygon2& p, double tol);
Circle inscribed_circle(const Polygon2& p);

/// Welzl's minimum enclosing circle of the vertex set. The visiting order is
/// shuffled with a fixed seed.
Circle min_enclosing_circle(std::span<const Point2> points, std::uint64_t seed = 0x9e3779b97f4a7c15ull);
Circle min_enclosing_circle(const Polygon2& p);

/// Intersection of the interior half-planes of all edges. Returns nullopt
/// when the kernel is empty or its area is below 1e-14.
std::optional<Polygon2> kernel(const Polygon2& p);

enum class Metric : int { IC, CC, CR, AR, KE, KAR, PAR, MA, SE, ER, MPD, NPD };
inline constexpr std::size_t kMetricCount = 12;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::IC, Metric::CC, Metric::CR, Metric::AR,  Metric::KE,  Metric::KAR,
    Metric::PAR, Metric::MA, Metric::SE, Metric::ER, Metric::MPD, Metric::NPD};
inline constexpr std::array<Metric, 6> kScaleInvariantMetrics = {
    Metric::CR, Metric::KAR, Metric::PAR, Metric::MA, Metric::ER, Metric::NPD};

std::string_view metric_name(Metric m);

/// Direction in which a metric gets worse. Scale-invariant metrics are
/// larger-is-better (PAR included, its circle limit 1/2 being the optimum);
/// sizes get worse as they shrink, except CC which gets worse as it grows.
bool worse_when_smaller(Metric m);

struct MetricsRecord {
  std::array<double, kMetricCount> values{};

  double& operator[](Metric m) { return values[static_cast<int>(m)]; }
  double operator[](Metric m) const { return values[static_cast<int>(m)]; }
};

MetricsRecord compute_polygon_metrics(const Polygon2& p);

enum class ElementSelector {
  All,          ///< every cell
  NonTriangle,  ///< cells tagged as central polygon
  Worst,        ///< polygon cells plus triangles sharing a vertex with them
};

struct MetricStats {
  double min = 0.0;
  double avg = 0.0;
  double max = 0.0;
};

struct MeshMetricsRecord {
  std::array<MetricStats, kMetricCount> stats{};
  /// Per metric: min over the set for worse-when-smaller metrics, max otherwise.
  std::array<double, kMetricCount> worst{};
  std::size_t element_count = 0;

  const MetricStats& operator[](Metric m) const { return stats[static_cast<int>(m)]; }
  double worst_of(Metric m) const { return worst[static_cast<int>(m)]; }
};

MeshMetricsRecord aggregate_metrics(std::span<const MetricsRecord> records);
MeshMetricsRecord aggregate_mesh_metrics(const PolygonMesh& mesh, ElementSelector selector);

}  // namespace polybench
