#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "polybench/geom.hpp"

namespace polybench {

enum class FamilyId { Comb, Convexity, Isotropy, Maze, NSided, Star, ULike, Zeta, Random };

inline constexpr std::array<FamilyId, 8> kParametricFamilies = {
    FamilyId::Comb,   FamilyId::Convexity, FamilyId::Isotropy, FamilyId::Maze,
    FamilyId::NSided, FamilyId::Star,      FamilyId::ULike,    FamilyId::Zeta};

/// Lowercase CLI name (`comb`, `convexity`, ..., `random`).
std::string_view family_name(FamilyId f);
std::optional<FamilyId> parse_family(std::string_view name);

struct PolygonSpec {
  FamilyId family = FamilyId::Comb;
  double t = 0.0;
  std::uint64_t seed = 0;  ///< used by Random only
};

/// Floor on the shrink factor so t = 1 polygons keep a positive area.
inline constexpr double kMinShrink = 0.05;
inline double shrink_factor(double t) { return t < 1.0 - kMinShrink ? 1.0 - t : kMinShrink; }

/// Parametric polygon P(t) inside [0,1]^2. Random specs delegate to
/// make_random_polygon with a vertex count derived from the seed.
Polygon2 make_polygon(const PolygonSpec& spec);

/// Simple polygon with n vertices obtained by untangling a random vertex
/// loop with 2-opt moves. Deterministic per seed.
Polygon2 make_random_polygon(int n, std::uint64_t seed);

/// Vertex count used for a Random spec with the given seed (6..20).
int random_vertex_count(std::uint64_t seed);

/// xoshiro256** seeded through splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  double uniform();  ///< [0, 1)
  std::uint64_t below(std::uint64_t bound);

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace polybench
