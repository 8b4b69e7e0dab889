#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tactile/vec3.hpp"

namespace tactile::geometry {

struct Aabb {
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  Vec3 lo{kInf, kInf, kInf};
  Vec3 hi{-kInf, -kInf, -kInf};

  void expand(const Vec3& p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  void expand(const Aabb& b) {
    expand(b.lo);
    expand(b.hi);
  }
  Vec3 center() const { return (lo + hi) * 0.5; }
  Vec3 extent() const { return hi - lo; }

  // Squared distance from p to the box (0 inside).
  double distance2(const Vec3& p) const {
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double v = p[a];
      const double l = lo[a];
      const double h = hi[a];
      if (v < l) d2 += (l - v) * (l - v);
      if (v > h) d2 += (v - h) * (v - h);
    }
    return d2;
  }
};

struct NearestHit {
  std::uint32_t index = 0;
  double distance2 = 0.0;
};

// Axis-aligned bounding-volume hierarchy with median splits. Immutable after
// construction; queries are const and may run concurrently.
class Bvh {
 public:
  Bvh() = default;
  explicit Bvh(std::span<const Aabb> boxes, std::size_t leaf_size = 4);

  bool empty() const { return nodes_.empty(); }
  std::size_t depth() const { return depth_; }
  std::size_t node_count() const { return nodes_.size(); }

  // Nearest primitive under `dist2(index) -> squared distance`. Among equal
  // distances the smallest primitive index wins, independent of traversal
  // order. Primitives farther than `max_distance2` are ignored.
  template <typename Dist2>
  std::optional<NearestHit> nearest(const Vec3& p, Dist2&& dist2,
                                    double max_distance2 = Aabb::kInf) const {
    if (nodes_.empty()) return std::nullopt;
    std::optional<NearestHit> best;
    double bound = max_distance2;
    std::array<std::uint32_t, 128> stack{};
    std::size_t top = 0;
    stack[top++] = 0;
    while (top > 0) {
      const Node& node = nodes_[stack[--top]];
      if (node.box.distance2(p) > bound) continue;
      if (node.count > 0) {
        for (std::uint32_t i = 0; i < node.count; ++i) {
          const std::uint32_t prim = prims_[node.first + i];
          const double d2 = dist2(prim);
          if (d2 > bound) continue;
          if (!best || d2 < best->distance2 || (d2 == best->distance2 && prim < best->index)) {
            best = NearestHit{prim, d2};
            bound = d2;
          }
        }
        continue;
      }
      const std::uint32_t a = node.first;
      const std::uint32_t b = node.first + 1;
      const double da = nodes_[a].box.distance2(p);
      const double db = nodes_[b].box.distance2(p);
      // Nearer child on top of the stack.
      if (da <= db) {
        stack[top++] = b;
        stack[top++] = a;
      } else {
        stack[top++] = a;
        stack[top++] = b;
      }
    }
    return best;
  }

 private:
  struct Node {
    Aabb box;
    std::uint32_t first = 0;  // leaf: offset into prims_; inner: left child
    std::uint32_t count = 0;  // 0 for inner nodes
  };

  void build(std::span<const Aabb> boxes, const std::vector<Vec3>& centers,
             std::uint32_t node, std::uint32_t begin, std::uint32_t end, std::size_t depth,
             std::size_t leaf_size);

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> prims_;
  std::size_t depth_ = 0;
};

}  // namespace tactile::geometry
