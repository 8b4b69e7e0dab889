#include "tactile/geometry/bvh.hpp"

#include <numeric>

namespace tactile::geometry {

Bvh::Bvh(std::span<const Aabb> boxes, std::size_t leaf_size) {
  if (boxes.empty()) return;
  leaf_size = std::max<std::size_t>(leaf_size, 1);
  prims_.resize(boxes.size());
  std::iota(prims_.begin(), prims_.end(), 0u);
  std::vector<Vec3> centers(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) centers[i] = boxes[i].center();
  nodes_.reserve(2 * boxes.size() / leaf_size + 2);
  nodes_.emplace_back();
  build(boxes, centers, 0, 0, static_cast<std::uint32_t>(boxes.size()), 0, leaf_size);
}

void Bvh::build(std::span<const Aabb> boxes, const std::vector<Vec3>& centers,
                std::uint32_t node, std::uint32_t begin, std::uint32_t end, std::size_t depth,
                std::size_t leaf_size) {
  depth_ = std::max(depth_, depth);
  Aabb box;
  Aabb centroid_box;
  for (std::uint32_t i = begin; i < end; ++i) {
    box.expand(boxes[prims_[i]]);
    centroid_box.expand(centers[prims_[i]]);
  }
  nodes_[node].box = box;
  if (end - begin <= leaf_size) {
    nodes_[node].first = begin;
    nodes_[node].count = end - begin;
    return;
  }

  const Vec3 ext = centroid_box.extent();
  int axis = 0;
  if (ext.y > ext[axis]) axis = 1;
  if (ext.z > ext[axis]) axis = 2;

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(prims_.begin() + begin, prims_.begin() + mid, prims_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) {
                     const double ca = centers[a][axis];
                     const double cb = centers[b][axis];
                     return ca < cb || (ca == cb && a < b);
                   });

  const auto left = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  nodes_.emplace_back();
  nodes_[node].first = left;
  nodes_[node].count = 0;
  build(boxes, centers, left, begin, mid, depth + 1, leaf_size);
  build(boxes, centers, left + 1, mid, end, depth + 1, leaf_size);
}

}  // namespace tactile::geometry
