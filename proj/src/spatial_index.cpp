#include "netlint/spatial_index.hpp"

#include <algorithm>
#include <cmath>

namespace netlint {

RTree RTree::bulk_build(std::span<const Vertex> points, int node_capacity) {
  if (node_capacity < 2) throw ConfigError("R-tree node capacity must be >= 2");
  RTree t;
  t.points_.assign(points.begin(), points.end());
  t.slots_.resize(points.size());
  for (std::uint32_t i = 0; i < points.size(); ++i) t.slots_[i] = i;
  if (points.empty()) return t;

  const std::uint32_t cap = static_cast<std::uint32_t>(node_capacity);
  auto box_of_point = [&](std::uint32_t slot) {
    const Vertex& v = t.points_[t.slots_[slot]];
    return Box{v.x, v.y, v.x, v.y};
  };

  // Sort-tile-recursive packing of one level: order items by x into
  // ceil(sqrt(P)) vertical slices, then by y inside each slice, and cut
  // runs of `cap` into parent nodes.
  struct Item {
    Box box;
    std::uint32_t ref;  // slot index (leaf level) or node index
  };
  auto center_x = [](const Box& b) { return b.min_x + b.max_x; };
  auto center_y = [](const Box& b) { return b.min_y + b.max_y; };

  auto pack_level = [&](std::vector<Item>& items, bool leaf) {
    std::uint32_t n = static_cast<std::uint32_t>(items.size());
    std::uint32_t node_count = (n + cap - 1) / cap;
    std::uint32_t slice_count =
        static_cast<std::uint32_t>(std::ceil(std::sqrt(double(node_count))));
    std::uint32_t slice_len = slice_count ? (n + slice_count - 1) / slice_count : n;

    std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
      return center_x(a.box) < center_x(b.box);
    });
    for (std::uint32_t s = 0; s < n; s += slice_len) {
      auto end = items.begin() + std::min<std::size_t>(s + slice_len, n);
      std::sort(items.begin() + s, end, [&](const Item& a, const Item& b) {
        return center_y(a.box) < center_y(b.box);
      });
    }

    std::vector<Item> parents;
    parents.reserve(node_count);
    for (std::uint32_t s = 0; s < n; s += cap) {
      std::uint32_t len = std::min(cap, n - s);
      Box box = items[s].box;
      for (std::uint32_t j = 1; j < len; ++j) {
        const Box& b = items[s + j].box;
        box.min_x = std::min(box.min_x, b.min_x);
        box.min_y = std::min(box.min_y, b.min_y);
        box.max_x = std::max(box.max_x, b.max_x);
        box.max_y = std::max(box.max_y, b.max_y);
      }
      Node node;
      node.box = box;
      node.leaf = leaf;
      node.count = len;
      if (leaf) {
        // Leaf children are a contiguous run of slots_; rewrite the
        // permutation to match the packed order.
        node.first = s;
      } else {
        node.first = items[s].ref;  // children were appended contiguously
      }
      parents.push_back({box, static_cast<std::uint32_t>(t.nodes_.size())});
      t.nodes_.push_back(node);
    }
    return parents;
  };

  // Leaf level: items are slots; pack, then apply the packed permutation.
  std::vector<Item> items;
  items.reserve(points.size());
  for (std::uint32_t i = 0; i < points.size(); ++i) {
    items.push_back({box_of_point(i), i});
  }
  {
    std::vector<Item> copy = items;
    std::vector<Item> parents = pack_level(copy, true);
    std::vector<std::uint32_t> order(copy.size());
    for (std::uint32_t i = 0; i < copy.size(); ++i) order[i] = copy[i].ref;
    std::vector<std::uint32_t> reordered(order.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) {
      reordered[i] = t.slots_[order[i]];
    }
    t.slots_ = std::move(reordered);
    items = std::move(parents);
  }
  while (items.size() > 1) {
    // Non-leaf packing requires children of one parent to be contiguous in
    // nodes_; re-sorting breaks that, so append sorted copies level by level.
    std::vector<Item> sorted = items;
    std::uint32_t n = static_cast<std::uint32_t>(sorted.size());
    std::uint32_t node_count = (n + cap - 1) / cap;
    std::uint32_t slice_count =
        static_cast<std::uint32_t>(std::ceil(std::sqrt(double(node_count))));
    std::uint32_t slice_len = slice_count ? (n + slice_count - 1) / slice_count : n;
    std::sort(sorted.begin(), sorted.end(), [&](const Item& a, const Item& b) {
      return center_x(a.box) < center_x(b.box);
    });
    for (std::uint32_t s = 0; s < n; s += slice_len) {
      auto end = sorted.begin() + std::min<std::size_t>(s + slice_len, n);
      std::sort(sorted.begin() + s, end, [&](const Item& a, const Item& b) {
        return center_y(a.box) < center_y(b.box);
      });
    }

    std::vector<Item> parents;
    parents.reserve(node_count);
    for (std::uint32_t s = 0; s < n; s += cap) {
      std::uint32_t len = std::min(cap, n - s);
      // Copy child nodes into a contiguous block.
      std::uint32_t first_child = static_cast<std::uint32_t>(t.nodes_.size());
      Box box = t.nodes_[sorted[s].ref].box;
      for (std::uint32_t j = 0; j < len; ++j) {
        const Node child = t.nodes_[sorted[s + j].ref];
        box.min_x = std::min(box.min_x, child.box.min_x);
        box.min_y = std::min(box.min_y, child.box.min_y);
        box.max_x = std::max(box.max_x, child.box.max_x);
        box.max_y = std::max(box.max_y, child.box.max_y);
        t.nodes_.push_back(child);
      }
      Node parent;
      parent.box = box;
      parent.leaf = false;
      parent.first = first_child;
      parent.count = len;
      parents.push_back({box, static_cast<std::uint32_t>(t.nodes_.size())});
      t.nodes_.push_back(parent);
    }
    items = std::move(parents);
  }
  t.root_ = items.front().ref;
  return t;
}

std::vector<std::uint32_t> RTree::query_box(const Vertex& lo,
                                            const Vertex& hi) const {
  std::vector<std::uint32_t> out;
  if (points_.empty()) return out;

  std::vector<std::uint32_t> stack{root_};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (node.box.min_x > hi.x || node.box.max_x < lo.x ||
        node.box.min_y > hi.y || node.box.max_y < lo.y) {
      continue;
    }
    if (node.leaf) {
      for (std::uint32_t j = 0; j < node.count; ++j) {
        std::uint32_t idx = slots_[node.first + j];
        const Vertex& v = points_[idx];
        if (v.x >= lo.x && v.x <= hi.x && v.y >= lo.y && v.y <= hi.y) {
          out.push_back(idx);
        }
      }
    } else {
      for (std::uint32_t j = 0; j < node.count; ++j) {
        stack.push_back(node.first + j);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

EndpointIndex EndpointIndex::bulk_build(std::vector<EndpointRecord> records,
                                        double quantum, int node_capacity) {
  if (quantum <= 0) throw ConfigError("quantum must be positive");
  EndpointIndex idx;
  idx.records_ = std::move(records);
  idx.quantum_ = quantum;

  idx.grid_.reserve(idx.records_.size());
  for (std::uint32_t i = 0; i < idx.records_.size(); ++i) {
    const EndpointRecord& r = idx.records_[i];
    GridKey key = quantize(r.coord, quantum);
    auto& bucket = idx.grid_[key];
    for (std::uint32_t other : bucket) {
      const EndpointRecord& o = idx.records_[other];
      if (o.feature == r.feature && o.role == r.role) {
        throw ConfigError(
            "duplicate endpoint record (feature " + std::to_string(r.feature) +
            ", " + to_string(r.role) + ") in one grid cell");
      }
    }
    bucket.push_back(i);
  }

  std::vector<Vertex> coords;
  coords.reserve(idx.records_.size());
  for (const EndpointRecord& r : idx.records_) coords.push_back(r.coord);
  idx.tree_ = RTree::bulk_build(coords, node_capacity);
  return idx;
}

std::vector<EndpointRecord> EndpointIndex::query_point(const Vertex& v) const {
  std::vector<EndpointRecord> out;
  auto it = grid_.find(quantize(v, quantum_));
  if (it == grid_.end()) return out;
  out.reserve(it->second.size());
  for (std::uint32_t i : it->second) out.push_back(records_[i]);
  return out;
}

std::vector<EndpointRecord> EndpointIndex::query_box(const Vertex& lo,
                                                     const Vertex& hi) const {
  std::vector<EndpointRecord> out;
  for (std::uint32_t i : tree_.query_box(lo, hi)) out.push_back(records_[i]);
  return out;
}

std::span<const std::uint32_t> EndpointIndex::cell(const GridKey& key) const {
  auto it = grid_.find(key);
  if (it == grid_.end()) return {};
  return it->second;
}

bool EndpointIndex::has_other_feature(const GridKey& key,
                                      std::uint32_t feature) const {
  for (std::uint32_t i : cell(key)) {
    if (records_[i].feature != feature) return true;
  }
  return false;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> spatial_join(
    const EndpointIndex& left, const EndpointIndex& right) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t l = 0; l < left.records().size(); ++l) {
    GridKey key = quantize(left.records()[l].coord, left.quantum());
    for (std::uint32_t r : right.cell(key)) out.emplace_back(l, r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace netlint
