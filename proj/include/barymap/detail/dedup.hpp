#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace barymap::detail {

// Tolerance-based point dedup on a uniform grid. Cells are a few tolerances
// wide; neighbor cells are probed only along axes where the query sits within
// tol of a cell boundary, so lookups stay O(1) for generic points while still
// catching matches that straddle a boundary.
class DedupGrid {
 public:
  DedupGrid(int dim, double tol) : dim_(dim), tol_(tol), cell_(4.0 * tol) {}

  // Slot of a stored point within tol (Euclidean), or -1.
  int find(const Eigen::VectorXd& v) const {
    std::vector<std::int64_t> base(dim_);
    std::vector<int> spread(dim_);  // extra probe offset needed per axis
    for (int i = 0; i < dim_; ++i) {
      const double scaled = v(i) / cell_;
      const double fl = std::floor(scaled);
      base[i] = static_cast<std::int64_t>(fl);
      const double frac = (scaled - fl) * cell_;
      spread[i] = frac < tol_ ? -1 : (cell_ - frac < tol_ ? 1 : 0);
    }
    std::vector<std::int64_t> key(base);
    int found = -1;
    probe(base, spread, key, 0, v, found);
    return found;
  }

  // Stores v and returns its slot.
  int insert(const Eigen::VectorXd& v) {
    std::vector<std::int64_t> key(dim_);
    for (int i = 0; i < dim_; ++i)
      key[i] = static_cast<std::int64_t>(std::floor(v(i) / cell_));
    const int slot = static_cast<int>(points_.size());
    cells_[hash_key(key)].push_back(slot);
    points_.push_back(v);
    return slot;
  }

  std::size_t size() const { return points_.size(); }

 private:
  void probe(const std::vector<std::int64_t>& base, const std::vector<int>& spread,
             std::vector<std::int64_t>& key, int axis, const Eigen::VectorXd& v,
             int& found) const {
    if (found >= 0) return;
    if (axis == dim_) {
      auto it = cells_.find(hash_key(key));
      if (it == cells_.end()) return;
      for (int slot : it->second) {
        if ((points_[slot] - v).norm() <= tol_) {
          found = slot;
          return;
        }
      }
      return;
    }
    key[axis] = base[axis];
    probe(base, spread, key, axis + 1, v, found);
    if (spread[axis] != 0 && found < 0) {
      key[axis] = base[axis] + spread[axis];
      probe(base, spread, key, axis + 1, v, found);
      key[axis] = base[axis];
    }
  }

  static std::uint64_t hash_key(const std::vector<std::int64_t>& key) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t k : key) {
      h ^= static_cast<std::uint64_t>(k);
      h *= 1099511628211ULL;
    }
    return h;
  }

  int dim_;
  double tol_;
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
  std::vector<Eigen::VectorXd> points_;
};

}  // namespace barymap::detail
