#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "barymap/hyperboloid.hpp"

namespace barymap {

// Symmetric distance matrix with zero diagonal; the triangle inequality is
// validated on construction (tolerance 1e-9).
class FiniteMetricSpace {
 public:
  explicit FiniteMetricSpace(Mat dist, std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(dist_.rows()); }
  double dist(int i, int j) const { return dist_(i, j); }
  const Mat& matrix() const { return dist_; }
  const std::vector<std::string>& labels() const { return labels_; }

  FiniteMetricSpace restrict_to(const std::array<int, 4>& idx) const;

 private:
  Mat dist_;
  std::vector<std::string> labels_;
};

// (x|y)_o = (d(x,o) + d(y,o) - d(x,y)) / 2.
double gromov_product(const FiniteMetricSpace& x, int o, int a, int b);

struct DeltaReport {
  double delta = 0.0;
  std::array<int, 4> witness{0, 0, 0, 0};  // basepoint, x, y, z
};

// Smallest delta such that (x|y)_o >= min((x|z)_o, (z|y)_o) - delta for every
// basepoint and triple, by exhaustive scan. Pass a fixed basepoint to get the
// single-basepoint variant.
DeltaReport delta_hyperbolicity(const FiniteMetricSpace& x, int workers,
                                int basepoint = -1);
DeltaReport delta_hyperbolicity_serial(const FiniteMetricSpace& x, int basepoint = -1);

struct TreeApproximation {
  Mat tree_dist;      // 4x4, satisfies the four-point condition exactly
  double distortion;  // max |tree_dist - dist|
};

// Reduces the strictly largest of the three pairwise sums to the middle one.
TreeApproximation four_point_tree_approx(const FiniteMetricSpace& x,
                                         const std::array<int, 4>& idx = {0, 1, 2, 3});

struct AlexandrovVerdict {
  bool satisfied = false;
  double margin = 0.0;           // dzw - comparison distance
  double comparison_dist = 0.0;  // d(z~, w~) in the model plane
};

// Comparison test for curvature >= -1: w lies on a geodesic from x to y
// (dxw + dwy == dxy); the configuration is rebuilt in the hyperbolic plane and
// d(z,w) must not fall below the comparison distance.
AlexandrovVerdict alexandrov_comparison_check(double dxy, double dyz, double dxz,
                                              double dxw, double dwy, double dzw);

FiniteMetricSpace metric_from_csv(std::istream& in);
// Edge list "u,v,weight" (weight optional, default 1); distances are the
// all-pairs shortest-path closure.
FiniteMetricSpace metric_from_edge_list(std::istream& in);

}  // namespace barymap
