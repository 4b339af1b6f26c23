#include "barymap/coarse.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "barymap/parallel.hpp"

namespace barymap {

FiniteMetricSpace::FiniteMetricSpace(Mat dist, std::vector<std::string> labels)
    : dist_(std::move(dist)), labels_(std::move(labels)) {
  const int n = static_cast<int>(dist_.rows());
  if (dist_.cols() != n || n < 1)
    throw std::invalid_argument("FiniteMetricSpace: matrix must be square");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
    throw std::invalid_argument("FiniteMetricSpace: label count mismatch");
  for (int i = 0; i < n; ++i) {
    if (dist_(i, i) != 0.0)
      throw std::invalid_argument("FiniteMetricSpace: nonzero diagonal");
    for (int j = i + 1; j < n; ++j) {
      if (dist_(i, j) < 0.0 || std::abs(dist_(i, j) - dist_(j, i)) > 1e-9)
        throw std::invalid_argument("FiniteMetricSpace: not a symmetric nonnegative matrix");
      dist_(j, i) = dist_(i, j);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (dist_(i, j) > dist_(i, k) + dist_(k, j) + 1e-9)
          throw std::invalid_argument("FiniteMetricSpace: triangle inequality fails");
}

FiniteMetricSpace FiniteMetricSpace::restrict_to(const std::array<int, 4>& idx) const {
  Mat d(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d(i, j) = dist_(idx[i], idx[j]);
  return FiniteMetricSpace(std::move(d));
}

double gromov_product(const FiniteMetricSpace& x, int o, int a, int b) {
  const int n = x.size();
  if (o < 0 || a < 0 || b < 0 || o >= n || a >= n || b >= n)
    throw std::out_of_range("gromov_product: index out of range");
  return 0.5 * (x.dist(a, o) + x.dist(b, o) - x.dist(a, b));
}

namespace {

struct DeltaCandidate {
  double excess = -std::numeric_limits<double>::infinity();
  std::array<int, 4> witness{0, 0, 0, 0};

  void consider(double e, int o, int a, int b, int c) {
    const std::array<int, 4> w{o, a, b, c};
    if (e > excess || (e == excess && w < witness)) {
      excess = e;
      witness = w;
    }
  }

  void merge(const DeltaCandidate& other) {
    if (other.excess > excess || (other.excess == excess && other.witness < witness))
      *this = other;
  }
};

// Worst four-point defect for basepoint o and all triples {x,y,z}; z plays the
// middle role, so each unordered triple is tried in its three arrangements.
DeltaCandidate scan_basepoint(const FiniteMetricSpace& m, int o) {
  DeltaCandidate best;
  const int n = m.size();
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      const double pxy = gromov_product(m, o, x, y);
      for (int z = 0; z < n; ++z) {
        const double pxz = gromov_product(m, o, x, z);
        const double pzy = gromov_product(m, o, z, y);
        best.consider(std::min(pxz, pzy) - pxy, o, x, y, z);
      }
    }
  }
  return best;
}

}  // namespace

DeltaReport delta_hyperbolicity(const FiniteMetricSpace& x, int workers, int basepoint) {
  const int n = x.size();
  if (n < 4 && basepoint < 0) return {0.0, {0, 0, 0, 0}};
  if (basepoint >= n) throw std::out_of_range("delta_hyperbolicity: basepoint out of range");

  std::vector<DeltaCandidate> per_chunk(kSumChunks);
  const std::size_t bases = basepoint >= 0 ? 1 : static_cast<std::size_t>(n);
  for_each_chunk(bases, workers, [&](int c, std::size_t begin, std::size_t end) {
    DeltaCandidate best;
    for (std::size_t o = begin; o < end; ++o)
      best.merge(scan_basepoint(x, basepoint >= 0 ? basepoint : static_cast<int>(o)));
    per_chunk[c] = best;
  });
  DeltaCandidate best;
  for (const auto& c : per_chunk) best.merge(c);
  return {std::max(0.0, best.excess), best.witness};
}

DeltaReport delta_hyperbolicity_serial(const FiniteMetricSpace& x, int basepoint) {
  const int n = x.size();
  if (n < 4 && basepoint < 0) return {0.0, {0, 0, 0, 0}};
  DeltaCandidate best;
  if (basepoint >= 0) {
    best = scan_basepoint(x, basepoint);
  } else {
    for (int o = 0; o < n; ++o) best.merge(scan_basepoint(x, o));
  }
  return {std::max(0.0, best.excess), best.witness};
}

TreeApproximation four_point_tree_approx(const FiniteMetricSpace& x,
                                         const std::array<int, 4>& idx) {
  Mat d(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d(i, j) = x.dist(idx[i], idx[j]);

  // The three pairings: (01|23), (02|13), (03|12).
  const std::array<std::array<int, 4>, 3> pairs{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  std::array<double, 3> sums{};
  for (int k = 0; k < 3; ++k)
    sums[k] = d(pairs[k][0], pairs[k][1]) + d(pairs[k][2], pairs[k][3]);

  int top = 0;
  for (int k = 1; k < 3; ++k)
    if (sums[k] > sums[top]) top = k;
  double mid = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k)
    if (k != top) mid = std::max(mid, sums[k]);

  const double e = 0.5 * (sums[top] - mid);
  if (e > 0.0) {
    const auto& p = pairs[top];
    d(p[0], p[1]) -= e;
    d(p[1], p[0]) -= e;
    d(p[2], p[3]) -= e;
    d(p[3], p[2]) -= e;
  }
  return {std::move(d), e};
}

namespace {
// Hyperbolic law of cosines: angle opposite side c in a triangle (a, b, c).
double triangle_angle(double a, double b, double c) {
  if (a <= 0.0 || b <= 0.0)
    throw std::invalid_argument("alexandrov: degenerate comparison triangle");
  const double num = std::cosh(a) * std::cosh(b) - std::cosh(c);
  const double den = std::sinh(a) * std::sinh(b);
  double cosv = num / den;
  if (cosv > 1.0 + 1e-9 || cosv < -1.0 - 1e-9)
    throw std::invalid_argument("alexandrov: distances violate the triangle inequality");
  return std::acos(std::clamp(cosv, -1.0, 1.0));
}
}  // namespace

AlexandrovVerdict alexandrov_comparison_check(double dxy, double dyz, double dxz,
                                              double dxw, double dwy, double dzw) {
  for (double v : {dxy, dyz, dxz, dxw, dwy, dzw})
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument("alexandrov: distances must be finite and nonnegative");
  if (std::abs(dxw + dwy - dxy) > 1e-9)
    throw std::invalid_argument("alexandrov: w must lie on the geodesic from x to y");

  const double angle_x = triangle_angle(dxy, dxz, dyz);
  // w~ sits on the x~y~ side at distance dxw, so the angle at x~ is shared.
  const double cosh_zw =
      std::cosh(dxw) * std::cosh(dxz) - std::sinh(dxw) * std::sinh(dxz) * std::cos(angle_x);
  const double comparison = std::acosh(std::max(1.0, cosh_zw));
  const double margin = dzw - comparison;
  return {margin >= -1e-9, margin, comparison};
}

namespace {
std::vector<double> parse_row(const std::string& line) {
  std::vector<double> row;
  std::string token;
  std::stringstream ss(line);
  while (std::getline(ss, token, ',')) {
    if (token.find_first_not_of(" \t\r") == std::string::npos) continue;
    row.push_back(std::stod(token));
  }
  return row;
}
}  // namespace

FiniteMetricSpace metric_from_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(parse_row(line));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw std::invalid_argument("metric_from_csv: empty input");
  Mat d(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw std::invalid_argument("metric_from_csv: matrix is not square");
    for (int j = 0; j < n; ++j) d(i, j) = rows[i][j];
  }
  return FiniteMetricSpace(std::move(d));
}

FiniteMetricSpace metric_from_edge_list(std::istream& in) {
  struct Edge {
    int u, v;
    double w;
  };
  std::vector<Edge> edges;
  int max_vertex = -1;
  std::string line;
  while (std::getline(in, line)) {
    for (char& c : line)
      if (c == ',') c = ' ';
    std::stringstream ss(line);
    int u, v;
    if (!(ss >> u >> v)) continue;
    double w = 1.0;
    ss >> w;
    if (u < 0 || v < 0 || !(w > 0.0))
      throw std::invalid_argument("metric_from_edge_list: bad edge");
    edges.push_back({u, v, w});
    max_vertex = std::max({max_vertex, u, v});
  }
  if (max_vertex < 0) throw std::invalid_argument("metric_from_edge_list: empty input");
  const int n = max_vertex + 1;

  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back({e.v, e.w});
    adj[e.v].push_back({e.u, e.w});
  }

  const double inf = std::numeric_limits<double>::infinity();
  Mat d = Mat::Constant(n, n, inf);
  for (int src = 0; src < n; ++src) {
    std::vector<double> dist(n, inf);
    dist[src] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, src});
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du > dist[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (du + w < dist[v]) {
          dist[v] = du + w;
          heap.push({dist[v], v});
        }
      }
    }
    for (int j = 0; j < n; ++j) d(src, j) = dist[j];
  }
  if (!d.allFinite())
    throw std::invalid_argument("metric_from_edge_list: graph is disconnected");
  return FiniteMetricSpace(std::move(d));
}

}  // namespace barymap
