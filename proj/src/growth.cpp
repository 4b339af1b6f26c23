#include "barymap/growth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "barymap/detail/dedup.hpp"
#include "barymap/parallel.hpp"

namespace barymap {

void WeightedGraph::add_edge(int u, int v, double w) {
  if (u < 0 || v < 0 || !(w > 0.0)) throw std::invalid_argument("add_edge: bad edge");
  const int need = std::max(u, v) + 1;
  if (static_cast<int>(adj.size()) < need) adj.resize(need);
  adj[u].push_back({v, w});
  adj[v].push_back({u, w});
}

WeightedGraph WeightedGraph::from_edge_list(std::istream& in) {
  WeightedGraph g;
  std::string line;
  while (std::getline(in, line)) {
    for (char& c : line)
      if (c == ',') c = ' ';
    std::stringstream ss(line);
    int u, v;
    if (!(ss >> u >> v)) continue;
    double w = 1.0;
    ss >> w;
    g.add_edge(u, v, w);
  }
  if (g.size() == 0) throw std::invalid_argument("from_edge_list: empty input");
  return g;
}

BallGrowthSeries::BallGrowthSeries(std::vector<double> r, std::vector<double> v)
    : radii(std::move(r)), volumes(std::move(v)) {
  if (radii.size() != volumes.size() || radii.empty())
    throw std::invalid_argument("BallGrowthSeries: size mismatch");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1]))
      throw std::invalid_argument("BallGrowthSeries: radii must increase");
    if (volumes[i] < volumes[i - 1])
      throw std::invalid_argument("BallGrowthSeries: volumes must be nondecreasing");
  }
}

BallGrowthSeries ball_counts(const WeightedGraph& g, int base, int rmax) {
  if (base < 0 || base >= g.size()) throw std::out_of_range("ball_counts: bad base");
  if (rmax < 1) throw std::invalid_argument("ball_counts: rmax >= 1");

  std::vector<double> dist(g.size(), std::numeric_limits<double>::infinity());
  dist[base] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0.0, base});
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u]) continue;
    for (const auto& [v, w] : g.adj[u]) {
      if (du + w < dist[v]) {
        dist[v] = du + w;
        heap.push({dist[v], v});
      }
    }
  }

  std::vector<double> radii(rmax), counts(rmax);
  for (int r = 1; r <= rmax; ++r) {
    std::size_t c = 0;
    for (double d : dist)
      if (d <= r + 1e-9) ++c;
    radii[r - 1] = r;
    counts[r - 1] = static_cast<double>(c);
  }
  return BallGrowthSeries(std::move(radii), std::move(counts));
}

EntropyEstimate entropy_estimate(const BallGrowthSeries& series) {
  const std::size_t n = series.radii.size();
  if (n < 4) throw std::invalid_argument("entropy_estimate: need at least 4 points");
  for (double v : series.volumes)
    if (!(v > 0.0)) throw std::invalid_argument("entropy_estimate: volumes must be positive");

  const double lo = 0.5 * (series.radii.front() + series.radii.back());
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    if (series.radii[i] >= lo) {
      xs.push_back(series.radii[i]);
      ys.push_back(std::log(series.volumes[i]));
    }
  }
  if (xs.size() < 2)
    throw std::invalid_argument("entropy_estimate: tail window too small");

  const std::size_t m = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  double r2 = 1.0;
  if (syy > 0.0) {
    const double ss_res = syy - sxy * sxy / sxx;
    r2 = 1.0 - ss_res / syy;
  }
  return {slope, r2, xs.front(), xs.back(), static_cast<int>(m)};
}

OrbitSample enumerate_orbit(const std::vector<Isometry>& generators, const HPoint& base,
                            double radius, std::size_t max_points) {
  if (generators.empty()) throw std::invalid_argument("enumerate_orbit: no generators");
  if (!(radius > 0.0)) throw std::invalid_argument("enumerate_orbit: radius > 0");

  std::vector<Mat> alphabet;
  for (const auto& g : generators) {
    alphabet.push_back(g.mat);
    alphabet.push_back(g.inverse().mat);
  }

  OrbitSample orbit{base, {}, radius, false};
  detail::DedupGrid seen(base.dim() + 1, 1e-8);
  seen.insert(base.coords);
  orbit.points.push_back({base, 0});

  std::deque<std::pair<Mat, int>> frontier;  // group element, word length
  frontier.push_back({Mat::Identity(base.dim() + 1, base.dim() + 1), 0});
  while (!frontier.empty()) {
    const auto [mat, len] = frontier.front();
    frontier.pop_front();
    for (const auto& a : alphabet) {
      Mat next = mat * a;
      HPoint pt(next * base.coords);
      if (distance(base, pt) > radius) continue;
      if (seen.find(pt.coords) >= 0) continue;
      seen.insert(pt.coords);
      orbit.points.push_back({pt, len + 1});
      if (orbit.points.size() >= max_points) {
        orbit.capped = true;
        return orbit;
      }
      frontier.push_back({std::move(next), len + 1});
    }
  }
  return orbit;
}

double poincare_series(const OrbitSample& orbit, const HPoint& x, double s, int workers) {
  if (!(s > 0.0)) throw std::invalid_argument("poincare_series: s > 0");
  if (orbit.points.empty()) throw std::invalid_argument("poincare_series: empty orbit");
  return chunked_sum(orbit.points.size(), workers, [&](std::size_t i) {
    return std::exp(-s * distance(x, orbit.points[i].first));
  });
}

namespace {
double tail_mass(const OrbitSample& orbit, double s, int workers) {
  const double r = orbit.truncation_radius;
  return chunked_sum(orbit.points.size(), workers, [&](std::size_t i) {
    const double d = distance(orbit.basepoint, orbit.points[i].first);
    return (d > 0.5 * r && d <= r) ? std::exp(-s * d) : 0.0;
  });
}
}  // namespace

double critical_exponent(const OrbitSample& orbit, int workers) {
  if (orbit.points.empty()) throw std::invalid_argument("critical_exponent: empty orbit");
  // Find s where the outer-annulus mass crosses 1.
  double lo = 0.0, hi = 16.0;
  if (tail_mass(orbit, 1e-12, workers) <= 1.0) return 0.0;
  if (tail_mass(orbit, hi, workers) >= 1.0) return hi;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tail_mass(orbit, mid, workers) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

BoundaryMeasure patterson_sullivan_atoms(const OrbitSample& orbit, const HPoint& x,
                                         double s, double radius) {
  if (orbit.points.empty())
    throw std::invalid_argument("patterson_sullivan_atoms: empty orbit");
  std::vector<Atom> atoms;
  double basepoint_mass = 0.0;
  for (const auto& [pt, len] : orbit.points) {
    const double d_base = distance(orbit.basepoint, pt);
    if (d_base > radius || d_base < 1e-8) continue;
    atoms.push_back({radial_projection(pt, orbit.basepoint),
                     std::exp(-s * distance(x, pt))});
    basepoint_mass += std::exp(-s * d_base);
  }
  if (atoms.empty())
    throw std::invalid_argument("patterson_sullivan_atoms: insufficient orbit");
  for (auto& a : atoms) a.weight /= basepoint_mass;
  return BoundaryMeasure(orbit.basepoint.dim(), std::move(atoms));
}

double density_residual(const OrbitSample& orbit, const HPoint& p, const HPoint& q,
                        double s, double ell, double radius) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& [pt, len] : orbit.points) {
    const double d_base = distance(orbit.basepoint, pt);
    if (d_base > radius || d_base < 1e-8) continue;
    const BoundaryPoint theta = radial_projection(pt, orbit.basepoint);
    const double log_ratio = -s * (distance(p, pt) - distance(q, pt));
    const double target = busemann_value(theta, p, orbit.basepoint) -
                          busemann_value(theta, q, orbit.basepoint);
    total += std::abs(log_ratio + ell * target);
    ++count;
  }
  if (count == 0) throw std::invalid_argument("density_residual: insufficient orbit");
  return total / static_cast<double>(count);
}

}  // namespace barymap
