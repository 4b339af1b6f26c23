#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "barymap/measures.hpp"

namespace barymap {

struct WeightedGraph {
  std::vector<std::vector<std::pair<int, double>>> adj;

  int size() const { return static_cast<int>(adj.size()); }
  void add_edge(int u, int v, double w = 1.0);
  static WeightedGraph from_edge_list(std::istream& in);
};

// Radii with the corresponding ball volumes (counts or measures); volumes must
// be nondecreasing in the radius.
struct BallGrowthSeries {
  std::vector<double> radii;
  std::vector<double> volumes;

  BallGrowthSeries(std::vector<double> r, std::vector<double> v);
};

// |B(base, R)| for R = 1..rmax, by shortest-path distance from base.
BallGrowthSeries ball_counts(const WeightedGraph& g, int base, int rmax);

struct EntropyEstimate {
  double h = 0.0;   // slope of log volume over the tail window
  double r2 = 0.0;  // fit quality
  double window_lo = 0.0;
  double window_hi = 0.0;
  int points_used = 0;
};

// Least-squares slope of log(volume) against radius over the upper half of
// the radius range, as a finite-sample stand-in for the limsup growth rate.
EntropyEstimate entropy_estimate(const BallGrowthSeries& series);

// Orbit of a basepoint under words in the generators and their inverses,
// breadth-first by word length, deduplicated at 1e-8, pruned at the given
// radius and capped in size.
struct OrbitSample {
  HPoint basepoint;
  std::vector<std::pair<HPoint, int>> points;  // point, word length
  double truncation_radius = 0.0;
  bool capped = false;
};

inline constexpr std::size_t kOrbitCap = 1'000'000;

OrbitSample enumerate_orbit(const std::vector<Isometry>& generators, const HPoint& base,
                            double radius, std::size_t max_points = kOrbitCap);

// Truncated sum over orbit points of exp(-s d(x, y)).
double poincare_series(const OrbitSample& orbit, const HPoint& x, double s, int workers);

// Divergence proxy: the series mass contributed by the outer half-annulus
// (R/2, R]. The critical exponent is bracketed by bisection on the value of
// this tail; the bracketing error shrinks as the truncation radius grows.
double critical_exponent(const OrbitSample& orbit, int workers);

// Orbit points radially projected to the boundary with weights
// exp(-s d(x, orbit point)), normalized so the basepoint measure has mass 1.
// Orbit points within 1e-8 of the basepoint have no radial direction and are
// skipped; a trivial orbit therefore yields a single atom, which downstream
// barycenter guards reject.
BoundaryMeasure patterson_sullivan_atoms(const OrbitSample& orbit, const HPoint& x,
                                         double s, double radius);

// Mean over atoms of |log weight ratio + ell * b_theta(p, q)|, using only
// orbit points within the given radius.
double density_residual(const OrbitSample& orbit, const HPoint& p, const HPoint& q,
                        double s, double ell, double radius);

}  // namespace barymap
