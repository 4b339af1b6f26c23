#pragma once

#include <random>
#include <vector>

#include "barymap/barycenter.hpp"
#include "barymap/measures.hpp"

namespace barymap::testing {

// Random measure with atom count in [3, 12] and i.i.d. weights; passes the
// barycenter guards with overwhelming probability (weights are bounded away
// from half the mass by construction).
inline BoundaryMeasure random_measure(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> atom_count(4, 12);
  std::uniform_real_distribution<double> unif(0.2, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int k = atom_count(rng);
  std::vector<Atom> atoms;
  for (int i = 0; i < k; ++i) {
    Vec u(n);
    do {
      for (int j = 0; j < n; ++j) u(j) = gauss(rng);
    } while (u.norm() < 1e-6);
    atoms.push_back({BoundaryPoint::from_spatial(u), unif(rng)});
  }
  return BoundaryMeasure(n, std::move(atoms));
}

inline BoundaryMeasure cross_polytope_measure(int n) {
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) {
    Vec u = Vec::Zero(n);
    u(i) = 1.0;
    atoms.push_back({BoundaryPoint::from_spatial(u), 1.0 / (2 * n)});
    atoms.push_back({BoundaryPoint::from_spatial(-u), 1.0 / (2 * n)});
  }
  return BoundaryMeasure(n, std::move(atoms));
}

// Translation along the axis through the origin in spatial direction `axis`.
inline Isometry axis_boost(int n, int axis, double length) {
  Mat m = Mat::Identity(n + 1, n + 1);
  m(0, 0) = std::cosh(length);
  m(0, axis + 1) = m(axis + 1, 0) = std::sinh(length);
  m(axis + 1, axis + 1) = std::cosh(length);
  return Isometry(std::move(m));
}

// Rank-2 free group of translations along perpendicular axes; discrete for
// lengths this large.
inline std::vector<Isometry> schottky_generators(double length = 3.0) {
  return {axis_boost(2, 0, length), axis_boost(2, 1, length)};
}

}  // namespace barymap::testing
