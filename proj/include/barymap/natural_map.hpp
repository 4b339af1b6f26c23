#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "barymap/barycenter.hpp"

namespace barymap {

// Finite-sample realization of the square-root density embedding:
// phi(x)_k = exp(-h * B(eta_k, x, origin) / 2), strictly positive, all-ones
// at the origin. Norms downstream use the empirical mean inner product.
struct PhiEmbedding {
  std::vector<BoundaryPoint> sample_boundary;
  double h;
  HPoint origin;
};

Vec phi(const PhiEmbedding& emb, const HPoint& x);
double phi_mean_norm(const Vec& v);

// Smooth non-Moebius boundary diffeomorphism: the polar angle about a fixed
// spatial axis is remapped as angle -> angle - beta * sin(angle), |beta| < 1.
BoundaryMap squeeze_map(int axis, double beta);

// A scenario pins the density family, the boundary map, and the entropy
// parameter. When h differs from n-1, the domain carries the metric rescaled
// by c = (n-1)/h, which shows up only in the Jacobian normalization.
struct NaturalMapScenario {
  int n;
  double h;
  DensityFamily family;
  BoundaryMap boundary_map;
  int m;
  std::uint64_t seed;
  double fd_step = 1e-4;
  double eval_radius = 0.5;
  nlohmann::json descriptor;  // round-trippable description, for reports

  double domain_scale() const { return (n - 1) / h; }
};

NaturalMapScenario scenario_from_json(const nlohmann::json& j);

HPoint evaluate(const NaturalMapScenario& scenario, const HPoint& x);

struct JacobianSample {
  Mat matrix;      // n x n, domain frame orthonormal in the rescaled metric
  double abs_det;
};

// Central differences of evaluate() in orthonormal frames at x and F(x), with
// one Richardson refinement at half step. step is measured in the domain
// metric and must lie in [1e-6, 1e-2].
JacobianSample jacobian_fd(const NaturalMapScenario& scenario, const HPoint& x,
                           double step);

struct BoundCheckRow {
  HPoint x;
  HPoint fx;
  double abs_det = 0.0;
  double lemma_bound = 0.0;   // h^n sqrt(det H) / (n^{n/2} det K) at F(x)
  double global_bound = 0.0;  // (h/(n-1))^n
  double margin = 0.0;        // min(bounds) - |det|
  bool ok = false;
  std::string guard_error;    // nonempty if the sample was rejected
};

struct BoundCheckReport {
  std::vector<BoundCheckRow> rows;
  std::size_t violations = 0;      // |det| above min(bounds) + tolerance
  std::size_t guard_failures = 0;
  double max_abs_det = 0.0;
  double tolerance = 1e-2;
};

BoundCheckReport bound_check(const NaturalMapScenario& scenario, int samples);

}  // namespace barymap
