#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "barymap/barycenter.hpp"
#include "helpers.hpp"

using namespace barymap;
using barymap::testing::cross_polytope_measure;
using barymap::testing::random_measure;

namespace {

BarycenterProblem random_problem(int n, std::mt19937_64& rng) {
  return BarycenterProblem(random_measure(n, rng), HPoint::origin(n));
}

// Coarse-to-fine sweep of the functional over the tangent plane at o,
// independent of the Newton path.
HPoint grid_minimizer(const BarycenterProblem& prob, double radius) {
  const int n = prob.origin.dim();
  REQUIRE(n == 2);
  const Mat frame = tangent_basis(prob.origin);
  Vec best = Vec::Zero(2);
  double best_value = functional_value(prob, prob.origin);
  Vec center = Vec::Zero(2);
  double span = radius;
  for (int level = 0; level < 6; ++level) {
    for (int i = -20; i <= 20; ++i) {
      for (int j = -20; j <= 20; ++j) {
        Vec c = center;
        c(0) += span * i / 20.0;
        c(1) += span * j / 20.0;
        const HPoint p = exp_map(TangentVector(prob.origin, frame * c));
        const double v = functional_value(prob, p);
        if (v < best_value) {
          best_value = v;
          best = c;
        }
      }
    }
    center = best;
    span /= 10.0;
  }
  return exp_map(TangentVector(prob.origin, frame * best));
}

}  // namespace

TEST_CASE("guards reject degenerate measures") {
  const int n = 3;
  const HPoint o = HPoint::origin(n);
  Vec e1 = Vec::Zero(n), e2 = Vec::Zero(n);
  e1(0) = 1.0;
  e2(1) = 1.0;

  // Heavy atom.
  std::vector<Atom> heavy{{BoundaryPoint::from_spatial(e1), 3.0},
                          {BoundaryPoint::from_spatial(e2), 1.0},
                          {BoundaryPoint::from_spatial(-e2), 1.0}};
  CHECK_THROWS_AS(BarycenterProblem(BoundaryMeasure(n, heavy), o), GuardViolation);

  // Two atoms only.
  std::vector<Atom> pair{{BoundaryPoint::from_spatial(e1), 1.0},
                         {BoundaryPoint::from_spatial(-e1), 1.0}};
  CHECK_THROWS_AS(BarycenterProblem(BoundaryMeasure(n, pair), o), GuardViolation);

  std::vector<Atom> fine{{BoundaryPoint::from_spatial(e1), 1.0},
                         {BoundaryPoint::from_spatial(e2), 1.0},
                         {BoundaryPoint::from_spatial(-e2), 1.0}};
  CHECK_NOTHROW(BarycenterProblem(BoundaryMeasure(n, fine), o));
}

TEST_CASE("symmetric measures have the origin as barycenter") {
  for (int n : {2, 3, 5}) {
    const BarycenterProblem prob(cross_polytope_measure(n), HPoint::origin(n));
    const BarycenterResult res = barycenter(prob);
    CHECK(distance(res.point, prob.origin) < 1e-10);
    CHECK(res.final_gradient_norm <= prob.grad_tol);
    CHECK(res.hessian_min_eigenvalue > 0.0);
  }
}

TEST_CASE("gradient matches finite differences of the value") {
  auto rng = make_rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 3;
    const BarycenterProblem prob = random_problem(n, rng);
    const HPoint p = random_point_in_ball(prob.origin, 1.5, rng);
    const TangentVector u = random_unit_tangent(p, rng);
    const double h = 1e-5;
    const double fd = (functional_value(prob, exp_map(TangentVector(p, h * u.vec))) -
                       functional_value(prob, exp_map(TangentVector(p, -h * u.vec)))) /
                      (2.0 * h);
    CHECK(std::abs(fd - lorentz_dot(functional_gradient(prob, p).vec, u.vec)) < 1e-6);
  }
}

TEST_CASE("near-degenerate measures drive the Hessian eigenvalue to zero") {
  const int n = 2;
  const HPoint o = HPoint::origin(n);
  Vec e1 = Vec::Zero(n), e2 = Vec::Zero(n);
  e1(0) = 1.0;
  e2(1) = 1.0;
  double prev = 1e300;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    std::vector<Atom> atoms{{BoundaryPoint::from_spatial(e1), 1.0},
                            {BoundaryPoint::from_spatial(-e1), 1.0},
                            {BoundaryPoint::from_spatial(e2), eps}};
    const BarycenterProblem prob(BoundaryMeasure(n, atoms), o);
    const BarycenterResult res = barycenter(prob);
    CHECK(res.hessian_min_eigenvalue < prev);
    prev = res.hessian_min_eigenvalue;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("equivariance and scale invariance at the solver fixed point") {
  auto rng = make_rng(32);
  const int n = 3;
  const BarycenterProblem prob = random_problem(n, rng);
  const BarycenterResult base = barycenter(prob);

  for (int trial = 0; trial < 50; ++trial) {
    const Isometry g = random_isometry(n, 7000 + trial);
    const BoundaryMap gm = [&](const BoundaryPoint& t) { return g(t); };
    const BarycenterProblem moved(pushforward(prob.measure, gm), g(prob.origin));
    CHECK(distance(barycenter(moved).point, g(base.point)) < 1e-8);
  }

  for (double c : {0.1, 7.0, 1e3}) {
    const BarycenterProblem scaled(scale(prob.measure, c), prob.origin);
    CHECK(distance(barycenter(scaled).point, base.point) < 1e-12);
  }
}

TEST_CASE("solver is independent of the starting point and damps rarely") {
  auto rng = make_rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const BarycenterProblem prob = random_problem(n, rng);
    const HPoint s1 = random_point_in_ball(prob.origin, 2.0, rng);
    const HPoint s2 = random_point_in_ball(prob.origin, 2.0, rng);
    const BarycenterResult r1 = barycenter(prob, s1);
    const BarycenterResult r2 = barycenter(prob, s2);
    CHECK(distance(r1.point, r2.point) < 1e-9);
    CHECK(r1.max_halvings <= 2);
    CHECK(r2.max_halvings <= 2);
  }
}

TEST_CASE("natural point: identity, isometry, grid oracle") {
  const int n = 3;
  const HPoint o = HPoint::origin(n);
  const DensityFamily fam{o, visual_quadrature(o, 64, "gauss"), double(n - 1)};
  const BoundaryMap id = [](const BoundaryPoint& t) { return t; };

  CHECK(distance(natural_point(o, fam, id), o) < 1e-10);

  auto rng = make_rng(34);
  const HPoint x = random_point_in_ball(o, 0.3, rng);
  CHECK(distance(natural_point(x, fam, id), x) < 1e-6);

  const Isometry g = random_isometry(n, 77);
  const BoundaryMap gm = [&](const BoundaryPoint& t) { return g(t); };
  CHECK(distance(natural_point(x, fam, gm), g(x)) < 1e-6);

  // Non-isometric squeeze, cross-checked against dense minimization (n = 2).
  const HPoint o2 = HPoint::origin(2);
  const DensityFamily fam2{o2, visual_quadrature(o2, 64, "gauss"), 1.0};
  const BoundaryMap squeeze = [](const BoundaryPoint& t) {
    Vec u = t.spatial();
    const double angle = std::atan2(u(1), u(0));
    const double mapped = angle - 0.4 * std::sin(angle);
    Vec v(2);
    v << std::cos(mapped), std::sin(mapped);
    return BoundaryPoint::from_spatial(v);
  };
  const HPoint x2 = random_point_in_ball(o2, 0.5, rng);
  const HPoint fast = natural_point(x2, fam2, squeeze);
  const BarycenterProblem prob(pushforward(density_at(fam2, x2), squeeze), o2);
  const HPoint slow = grid_minimizer(prob, 2.0);
  CHECK(distance(fast, slow) < 1e-3);
}

TEST_CASE("identity-family natural map is a contraction up to quadrature slack") {
  const int n = 3;
  const HPoint o = HPoint::origin(n);
  const DensityFamily fam{o, visual_quadrature(o, 256, "gauss"), double(n - 1)};
  const BoundaryMap id = [](const BoundaryPoint& t) { return t; };
  auto rng = make_rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const HPoint x = random_point_in_ball(o, 0.8, rng);
    const HPoint y = random_point_in_ball(o, 0.8, rng);
    if (distance(x, y) < 0.05) continue;
    const double ratio = distance(natural_point(x, fam, id), natural_point(y, fam, id)) /
                         distance(x, y);
    CHECK(ratio <= 1.0 + 0.05);
  }
}

TEST_CASE("non-convergence carries the last iterate") {
  auto rng = make_rng(36);
  const BarycenterProblem prob(random_measure(2, rng), HPoint::origin(2), 1e-10, 1);
  try {
    barycenter(prob, random_point_in_ball(prob.origin, 3.0, rng));
    // A single iteration may legitimately converge for mild measures; force
    // failure only if it did not.
  } catch (const NonConvergence& e) {
    CHECK(e.iterations >= 1);
    CHECK(e.gradient_norm >= 0.0);
    CHECK(std::abs(lorentz_dot(e.last_iterate.coords, e.last_iterate.coords) + 1.0) < 1e-12);
  }
}
