#include "barymap/barycenter.hpp"

#include <algorithm>
#include <cmath>

namespace barymap {

namespace {

void check_guards(const BoundaryMeasure& mu) {
  const double mass = mu.total_mass();
  for (const auto& a : mu.atoms())
    if (!(a.weight < 0.5 * mass))
      throw GuardViolation("barycenter guard: atom carries >= half the total mass");
  if (mu.size() < 3)
    throw GuardViolation("barycenter guard: need at least 3 atoms");
  const Vec first = mu.atoms().front().dir.spatial();
  bool all_in_pair = true;
  for (const auto& a : mu.atoms()) {
    const double c = std::abs(first.dot(a.dir.spatial()));
    if (c < 1.0 - 1e-12) {
      all_in_pair = false;
      break;
    }
  }
  if (all_in_pair)
    throw GuardViolation("barycenter guard: support lies in a single antipodal pair");
}

HPoint default_start(const BarycenterProblem& prob) {
  Vec c = Vec::Zero(prob.origin.coords.size());
  for (const auto& a : prob.measure.atoms()) c += a.weight * a.dir.dir;
  return HPoint(std::move(c));  // future timelike by the nondegeneracy guard
}

}  // namespace

BarycenterProblem::BarycenterProblem(BoundaryMeasure mu, HPoint o, double tol, int max_iter)
    : measure(std::move(mu)), origin(std::move(o)), grad_tol(tol), max_iterations(max_iter) {
  if (measure.dim() != origin.dim())
    throw std::invalid_argument("BarycenterProblem: dimension mismatch");
  check_guards(measure);
}

double functional_value(const BarycenterProblem& prob, const HPoint& p) {
  double v = 0.0;
  for (const auto& a : prob.measure.atoms())
    v += a.weight * busemann_value(a.dir, p, prob.origin);
  return v;
}

TangentVector functional_gradient(const BarycenterProblem& prob, const HPoint& p) {
  Vec g = Vec::Zero(p.coords.size());
  for (const auto& a : prob.measure.atoms())
    g += a.weight * busemann_gradient(a.dir, p, prob.origin).vec;
  return TangentVector(p, std::move(g));
}

SpdForm functional_hessian(const BarycenterProblem& prob, const HPoint& p) {
  const int n = p.dim();
  const Mat frame = tangent_basis(p);
  Mat h = Mat::Zero(n, n);
  Vec g(n);
  double mass = 0.0;
  for (const auto& a : prob.measure.atoms()) {
    const TangentVector grad = busemann_gradient(a.dir, p, prob.origin);
    for (int i = 0; i < n; ++i) g(i) = lorentz_dot(grad.vec, frame.col(i));
    h.noalias() -= a.weight * (g * g.transpose());
    mass += a.weight;
  }
  h += mass * Mat::Identity(n, n);
  return SpdForm(std::move(h));
}

BarycenterResult barycenter(const BarycenterProblem& prob) {
  return barycenter(prob, default_start(prob));
}

BarycenterResult barycenter(const BarycenterProblem& prob, const HPoint& start) {
  const int n = prob.origin.dim();
  const double mass = prob.measure.total_mass();
  HPoint p = start;
  double value = functional_value(prob, p) / mass;
  double grad_norm = 0.0;
  int max_halvings = 0;
  Mat hess(n, n);

  for (int iter = 0; iter < prob.max_iterations; ++iter) {
    const Mat frame = tangent_basis(p);
    Vec grad = Vec::Zero(n);
    hess.setZero();
    Vec g(n);
    for (const auto& a : prob.measure.atoms()) {
      const TangentVector bg = busemann_gradient(a.dir, p, prob.origin);
      for (int i = 0; i < n; ++i) g(i) = lorentz_dot(bg.vec, frame.col(i));
      const double w = a.weight / mass;
      grad += w * g;
      hess.noalias() -= w * (g * g.transpose());
    }
    hess += Mat::Identity(n, n);
    grad_norm = grad.norm();
    if (grad_norm <= prob.grad_tol) {
      Eigen::SelfAdjointEigenSolver<Mat> es(hess, Eigen::EigenvaluesOnly);
      return {p, iter, grad_norm, es.eigenvalues()(0), max_halvings};
    }

    const Vec step = hess.ldlt().solve(-grad);
    // Halve until the normalized functional decreases.
    double t = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 40; ++halving) {
      const HPoint candidate = exp_map(TangentVector(p, frame * (t * step)));
      const double cand_value = functional_value(prob, candidate) / mass;
      if (cand_value < value || t * step.norm() < 1e-15) {
        p = candidate;
        value = cand_value;
        moved = true;
        max_halvings = std::max(max_halvings, halving);
        break;
      }
      t *= 0.5;
    }
    if (!moved)
      throw NonConvergence("barycenter: damping failed to decrease the functional", p,
                           grad_norm, iter);
  }
  throw NonConvergence("barycenter: no convergence within max iterations", p, grad_norm,
                       prob.max_iterations);
}

HPoint natural_point(const HPoint& x, const DensityFamily& fam, const BoundaryMap& f) {
  BarycenterProblem prob(pushforward(density_at(fam, x), f), fam.basepoint);
  return barycenter(prob, x).point;
}

}  // namespace barymap
