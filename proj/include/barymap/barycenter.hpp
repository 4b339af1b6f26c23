#pragma once

#include <stdexcept>

#include "barymap/errors.hpp"
#include "barymap/forms.hpp"
#include "barymap/measures.hpp"

namespace barymap {

// Averaged Busemann functional B_mu(p) = sum_theta w_theta B^o_theta(p).
//
// The construction enforces two guards that stand in for the atomless
// hypothesis of the continuous theory:
//   (a) properness: every atom carries < 1/2 of the total mass, otherwise the
//       functional is unbounded below along the ray to the heavy atom;
//   (b) nondegeneracy: at least three atoms, not all contained in a single
//       antipodal pair, so the averaged Hessian is positive definite.
struct BarycenterProblem {
  BoundaryMeasure measure;
  HPoint origin;
  double grad_tol;
  int max_iterations;

  BarycenterProblem(BoundaryMeasure mu, HPoint o, double tol = 1e-10, int max_iter = 100);
};

struct BarycenterResult {
  HPoint point;
  int iterations;
  double final_gradient_norm;       // of the mass-normalized gradient
  double hessian_min_eigenvalue;    // of the mass-normalized Hessian at the solution
  int max_halvings = 0;             // worst step damping seen across iterations
};

struct NonConvergence : std::runtime_error {
  NonConvergence(std::string what, HPoint last, double grad_norm, int iters)
      : std::runtime_error(std::move(what)),
        last_iterate(std::move(last)),
        gradient_norm(grad_norm),
        iterations(iters) {}
  HPoint last_iterate;
  double gradient_norm;
  int iterations;
};

double functional_value(const BarycenterProblem& prob, const HPoint& p);
TangentVector functional_gradient(const BarycenterProblem& prob, const HPoint& p);
SpdForm functional_hessian(const BarycenterProblem& prob, const HPoint& p);

// Damped Newton in the tangent space of the current iterate; starts from the
// sheet-normalized weighted average of the atom directions unless a start
// point is supplied.
BarycenterResult barycenter(const BarycenterProblem& prob);
BarycenterResult barycenter(const BarycenterProblem& prob, const HPoint& start);

// bar(f_*(density_at(fam, x))), the pointwise natural map.
HPoint natural_point(const HPoint& x, const DensityFamily& fam, const BoundaryMap& f);

}  // namespace barymap
