#pragma once

#include <cstdint>
#include <random>

#include "barymap/measures.hpp"

namespace barymap {

// Symmetric bilinear form on an n-dimensional tangent space, stored so that
// entries(i,j) == entries(j,i) holds bitwise.
class SpdForm {
 public:
  explicit SpdForm(Mat m);
  static SpdForm identity(int n);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Mat& matrix() const { return entries_; }
  double trace() const { return entries_.trace(); }
  double det() const { return entries_.determinant(); }
  double min_eigenvalue() const;
  Vec eigenvalues() const;

 private:
  Mat entries_;
};

// Mass-normalized second moment of the Busemann gradients in the deterministic
// tangent frame at p. trace == 1 up to roundoff since each gradient is a unit
// vector.
SpdForm h_form(const BoundaryMeasure& mu, const HPoint& p, const HPoint& o);

// Mass-normalized sum of Busemann Hessians in the same frame; equals
// Id - h_form identically, but is accumulated through the Hessian routine.
SpdForm k_form(const BoundaryMeasure& mu, const HPoint& p, const HPoint& o);

// det(H) / det(Id - H)^2 for a trace-one SPD form. Returns +infinity when
// Id - H is singular.
double det_ratio(const SpdForm& h);

// (n / (n-1)^2)^n: the sharp bound on det_ratio for n >= 3. For n = 2 the
// value 4 is attained only at H = Id/2 and generic forms exceed it.
double det_ratio_bound(int n);

// h^n sqrt(det H) / (n^{n/2} det K).
double jacobian_upper_bound(const SpdForm& h, const SpdForm& k, double entropy, int n);

// Eigenvalues from a flat Dirichlet over the trace-one simplex, conjugated by
// a Haar orthogonal matrix.
SpdForm random_trace_one_spd(int n, std::mt19937_64& rng);

struct ScanReport {
  int n = 0;
  std::size_t samples = 0;
  double max_ratio = 0.0;
  double bound = 0.0;
  std::size_t violations = 0;
};

// Monte-Carlo scan of det_ratio over random trace-one SPD forms. Results are
// independent of the worker count: sample i is generated from (seed, i).
ScanReport det_ratio_scan(int n, std::size_t samples, std::uint64_t seed, int workers);
ScanReport det_ratio_scan_serial(int n, std::size_t samples, std::uint64_t seed);

}  // namespace barymap
