#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace barymap {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Minkowski pairing with signature (-,+,...,+); index 0 is the time coordinate.
double lorentz_dot(const Vec& a, const Vec& b);

inline constexpr double kSheetTol = 1e-12;
inline constexpr double kFormTol = 1e-10;

// Point of hyperbolic n-space in the hyperboloid model: <x,x> = -1, x0 > 0.
// Every constructor renormalizes onto the sheet, so downstream code can rely
// on |<x,x> + 1| < 1e-12.
struct HPoint {
  Vec coords;

  explicit HPoint(Vec c);
  static HPoint origin(int n);
  int dim() const { return static_cast<int>(coords.size()) - 1; }
};

// Tangent vector at base: <base, vec> = 0. The constructor projects out any
// component along the base point.
struct TangentVector {
  HPoint base;
  Vec vec;

  TangentVector(HPoint base_point, Vec v);
  double norm() const;
  int dim() const { return base.dim(); }
};

// Ideal boundary point stored as a future null vector normalized to xi0 = 1,
// so the spatial part is a Euclidean unit vector.
struct BoundaryPoint {
  Vec dir;

  explicit BoundaryPoint(Vec xi);
  static BoundaryPoint from_spatial(const Vec& spatial);
  Vec spatial() const { return dir.tail(dir.size() - 1); }
  int dim() const { return static_cast<int>(dir.size()) - 1; }
};

double angular_distance(const BoundaryPoint& a, const BoundaryPoint& b);

// Element of O+(1,n): M^T J M = J, upper sheet preserved.
struct Isometry {
  Mat mat;

  explicit Isometry(Mat m);
  static Isometry identity(int n);
  int dim() const { return static_cast<int>(mat.rows()) - 1; }

  Isometry inverse() const;  // J M^T J
  Isometry operator*(const Isometry& other) const;
  HPoint operator()(const HPoint& x) const;
  BoundaryPoint operator()(const BoundaryPoint& theta) const;
  TangentVector operator()(const TangentVector& v) const;
};

double distance(const HPoint& x, const HPoint& y);
HPoint exp_map(const TangentVector& v);
TangentVector log_map(const HPoint& x, const HPoint& y);

// B^o_theta(p) = log(-<p,xi> / -<o,xi>). Vanishes at o, 1-Lipschitz, unit
// gradient; along the ray from o toward theta it equals -t.
double busemann_value(const BoundaryPoint& theta, const HPoint& p, const HPoint& o);
TangentVector busemann_gradient(const BoundaryPoint& theta, const HPoint& p, const HPoint& o);
double busemann_hessian(const BoundaryPoint& theta, const HPoint& p,
                        const TangentVector& u, const TangentVector& v);

// Vol(S^{n-1}) * integral_0^r sinh^{n-1}, evaluated by the exact reduction
// formula for the sinh powers.
double hyperbolic_ball_volume(int n, double r);
double euclidean_ball_volume(int n);  // v_n
double sphere_area(int n);            // Vol(S^{n-1})

// Sandwich constants: v_n e^n <= Vol(B(e)) <= v_n e^n (1 + C1 e^2) for
// e <= kBallSandwichEpsMax. C1 is the sharp constant on that interval,
// rounded up in the last stored digit.
inline constexpr double kBallSandwichEpsMax = 0.5;
double ball_volume_series_c1(int n);

Isometry random_isometry(int n, std::uint64_t seed);

// Orthonormal basis of the tangent space at p (columns), built by repeated
// Gram-Schmidt over the projected coordinate axes. Deterministic in p.
Mat tangent_basis(const HPoint& p);

// Endpoint of the ray from o through x.
BoundaryPoint radial_projection(const HPoint& x, const HPoint& o);

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);
TangentVector random_unit_tangent(const HPoint& p, std::mt19937_64& rng);
HPoint random_point_in_ball(const HPoint& center, double radius, std::mt19937_64& rng);

}  // namespace barymap
