#include "barymap/hyperboloid.hpp"

#include <cmath>
#include <stdexcept>

namespace barymap {

double lorentz_dot(const Vec& a, const Vec& b) {
  double s = -a(0) * b(0);
  for (Eigen::Index i = 1; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

HPoint::HPoint(Vec c) : coords(std::move(c)) {
  if (coords.size() < 3) throw std::invalid_argument("HPoint: need dimension >= 2");
  const double q = lorentz_dot(coords, coords);
  if (!(q < 0.0) || !(coords(0) > 0.0))
    throw std::invalid_argument("HPoint: vector is not future timelike");
  coords /= std::sqrt(-q);
}

HPoint HPoint::origin(int n) {
  Vec c = Vec::Zero(n + 1);
  c(0) = 1.0;
  return HPoint(std::move(c));
}

TangentVector::TangentVector(HPoint base_point, Vec v)
    : base(std::move(base_point)), vec(std::move(v)) {
  if (vec.size() != base.coords.size())
    throw std::invalid_argument("TangentVector: size mismatch");
  // <p,p> = -1, so adding <v,p> p removes the component along p.
  vec += lorentz_dot(vec, base.coords) * base.coords;
}

double TangentVector::norm() const {
  const double q = lorentz_dot(vec, vec);
  return q > 0.0 ? std::sqrt(q) : 0.0;
}

BoundaryPoint::BoundaryPoint(Vec xi) : dir(std::move(xi)) {
  if (dir.size() < 3) throw std::invalid_argument("BoundaryPoint: need dimension >= 2");
  if (!(dir(0) > 0.0)) throw std::invalid_argument("BoundaryPoint: not future pointing");
  const double spatial_norm = dir.tail(dir.size() - 1).norm();
  if (spatial_norm <= 0.0) throw std::invalid_argument("BoundaryPoint: zero direction");
  const double null_defect = std::abs(lorentz_dot(dir, dir)) / (dir(0) * dir(0));
  if (null_defect > 1e-6)
    throw std::invalid_argument("BoundaryPoint: vector is not null");
  dir /= dir(0);
  dir.tail(dir.size() - 1) /= dir.tail(dir.size() - 1).norm();
}

BoundaryPoint BoundaryPoint::from_spatial(const Vec& spatial) {
  Vec xi(spatial.size() + 1);
  xi(0) = spatial.norm();
  xi.tail(spatial.size()) = spatial;
  return BoundaryPoint(std::move(xi));
}

double angular_distance(const BoundaryPoint& a, const BoundaryPoint& b) {
  const double c = std::clamp(a.spatial().dot(b.spatial()), -1.0, 1.0);
  return std::acos(c);
}

namespace {
Mat lorentz_j(int d) {
  Mat j = Mat::Identity(d, d);
  j(0, 0) = -1.0;
  return j;
}
}  // namespace

Isometry::Isometry(Mat m) : mat(std::move(m)) {
  if (mat.rows() != mat.cols() || mat.rows() < 3)
    throw std::invalid_argument("Isometry: bad shape");
  const int d = static_cast<int>(mat.rows());
  const Mat j = lorentz_j(d);
  const double defect = (mat.transpose() * j * mat - j).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw std::invalid_argument("Isometry: M^T J M != J");
  if (!(mat(0, 0) > 0.0)) throw std::invalid_argument("Isometry: swaps sheets");
}

Isometry Isometry::identity(int n) { return Isometry(Mat::Identity(n + 1, n + 1)); }

Isometry Isometry::inverse() const {
  const Mat j = lorentz_j(static_cast<int>(mat.rows()));
  return Isometry(j * mat.transpose() * j);
}

Isometry Isometry::operator*(const Isometry& other) const {
  return Isometry(mat * other.mat);
}

HPoint Isometry::operator()(const HPoint& x) const { return HPoint(mat * x.coords); }

BoundaryPoint Isometry::operator()(const BoundaryPoint& theta) const {
  return BoundaryPoint(mat * theta.dir);
}

TangentVector Isometry::operator()(const TangentVector& v) const {
  return TangentVector(HPoint(mat * v.base.coords), mat * v.vec);
}

double distance(const HPoint& x, const HPoint& y) {
  double c = -lorentz_dot(x.coords, y.coords);
  if (c < 1.0) {
    if (c < 1.0 - 1e-9) throw std::domain_error("distance: arccosh argument < 1");
    c = 1.0;
  }
  return std::acosh(c);
}

HPoint exp_map(const TangentVector& v) {
  const double t = v.norm();
  if (t == 0.0) return v.base;
  return HPoint(std::cosh(t) * v.base.coords + (std::sinh(t) / t) * v.vec);
}

TangentVector log_map(const HPoint& x, const HPoint& y) {
  double c = -lorentz_dot(x.coords, y.coords);
  if (c < 1.0) c = 1.0;
  const double d = std::acosh(c);
  Vec u = y.coords - c * x.coords;
  // |u| = sinh(d); the ratio d/sinh(d) is evaluated by series near 0.
  double factor;
  if (d < 1e-4) {
    factor = 1.0 - d * d / 6.0;
  } else {
    factor = d / std::sinh(d);
  }
  return TangentVector(x, factor * u);
}

double busemann_value(const BoundaryPoint& theta, const HPoint& p, const HPoint& o) {
  const double lp = -lorentz_dot(p.coords, theta.dir);
  const double lo = -lorentz_dot(o.coords, theta.dir);
  return std::log(lp / lo);
}

TangentVector busemann_gradient(const BoundaryPoint& theta, const HPoint& p,
                                const HPoint& /*o*/) {
  // Gradient of log(-<p,xi>) projected to T_p: p - xi / (-<p,xi>).
  // The normalization base only shifts the value, not the gradient.
  const double lp = -lorentz_dot(p.coords, theta.dir);
  return TangentVector(p, p.coords - theta.dir / lp);
}

double busemann_hessian(const BoundaryPoint& theta, const HPoint& p,
                        const TangentVector& u, const TangentVector& v) {
  const TangentVector g = busemann_gradient(theta, p, p);
  return lorentz_dot(u.vec, v.vec) -
         lorentz_dot(g.vec, u.vec) * lorentz_dot(g.vec, v.vec);
}

namespace {
// S_k(r) = integral_0^r sinh^k t dt.
double sinh_power_integral(int k, double r) {
  if (k == 0) return r;
  if (k == 1) return std::cosh(r) - 1.0;
  const double s = std::sinh(r);
  return (std::pow(s, k - 1) * std::cosh(r) - (k - 1) * sinh_power_integral(k - 2, r)) / k;
}
}  // namespace

double sphere_area(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double euclidean_ball_volume(int n) {
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double hyperbolic_ball_volume(int n, double r) {
  if (n < 2) throw std::invalid_argument("hyperbolic_ball_volume: n >= 2");
  if (r < 0.0) throw std::invalid_argument("hyperbolic_ball_volume: r >= 0");
  return sphere_area(n) * sinh_power_integral(n - 1, r);
}

double ball_volume_series_c1(int n) {
  // (Vol/(v_n eps^n) - 1)/eps^2 at eps = 0.5, rounded up in the last digit.
  static constexpr double table[] = {0.0840309, 0.2048287, 0.3472199, 0.5050172,
                                     0.6753462, 0.8567862, 1.0486390};
  if (n < 2 || n > 8) throw std::invalid_argument("ball_volume_series_c1: n in [2,8]");
  return table[n - 2];
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over (seed, stream) so nearby seeds give unrelated streams.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return std::mt19937_64(z);
}

namespace {
Mat haar_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}
}  // namespace

Isometry random_isometry(int n, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double t = std::min(std::abs(gauss(rng)) * 0.7 + 0.1, 2.5);

  Mat boost = Mat::Identity(n + 1, n + 1);
  boost(0, 0) = std::cosh(t);
  boost(0, 1) = boost(1, 0) = std::sinh(t);
  boost(1, 1) = std::cosh(t);

  Mat r1 = Mat::Identity(n + 1, n + 1);
  Mat r2 = Mat::Identity(n + 1, n + 1);
  r1.bottomRightCorner(n, n) = haar_rotation(n, rng);
  r2.bottomRightCorner(n, n) = haar_rotation(n, rng);
  return Isometry(r1 * boost * r2);
}

Mat tangent_basis(const HPoint& p) {
  const int d = static_cast<int>(p.coords.size());
  Mat basis(d, d - 1);
  int got = 0;
  for (int k = 0; k < d && got < d - 1; ++k) {
    const int axis = (k + 1) % d;  // spatial axes first, time axis as fallback
    Vec v = Vec::Zero(d);
    v(axis) = 1.0;
    v += lorentz_dot(v, p.coords) * p.coords;
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < got; ++j) v -= lorentz_dot(v, basis.col(j)) * basis.col(j);
    const double q = lorentz_dot(v, v);
    if (q > 1e-20) basis.col(got++) = v / std::sqrt(q);
  }
  if (got != d - 1) throw std::runtime_error("tangent_basis: degenerate point");
  return basis;
}

BoundaryPoint radial_projection(const HPoint& x, const HPoint& o) {
  const TangentVector u = log_map(o, x);
  const double t = u.norm();
  if (t < 1e-12)
    throw std::invalid_argument("radial_projection: point coincides with basepoint");
  return BoundaryPoint(o.coords + u.vec / t);
}

TangentVector random_unit_tangent(const HPoint& p, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Mat basis = tangent_basis(p);
  for (;;) {
    Vec c(basis.cols());
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = gauss(rng);
    const double nn = c.norm();
    if (nn > 1e-8) return TangentVector(p, basis * (c / nn));
  }
}

HPoint random_point_in_ball(const HPoint& center, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const TangentVector u = random_unit_tangent(center, rng);
  const double r = radius * unif(rng);
  return exp_map(TangentVector(center, r * u.vec));
}

}  // namespace barymap
