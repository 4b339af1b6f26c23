#include "barymap/measures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "barymap/detail/dedup.hpp"

namespace barymap {

BoundaryMeasure::BoundaryMeasure(int n, std::vector<Atom> atoms) : n_(n) {
  if (n < 2) throw std::invalid_argument("BoundaryMeasure: n >= 2");
  if (atoms.empty()) throw std::invalid_argument("BoundaryMeasure: no atoms");
  detail::DedupGrid grid(n, kAtomMergeTol);
  for (auto& a : atoms) {
    if (a.dir.dim() != n) throw std::invalid_argument("BoundaryMeasure: dimension mismatch");
    if (!(a.weight > 0.0)) throw std::invalid_argument("BoundaryMeasure: weights must be > 0");
    if (!std::isfinite(a.weight)) throw std::invalid_argument("BoundaryMeasure: weight not finite");
    const int slot = grid.find(a.dir.spatial());
    if (slot >= 0) {
      atoms_[slot].weight += a.weight;
    } else {
      grid.insert(a.dir.spatial());
      atoms_.push_back(std::move(a));
    }
  }
}

double BoundaryMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

double total_mass(const BoundaryMeasure& mu) { return mu.total_mass(); }

BoundaryMeasure pushforward(const BoundaryMeasure& mu, const BoundaryMap& f) {
  std::vector<Atom> out;
  out.reserve(mu.size());
  for (const auto& a : mu.atoms()) out.push_back({f(a.dir), a.weight});
  return BoundaryMeasure(mu.dim(), std::move(out));
}

BoundaryMeasure normalize(const BoundaryMeasure& mu) {
  return scale(mu, 1.0 / mu.total_mass());
}

BoundaryMeasure scale(const BoundaryMeasure& mu, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scale: c must be > 0");
  std::vector<Atom> out;
  out.reserve(mu.size());
  for (const auto& a : mu.atoms()) out.push_back({a.dir, c * a.weight});
  return BoundaryMeasure(mu.dim(), std::move(out));
}

BoundaryMeasure density_at(const DensityFamily& fam, const HPoint& p) {
  std::vector<Atom> out;
  out.reserve(fam.base_measure.size());
  for (const auto& a : fam.base_measure.atoms()) {
    const double b = busemann_value(a.dir, p, fam.basepoint);
    out.push_back({a.dir, a.weight * std::exp(-fam.exponent * b)});
  }
  return BoundaryMeasure(fam.base_measure.dim(), std::move(out));
}

namespace {

struct SphereNode {
  Vec u;  // unit vector
  double w;
};

// Gauss nodes/weights for the weight (1-x^2)^alpha on [-1,1] via Golub-Welsch.
// Nodes are symmetrized about 0 so antipodal pairs match exactly.
void gauss_gegenbauer(double alpha, int k, std::vector<double>& x, std::vector<double>& w) {
  Mat t = Mat::Zero(k, k);
  for (int i = 1; i < k; ++i) {
    const double n = i;
    const double beta = 4.0 * n * (n + alpha) * (n + alpha) * (n + 2.0 * alpha) /
                        ((2.0 * n + 2.0 * alpha) * (2.0 * n + 2.0 * alpha) *
                         (2.0 * n + 2.0 * alpha + 1.0) * (2.0 * n + 2.0 * alpha - 1.0));
    t(i, i - 1) = t(i - 1, i) = std::sqrt(beta);
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(t);
  x.resize(k);
  w.resize(k);
  for (int i = 0; i < k; ++i) {
    x[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    w[i] = v0 * v0;
  }
  for (int i = 0; i < k / 2; ++i) {
    const int j = k - 1 - i;
    const double xv = 0.5 * (x[j] - x[i]);
    const double wv = 0.5 * (w[i] + w[j]);
    x[i] = -xv;
    x[j] = xv;
    w[i] = w[j] = wv;
  }
  if (k % 2 == 1) x[k / 2] = 0.0;
}

// Product Gauss rule on the unit sphere in R^dim, at most budget nodes.
std::vector<SphereNode> gauss_sphere(int dim, int budget) {
  std::vector<SphereNode> nodes;
  if (dim == 2) {
    int k = std::max(4, budget - budget % 2);
    nodes.reserve(k);
    for (int j = 0; j < k; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / k;
      Vec u(2);
      u << std::cos(phi), std::sin(phi);
      nodes.push_back({u, 1.0 / k});
    }
    return nodes;
  }
  const int kp = std::max(2, static_cast<int>(std::floor(
                                 std::pow(budget / 2.0, 1.0 / (dim - 1)))));
  std::vector<double> x, w;
  gauss_gegenbauer(0.5 * (dim - 3), kp, x, w);
  const auto sub = gauss_sphere(dim - 1, std::max(4, budget / kp));
  for (int i = 0; i < kp; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - x[i] * x[i]));
    for (const auto& q : sub) {
      Vec u(dim);
      u(0) = x[i];
      u.tail(dim - 1) = s * q.u;
      nodes.push_back({u, w[i] * q.w});
    }
  }
  return nodes;
}

std::vector<SphereNode> symmetric_sphere(int dim, int m, std::uint64_t seed) {
  if (m % 2 != 0)
    throw std::invalid_argument("visual_quadrature: symmetric scheme needs even m");
  std::vector<SphereNode> nodes;
  nodes.reserve(m);
  const double w = 1.0 / m;
  if (m == 2 * dim) {
    for (int i = 0; i < dim; ++i) {
      Vec u = Vec::Zero(dim);
      u(i) = 1.0;
      nodes.push_back({u, w});
      nodes.push_back({-u, w});
    }
    return nodes;
  }
  const int half = m / 2;
  if (dim == 2) {
    auto rng = make_rng(seed, 11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double phase = std::numbers::pi * unif(rng) / half;
    for (int j = 0; j < half; ++j) {
      const double phi = phase + 2.0 * std::numbers::pi * j / m;
      Vec u(2);
      u << std::cos(phi), std::sin(phi);
      nodes.push_back({u, w});
      nodes.push_back({-u, w});
    }
    return nodes;
  }
  if (dim == 3) {
    // Fibonacci spiral, then exact antipodes.
    auto rng = make_rng(seed, 12);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double phase = 2.0 * std::numbers::pi * unif(rng);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < half; ++j) {
      const double z = 1.0 - (j + 0.5) / half;  // upper band only
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = phase + golden * j;
      Vec u(3);
      u << r * std::cos(phi), r * std::sin(phi), z;
      nodes.push_back({u, w});
      nodes.push_back({-u, w});
    }
    return nodes;
  }
  auto rng = make_rng(seed, 13);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int j = 0; j < half; ++j) {
    Vec u(dim);
    do {
      for (int i = 0; i < dim; ++i) u(i) = gauss(rng);
    } while (u.norm() < 1e-8);
    u /= u.norm();
    nodes.push_back({u, w});
    nodes.push_back({-u, w});
  }
  return nodes;
}

}  // namespace

BoundaryMeasure visual_quadrature(const HPoint& p, int m, const std::string& scheme,
                                  std::uint64_t seed) {
  const int n = p.dim();
  if (m < n + 2) throw std::invalid_argument("visual_quadrature: m >= n+2 required");
  std::vector<SphereNode> nodes;
  if (scheme == "symmetric") {
    nodes = symmetric_sphere(n, m, seed);
  } else if (scheme == "gauss") {
    nodes = gauss_sphere(n, m);
  } else {
    throw std::invalid_argument("visual_quadrature: unsupported scheme '" + scheme + "'");
  }
  double mass = 0.0;
  for (const auto& q : nodes) mass += q.w;
  const Mat frame = tangent_basis(p);
  std::vector<Atom> atoms;
  atoms.reserve(nodes.size());
  for (const auto& q : nodes) {
    const Vec xi = p.coords + frame * q.u;  // null: endpoint of the ray along u
    atoms.push_back({BoundaryPoint(xi), q.w / mass});
  }
  return BoundaryMeasure(n, std::move(atoms));
}

nlohmann::json measure_to_json(const BoundaryMeasure& mu) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : mu.atoms()) {
    const Vec s = a.dir.spatial();
    atoms.push_back({{"dir", std::vector<double>(s.data(), s.data() + s.size())},
                     {"w", a.weight}});
  }
  return {{"n", mu.dim()}, {"atoms", atoms}};
}

BoundaryMeasure measure_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms")) {
    const auto dir = a.at("dir").get<std::vector<double>>();
    if (static_cast<int>(dir.size()) != n)
      throw std::invalid_argument("measure_from_json: atom direction has wrong length");
    Vec s = Eigen::Map<const Vec>(dir.data(), dir.size());
    if (s.norm() <= 0.0)
      throw std::invalid_argument("measure_from_json: zero atom direction");
    atoms.push_back({BoundaryPoint::from_spatial(s), a.at("w").get<double>()});
  }
  return BoundaryMeasure(n, std::move(atoms));
}

}  // namespace barymap
