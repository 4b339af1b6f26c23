#include "barymap/forms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "barymap/parallel.hpp"

namespace barymap {

SpdForm::SpdForm(Mat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SpdForm: not square");
  entries_ = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(entries_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -1e-12)
    throw std::invalid_argument("SpdForm: negative eigenvalue beyond tolerance");
}

SpdForm SpdForm::identity(int n) { return SpdForm(Mat::Identity(n, n)); }

double SpdForm::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Vec SpdForm::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

SpdForm h_form(const BoundaryMeasure& mu, const HPoint& p, const HPoint& o) {
  const int n = mu.dim();
  const Mat frame = tangent_basis(p);
  const double mass = mu.total_mass();
  Mat h = Mat::Zero(n, n);
  Vec g(n);
  for (const auto& a : mu.atoms()) {
    const TangentVector grad = busemann_gradient(a.dir, p, o);
    for (int i = 0; i < n; ++i) g(i) = lorentz_dot(grad.vec, frame.col(i));
    h.noalias() += (a.weight / mass) * (g * g.transpose());
  }
  return SpdForm(std::move(h));
}

SpdForm k_form(const BoundaryMeasure& mu, const HPoint& p, const HPoint& o) {
  const int n = mu.dim();
  const Mat frame = tangent_basis(p);
  const double mass = mu.total_mass();
  std::vector<TangentVector> basis;
  basis.reserve(n);
  for (int i = 0; i < n; ++i) basis.emplace_back(p, frame.col(i));
  Mat k = Mat::Zero(n, n);
  for (const auto& a : mu.atoms()) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double hij = busemann_hessian(a.dir, p, basis[i], basis[j]);
        k(i, j) += (a.weight / mass) * hij;
        if (j != i) k(j, i) = k(i, j);
      }
  }
  (void)o;
  return SpdForm(std::move(k));
}

double det_ratio(const SpdForm& h) {
  const int n = h.dim();
  if (std::abs(h.trace() - 1.0) > 1e-8)
    throw std::invalid_argument("det_ratio: trace must equal 1");
  if (h.min_eigenvalue() <= 0.0)
    throw std::invalid_argument("det_ratio: form must be positive definite");
  const Mat residue = Mat::Identity(n, n) - h.matrix();
  const double dr = residue.determinant();
  if (dr == 0.0) return std::numeric_limits<double>::infinity();
  return h.det() / (dr * dr);
}

double det_ratio_bound(int n) {
  if (n < 2) throw std::invalid_argument("det_ratio_bound: n >= 2");
  return std::pow(static_cast<double>(n) / ((n - 1.0) * (n - 1.0)), n);
}

double jacobian_upper_bound(const SpdForm& h, const SpdForm& k, double entropy, int n) {
  const double dk = k.det();
  if (dk <= 0.0) throw std::invalid_argument("jacobian_upper_bound: K is singular");
  const double dh = std::max(h.det(), 0.0);
  return std::pow(entropy, n) * std::sqrt(dh) / (std::pow(n, 0.5 * n) * dk);
}

SpdForm random_trace_one_spd(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec lambda(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    lambda(i) = expo(rng);
    s += lambda(i);
  }
  lambda /= s;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return SpdForm(q * lambda.asDiagonal() * q.transpose());
}

namespace {
struct ChunkStat {
  double max_ratio = 0.0;
  std::size_t violations = 0;
};
}  // namespace

ScanReport det_ratio_scan(int n, std::size_t samples, std::uint64_t seed, int workers) {
  const double bound = det_ratio_bound(n);
  std::vector<ChunkStat> stats(kSumChunks);
  for_each_chunk(samples, workers, [&](int c, std::size_t begin, std::size_t end) {
    ChunkStat st;
    for (std::size_t i = begin; i < end; ++i) {
      auto rng = make_rng(seed, i);
      const double ratio = det_ratio(random_trace_one_spd(n, rng));
      if (ratio > st.max_ratio) st.max_ratio = ratio;
      if (ratio > bound) ++st.violations;
    }
    stats[c] = st;
  });
  ScanReport rep{n, samples, 0.0, bound, 0};
  for (const auto& st : stats) {
    rep.max_ratio = std::max(rep.max_ratio, st.max_ratio);
    rep.violations += st.violations;
  }
  return rep;
}

ScanReport det_ratio_scan_serial(int n, std::size_t samples, std::uint64_t seed) {
  const double bound = det_ratio_bound(n);
  ScanReport rep{n, samples, 0.0, bound, 0};
  for (std::size_t i = 0; i < samples; ++i) {
    auto rng = make_rng(seed, i);
    const double ratio = det_ratio(random_trace_one_spd(n, rng));
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > bound) ++rep.violations;
  }
  return rep;
}

}  // namespace barymap
