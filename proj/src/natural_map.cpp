#include "barymap/natural_map.hpp"

#include <cmath>
#include <stdexcept>

namespace barymap {

Vec phi(const PhiEmbedding& emb, const HPoint& x) {
  Vec out(emb.sample_boundary.size());
  for (std::size_t k = 0; k < emb.sample_boundary.size(); ++k)
    out(k) = std::exp(-0.5 * emb.h * busemann_value(emb.sample_boundary[k], x, emb.origin));
  return out;
}

double phi_mean_norm(const Vec& v) {
  return std::sqrt(v.squaredNorm() / static_cast<double>(v.size()));
}

BoundaryMap squeeze_map(int axis, double beta) {
  if (!(std::abs(beta) < 1.0)) throw std::invalid_argument("squeeze_map: |beta| < 1");
  return [axis, beta](const BoundaryPoint& theta) {
    const Vec u = theta.spatial();
    if (axis < 0 || axis >= u.size()) throw std::invalid_argument("squeeze_map: bad axis");
    const double c = std::clamp(u(axis), -1.0, 1.0);
    const double angle = std::acos(c);
    const double mapped = angle - beta * std::sin(angle);
    Vec perp = u;
    perp(axis) = 0.0;
    const double pn = perp.norm();
    Vec out = Vec::Zero(u.size());
    if (pn < 1e-14) {
      out(axis) = c >= 0.0 ? 1.0 : -1.0;  // pole is fixed
    } else {
      out = (std::sin(mapped) / pn) * perp;
      out(axis) = std::cos(mapped);
    }
    return BoundaryPoint::from_spatial(out);
  };
}

namespace {

BoundaryMap map_from_json(const nlohmann::json& j, int n) {
  const std::string kind = j.value("kind", "identity");
  if (kind == "identity") {
    return [](const BoundaryPoint& t) { return t; };
  }
  if (kind == "isometry") {
    const auto g = random_isometry(n, j.value("seed", std::uint64_t{1}));
    return [g](const BoundaryPoint& t) { return g(t); };
  }
  if (kind == "squeeze") {
    return squeeze_map(j.value("axis", 0), j.value("beta", 0.35));
  }
  throw std::invalid_argument("scenario: unknown boundary map kind '" + kind + "'");
}

}  // namespace

NaturalMapScenario scenario_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  if (n < 2 || n > 8) throw std::invalid_argument("scenario: n in [2,8]");
  const double h = j.value("h", static_cast<double>(n - 1));
  if (!(h > 0.0)) throw std::invalid_argument("scenario: h > 0");
  const int m = j.value("m", 128);
  const std::uint64_t seed = j.value("seed", std::uint64_t{0});

  const HPoint origin = HPoint::origin(n);
  nlohmann::json fam_desc = j.value("family", nlohmann::json{{"kind", "visual"}});
  const std::string fam_kind = fam_desc.value("kind", "visual");
  std::optional<DensityFamily> family;
  if (fam_kind == "visual") {
    const std::string scheme = fam_desc.value("scheme", "gauss");
    family = DensityFamily{origin, visual_quadrature(origin, m, scheme, seed),
                           fam_desc.value("exponent", static_cast<double>(n - 1))};
  } else if (fam_kind == "atoms") {
    BoundaryMeasure mu = measure_from_json(fam_desc.at("measure"));
    HPoint base = origin;
    if (fam_desc.contains("basepoint")) {
      const auto c = fam_desc.at("basepoint").get<std::vector<double>>();
      base = HPoint(Eigen::Map<const Vec>(c.data(), c.size()));
    }
    family = DensityFamily{base, std::move(mu),
                           fam_desc.value("exponent", static_cast<double>(n - 1))};
  } else {
    throw std::invalid_argument("scenario: unknown family kind '" + fam_kind + "'");
  }

  const nlohmann::json map_desc = j.value("map", nlohmann::json{{"kind", "identity"}});
  NaturalMapScenario s{n,
                       h,
                       std::move(*family),
                       map_from_json(map_desc, n),
                       m,
                       seed,
                       j.value("step", 1e-4),
                       j.value("eval_radius", 0.5),
                       {}};
  s.descriptor = {{"n", n},       {"h", h},
                  {"m", m},       {"seed", seed},
                  {"family", fam_desc}, {"map", map_desc},
                  {"step", s.fd_step},  {"eval_radius", s.eval_radius}};
  return s;
}

HPoint evaluate(const NaturalMapScenario& scenario, const HPoint& x) {
  return natural_point(x, scenario.family, scenario.boundary_map);
}

JacobianSample jacobian_fd(const NaturalMapScenario& scenario, const HPoint& x,
                           double step) {
  if (!(step >= 1e-6 && step <= 1e-2))
    throw std::invalid_argument("jacobian_fd: step in [1e-6, 1e-2]");
  const int n = scenario.n;
  const double c = scenario.domain_scale();
  const HPoint fx = evaluate(scenario, x);
  const Mat frame_x = tangent_basis(x);
  const Mat frame_fx = tangent_basis(fx);

  auto single = [&](double hstep) {
    Mat j(n, n);
    for (int col = 0; col < n; ++col) {
      // A domain step of hstep has model length hstep / c.
      const Vec dir = frame_x.col(col) * (hstep / c);
      const HPoint fp = evaluate(scenario, exp_map(TangentVector(x, dir)));
      const HPoint fm = evaluate(scenario, exp_map(TangentVector(x, -dir)));
      const Vec diff = (log_map(fx, fp).vec - log_map(fx, fm).vec) / (2.0 * hstep);
      for (int row = 0; row < n; ++row) j(row, col) = lorentz_dot(diff, frame_fx.col(row));
    }
    return j;
  };

  const Mat coarse = single(step);
  const Mat fine = single(0.5 * step);
  Mat refined = (4.0 * fine - coarse) / 3.0;
  const double det = refined.determinant();
  return {std::move(refined), std::abs(det)};
}

BoundCheckReport bound_check(const NaturalMapScenario& scenario, int samples) {
  if (scenario.n < 3)
    throw std::invalid_argument("bound_check: requires n >= 3");
  BoundCheckReport report;
  report.rows.reserve(samples);
  auto rng = make_rng(scenario.seed, 17);
  const HPoint origin = scenario.family.basepoint;
  const double global = std::pow(scenario.h / (scenario.n - 1), scenario.n);

  for (int i = 0; i < samples; ++i) {
    const HPoint x = random_point_in_ball(origin, scenario.eval_radius, rng);
    BoundCheckRow row{x, x};
    try {
      row.fx = evaluate(scenario, x);
      const BoundaryMeasure pushed =
          pushforward(density_at(scenario.family, x), scenario.boundary_map);
      const SpdForm h = h_form(pushed, row.fx, origin);
      const SpdForm k = k_form(pushed, row.fx, origin);
      row.lemma_bound = jacobian_upper_bound(h, k, scenario.h, scenario.n);
      row.global_bound = global;
      row.abs_det = jacobian_fd(scenario, x, scenario.fd_step).abs_det;
      row.margin = std::min(row.lemma_bound, row.global_bound) - row.abs_det;
      row.ok = row.margin >= -report.tolerance;
      if (!row.ok) ++report.violations;
      report.max_abs_det = std::max(report.max_abs_det, row.abs_det);
    } catch (const GuardViolation& e) {
      row.guard_error = e.what();
      ++report.guard_failures;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace barymap
