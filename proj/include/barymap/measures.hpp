#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "barymap/hyperboloid.hpp"

namespace barymap {

struct Atom {
  BoundaryPoint dir;
  double weight;
};

inline constexpr double kAtomMergeTol = 1e-9;  // angular

// Finitely supported positive measure on the ideal boundary. Construction
// merges atoms closer than kAtomMergeTol so near-coincident directions cannot
// ill-condition downstream Hessians.
class BoundaryMeasure {
 public:
  BoundaryMeasure(int n, std::vector<Atom> atoms);

  int dim() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double total_mass() const;

 private:
  int n_;
  std::vector<Atom> atoms_;
};

using BoundaryMap = std::function<BoundaryPoint(const BoundaryPoint&)>;

// Quadrature of the visual measure at p. Schemes:
//   "symmetric" - equal weights, antipodally symmetric: cross-polytope when
//                 m == 2n, otherwise a seeded point set plus exact antipodes.
//   "gauss"     - product Gauss rule on the tangent sphere (unequal weights),
//                 spectrally accurate for smooth reweightings.
BoundaryMeasure visual_quadrature(const HPoint& p, int m, const std::string& scheme,
                                  std::uint64_t seed = 0);

BoundaryMeasure pushforward(const BoundaryMeasure& mu, const BoundaryMap& f);
double total_mass(const BoundaryMeasure& mu);
BoundaryMeasure normalize(const BoundaryMeasure& mu);
BoundaryMeasure scale(const BoundaryMeasure& mu, double c);

// Conformal family mu_p with d mu_p / d mu_basepoint (theta) =
// exp(-exponent * B(theta, p, basepoint)).
struct DensityFamily {
  HPoint basepoint;
  BoundaryMeasure base_measure;
  double exponent;
};

BoundaryMeasure density_at(const DensityFamily& fam, const HPoint& p);

nlohmann::json measure_to_json(const BoundaryMeasure& mu);
BoundaryMeasure measure_from_json(const nlohmann::json& j);

}  // namespace barymap
