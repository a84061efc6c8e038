#pragma once

#include <json.hpp>
#include <string>

#include "caidgeo/certify.hpp"
#include "caidgeo/quantum.hpp"

namespace caidgeo {

/// Ordered JSON document; identical inputs (file, flags, seed) produce
/// byte-identical serializations.
struct Report {
  nlohmann::ordered_json body;
  std::string to_json() const { return body.dump(2) + "\n"; }
};

struct Provenance {
  std::uint64_t seed = 0;
  double tol = 1e-10;
  long samples = 0;
  int jobs = 1;
};

nlohmann::ordered_json capacity_block(const CapacitySolution& geo);
nlohmann::ordered_json theorem1_block(const Theorem1Constants& t1);
nlohmann::ordered_json theorem2_block(const Theorem2Constants& t2);
nlohmann::ordered_json certificate_block(const Certificate& cert);
nlohmann::ordered_json provenance_block(const Provenance& p, int iterations);

/// CSV emission ('.' decimals, '\n' endings, header row first).
std::string samples_csv(const std::vector<NeighborhoodSample>& samples,
                        const InfoFn& info, double capacity,
                        const std::function<double(double)>& bound_of_distance);
std::string curve_csv(const DecayCurve& curve);

}  // namespace caidgeo
