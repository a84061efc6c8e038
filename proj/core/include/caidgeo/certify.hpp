#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "caidgeo/constants.hpp"
#include "caidgeo/corpus.hpp"

namespace caidgeo {

/// Everything the certification commands need from one channel/constraint
/// pair.
struct Pipeline {
  CapacitySolution sol;
  UnionOfCones dlp;  // D(lam | caid)
  FisherMatrix sigma;
  ACoefficient a;
};

Pipeline build_pipeline(const Channel& w, const Polyhedron& lam,
                        double tol = 1e-10);

struct NeighborhoodSample {
  Vec point;       // support coordinates, inside lam
  Vec base;        // its projection onto the caid polytope
  double distance; // ||point - base||
};

/// Deterministic mixture of hit-and-run interior samples and ray
/// constructions along the projection-direction cones, filtered to distance
/// <= delta. Every sample's projection is recomputed and certified against
/// the direction-cone membership. The geometry-level overload serves both
/// the classical and the classical-quantum pipelines.
std::vector<NeighborhoodSample> sample_neighborhood(
    const CapacitySolution& geo, const UnionOfCones& dlp, double delta,
    int count, std::uint64_t seed);
std::vector<NeighborhoodSample> sample_neighborhood(const Pipeline& pipe,
                                                    double delta, int count,
                                                    std::uint64_t seed);

using InfoFn = std::function<double(const Vec&)>;

struct Certificate {
  std::string theorem;
  long samples = 0;
  long violations = 0;  // breaches beyond the hard slack
  long warnings = 0;    // breaches below tol::kWarnSlack among the violations
  double worst_margin = kInf;  // min over samples of bound - info
  std::map<std::string, double> constants;
};

Certificate certify_theorem1(const InfoFn& info, double capacity,
                             const Theorem1Constants& t1,
                             const std::vector<NeighborhoodSample>& samples,
                             double slack = tol::kCertSlack);
Certificate certify_theorem1(const Pipeline& pipe, const Theorem1Constants& t1,
                             const std::vector<NeighborhoodSample>& samples,
                             double slack = tol::kCertSlack);

/// Linear branch checks the bound over all of lam (samples plus a vertex
/// sweep); the quadratic branch checks the cubic-corrected bound on samples
/// within the theorem's delta.
Certificate certify_theorem2(const InfoFn& info, const CapacitySolution& geo,
                             const Theorem2Constants& t2,
                             const std::vector<NeighborhoodSample>& samples,
                             double slack = tol::kCertSlack);
Certificate certify_theorem2(const Pipeline& pipe, const Theorem2Constants& t2,
                             const std::vector<NeighborhoodSample>& samples,
                             double slack = tol::kCertSlack);

struct DecayCurve {
  std::vector<double> tau, distance, info, upper, lower;
  double step_length = 0.0;  // ||v_P||: distance at tau = 1
  long violations = 0;       // pointwise lower-envelope breaches
};

/// Realizes the slowest-decay direction P(tau) = base + tau * v_P inside lam
/// and evaluates the matching lower/upper envelopes pointwise.
DecayCurve converse_curve(const InfoFn& info, const CapacitySolution& geo,
                          double sigma_trace, const Theorem2Constants& t2,
                          bool quadratic, const std::vector<double>& taus,
                          double slack = tol::kCertSlack);
DecayCurve converse_curve(const Pipeline& pipe, const Theorem2Constants& t2,
                          bool quadratic, const std::vector<double>& taus,
                          double slack = tol::kCertSlack);

struct Example1Report {
  double capacity = 0.0;
  double ratio_limit = 0.0;     // Richardson extrapolation of (C-I)/dist^4
  double fitted_exponent = 0.0; // log-log slope of C-I against distance
  std::vector<double> taus, ratios, quad_coeffs;
  std::vector<int> polygon_sides;
  std::vector<double> polygon_gamma;  // Theorem-1 gamma of the k-gon surrogate
  double max_distance_residual = 0.0; // closed-form vs projected distance
};

/// The ball-constrained three-input channel: fourth-power decay on the
/// boundary curve, and vanishing quadratic coefficients for the polygonal
/// surrogates.
Example1Report example1_fourth_power();

struct Example2Report {
  int max_index = 0;
  double capacity = 0.0;
  bool caid_is_p1 = false;
  std::vector<double> distances;   // ||p_k - projection||, all 1
  std::vector<double> info_gaps;   // C - I(p_k), decreasing in k
  bool info_increasing = false;
  std::vector<double> taus;
  std::vector<double> segment_bounds;  // upper bounds forcing f = 0
};

Example2Report example2_truncation(int max_index);

struct Example3Report {
  int n = 0;
  double threshold = 0.0;
  std::vector<int> truncations;
  std::vector<double> sigma00;    // diverging diagonal entry
  std::vector<double> sigma01;    // stays at zero
  std::vector<double> a_values;   // diverging third-moment coefficient
  double capacity = 0.0;          // solver capacity at the largest truncation
  double capacity_expected = 0.0; // ln sqrt(n-1)
  double tail_divergence = 0.0;   // D(W(.|0) || q) at the largest truncation
  double tail_divergence_series = 0.0;  // closed-form series value
  bool a_lower_bound_only = false;
};

Example3Report example3_zeta(int n, const std::vector<int>& truncations);

struct AppendixBReport {
  double epsilon = 0.0;
  double capacity = 0.0;
  double grad_dot_u = 0.0;  // U^T D(W||q), should vanish
  Vec kernel_direction;     // U (unnormalized integer form)
  Vec refuting_p;           // point mass exhibiting the failure
  Vec v0;                   // kernel component of refuting_p - pbar
  double v0_norm = 0.0;
  double v0_dot_grad = 0.0;
  bool refutes_linear_kernel_bound = false;
};

AppendixBReport appendix_b_counterexample();

/// Random (w, q) pairs across alphabet sizes 2..32: Pinsker, the log
/// chi-square bound, and the cubic Taylor sandwich, all at 1e-12 slack.
Certificate divergence_sandwich_suite(long trials, std::uint64_t seed);

}  // namespace caidgeo
