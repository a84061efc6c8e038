#pragma once

#include <utility>

#include "caidgeo/subspace.hpp"
#include "caidgeo/types.hpp"

namespace caidgeo {

/// Nonnegative least squares: min ||A z - y|| s.t. z >= 0 (Lawson-Hanson).
Vec nnls(const Mat& A, const Vec& y, double tolerance = 1e-12);

/// Closed convex polyhedral cone, kept in both descriptions:
///   H-form: {x : G x <= 0, E x = 0}
///   V-form: cone{rays} + span{lineality}
/// Conversions run through the double description method, so constructing a
/// cone from either side yields both.
class ConvexCone {
 public:
  ConvexCone() = default;  // placeholder; not a usable cone until assigned

  static ConvexCone from_halfspaces(Mat G, Mat E);
  static ConvexCone from_generators(const Mat& ray_columns,
                                    const Mat& lineality_columns);
  static ConvexCone zero(Index n);
  static ConvexCone full(Index n);

  Index ambient() const { return n_; }
  const Mat& ineq() const { return G_; }       // rows g, g^T x <= 0
  const Mat& eq() const { return E_; }         // rows e, e^T x = 0
  const Mat& rays() const { return R_; }       // unit columns
  const Mat& lineality() const { return L_; }  // orthonormal columns

  bool contains(const Vec& v, double tolerance = tol::kActive) const;
  bool is_zero(double tolerance = tol::kActive) const;
  /// True when the cone equals span{lineality} (no proper rays).
  bool is_subspace() const { return R_.cols() == 0; }

  ConvexCone polar() const;
  ConvexCone intersect(const ConvexCone& other) const;

  /// Euclidean projection onto the cone (active-set QP from the apex).
  Vec project(const Vec& v) const;

  /// Active inequality rows of the H-form at a member point.
  std::vector<int> active_rows(const Vec& v,
                               double tolerance = tol::kActive) const;

 private:
  Index n_ = 0;
  Mat G_, E_;  // H-form
  Mat R_, L_;  // V-form
};

/// Moreau split: v = vbar + vperp with vbar = proj(v, c),
/// vperp = proj(v, polar(c)), vbar^T vperp = 0.
std::pair<Vec, Vec> moreau_decompose(const Vec& v, const ConvexCone& c);

}  // namespace caidgeo
