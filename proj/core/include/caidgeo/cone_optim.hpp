#pragma once

#include <functional>
#include <string>
#include <vector>

#include "caidgeo/cone.hpp"
#include "caidgeo/subspace.hpp"
#include "caidgeo/types.hpp"

namespace caidgeo {

/// Outcome of an extremal problem over {v in cone : ||v|| = 1}, with a
/// certification record (value, method, whether the deterministic
/// enumeration completed).
struct ExtremalResult {
  double value = 0.0;
  Vec arg;
  std::string method;
  bool certified = false;
};

/// Extremum of v^T M v over unit vectors of a polyhedral cone. Runs
/// projected-gradient ascent/descent multi-started from the generators and
/// their M-images, then polishes with the eigenstructure of M restricted to
/// every face span; the face sweep makes the result exact whenever the face
/// lattice fits under `face_cap`.
ExtremalResult extremal_quadratic_on_cone(const Mat& M, const ConvexCone& cone,
                                          bool maximize,
                                          std::size_t face_cap = 4096);

/// Minimum of l^T v over unit v in the cone. Requires l^T v >= 0 on the
/// cone (true for capacity gradients by the saddle inequality); under that
/// sign condition the minimum sits on an extreme ray, so the sweep over rays
/// is exact.
ExtremalResult min_linear_on_cone(const Vec& l, const ConvexCone& cone);

/// Minimum of ||M v||_1 over unit v in a subspace. Exact: the minimum is
/// attained on a 1-dimensional face of the hyperplane arrangement
/// {(M v)_j = 0}, enumerated from (dim-1)-subsets of rows.
ExtremalResult min_l1_on_subspace(const Mat& M, const Subspace& s,
                                  std::size_t subset_cap = 200000);

/// Multi-start projected subgradient descent of an arbitrary objective over
/// unit vectors of a cone; used where no exact sweep applies (trace norms).
ExtremalResult minimize_on_cone_sphere(
    const std::function<double(const Vec&)>& f,
    const std::function<Vec(const Vec&)>& subgrad, const ConvexCone& cone,
    const std::vector<Vec>& extra_starts = {}, int restarts = 16,
    int iters = 400, unsigned seed = 11);

/// Angle between a convex cone and a subspace, in (0, pi/2] when they meet
/// only at the origin; pi/2 when either side is {0}.
double angle_cone_subspace(const ConvexCone& c, const Subspace& s,
                           bool expect_positive = false);

/// Angle between two convex cones (alternating maximization over unit
/// generators); pi/2 when either is {0}.
double angle_between_cones(const ConvexCone& u, const ConvexCone& v,
                           bool expect_positive = false);

}  // namespace caidgeo

#include "caidgeo/pushover.hpp"

namespace caidgeo {

/// Worst-case angle of a finite union: the minimum over member cones.
double angle_union_subspace(const UnionOfCones& u, const Subspace& s,
                            bool expect_positive = false);

}  // namespace caidgeo
