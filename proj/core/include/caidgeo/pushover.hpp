#pragma once

#include <vector>

#include "caidgeo/cone.hpp"
#include "caidgeo/polyhedron.hpp"
#include "caidgeo/subspace.hpp"

namespace caidgeo {

/// One cone of projection directions, tagged with the base point of the
/// inner-set face it belongs to and the active-constraint signature.
struct ConeMember {
  ConvexCone cone;
  Vec base;
  std::vector<int> sig_outer, sig_inner;
};

/// Finite union of convex cones (closed, one member per active-set
/// signature of the inner set).
struct UnionOfCones {
  std::vector<ConeMember> members;
  Index ambient = 0;
  bool intersects_only_origin(const Subspace& s, double tolerance = 1e-9) const;
};

/// D_pbar(outer|inner) = T_pbar(outer) ∩ N_pbar(inner): exactly the
/// directions p - pbar of points p in `outer` projecting onto pbar.
ConvexCone pushover_cone(const Polyhedron& outer, const Polyhedron& inner,
                         const Vec& pbar);

/// D(outer|inner): one member per distinct active-set signature over the
/// faces of `inner` (refined by outer's constraints), each with a
/// face-barycenter base point.
UnionOfCones pushover_union(const Polyhedron& outer, const Polyhedron& inner,
                            std::size_t face_cap = 10000);

/// Same construction when both sets are cones with apex 0 (faces of the
/// inner cone are enumerated from its extreme rays; the apex face has
/// base 0).
UnionOfCones pushover_union_cones(const ConvexCone& outer,
                                  const ConvexCone& inner,
                                  std::size_t face_cap = 4096);

}  // namespace caidgeo
