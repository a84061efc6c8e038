#include "caidgeo/pushover.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace caidgeo {

bool UnionOfCones::intersects_only_origin(const Subspace& s,
                                          double tolerance) const {
  for (const auto& m : members) {
    if (m.cone.is_zero()) continue;
    for (Index i = 0; i < m.cone.rays().cols(); ++i)
      if (s.contains(m.cone.rays().col(i), tolerance)) return false;
    for (Index i = 0; i < m.cone.lineality().cols(); ++i)
      if (s.contains(m.cone.lineality().col(i), tolerance)) return false;
  }
  return true;
}

ConvexCone pushover_cone(const Polyhedron& outer, const Polyhedron& inner,
                         const Vec& pbar) {
  if (!inner.contains(pbar, 1e-8))
    throw std::invalid_argument("pushover_cone: pbar not in the inner set");
  return outer.tangent_cone(pbar).intersect(inner.normal_cone(pbar));
}

UnionOfCones pushover_union(const Polyhedron& outer, const Polyhedron& inner,
                            std::size_t face_cap) {
  // Refine inner's description with outer's rows: the point set is
  // unchanged, but face relative interiors then have constant signatures
  // for both sets.
  Polyhedron refined =
      inner.with_inequalities(outer.A(), outer.b()).with_equalities(outer.E(), outer.f());
  UnionOfCones u;
  u.ambient = inner.ambient();
  std::map<std::pair<std::vector<int>, std::vector<int>>, ConeMember> dedup;
  for (const auto& face : refined.faces(face_cap)) {
    ConeMember m;
    m.base = face.rep;
    m.sig_outer = outer.active_constraints(face.rep);
    m.sig_inner = inner.active_constraints(face.rep);
    auto key = std::make_pair(m.sig_outer, m.sig_inner);
    if (dedup.count(key)) continue;
    m.cone = pushover_cone(outer, inner, face.rep);
    dedup.emplace(std::move(key), std::move(m));
  }
  for (auto& [key, m] : dedup) u.members.push_back(std::move(m));
  return u;
}

UnionOfCones pushover_union_cones(const ConvexCone& outer,
                                  const ConvexCone& inner,
                                  std::size_t face_cap) {
  UnionOfCones u;
  u.ambient = outer.ambient();
  const Mat& R = inner.rays();
  const Mat& L = inner.lineality();

  auto active_of = [](const ConvexCone& c, const Vec& v) {
    return c.active_rows(v);
  };
  auto tangent_at = [](const ConvexCone& c, const Vec& v) {
    auto act = c.active_rows(v);
    Mat G(static_cast<Index>(act.size()), c.ambient());
    for (std::size_t i = 0; i < act.size(); ++i)
      G.row(static_cast<Index>(i)) = c.ineq().row(act[i]);
    return ConvexCone::from_halfspaces(G, c.eq());
  };
  auto normal_at = [](const ConvexCone& c, const Vec& v) {
    auto act = c.active_rows(v);
    Mat rays(c.ambient(), static_cast<Index>(act.size()));
    for (std::size_t i = 0; i < act.size(); ++i)
      rays.col(static_cast<Index>(i)) = c.ineq().row(act[i]).transpose();
    return ConvexCone::from_generators(rays, c.eq().transpose());
  };

  // Reference points: apex, plus the relative-interior of every face of the
  // inner cone (sums of the rays sharing a signature).
  std::vector<Vec> reps;
  reps.push_back(Vec::Zero(u.ambient));  // apex / lineality face
  std::vector<std::set<int>> ray_active;
  for (Index i = 0; i < R.cols(); ++i) {
    auto a = inner.active_rows(R.col(i));
    ray_active.emplace_back(a.begin(), a.end());
  }
  std::set<std::set<int>> sigs;
  std::vector<std::set<int>> frontier;
  for (const auto& a : ray_active)
    if (sigs.insert(a).second) frontier.push_back(a);
  for (std::size_t i = 0; i < frontier.size() && sigs.size() <= face_cap; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      std::set<int> meet;
      std::set_intersection(frontier[i].begin(), frontier[i].end(),
                            frontier[j].begin(), frontier[j].end(),
                            std::inserter(meet, meet.begin()));
      if (sigs.insert(meet).second) frontier.push_back(meet);
    }
  if (sigs.size() > face_cap)
    throw enumeration_overflow("pushover_union_cones: face cap exceeded");
  for (const auto& sig : sigs) {
    Vec rep = Vec::Zero(u.ambient);
    for (std::size_t i = 0; i < ray_active.size(); ++i)
      if (std::includes(ray_active[i].begin(), ray_active[i].end(), sig.begin(),
                        sig.end()))
        rep += R.col(static_cast<Index>(i));
    if (rep.norm() > 1e-12) reps.push_back(rep);
  }
  (void)L;

  std::map<std::pair<std::vector<int>, std::vector<int>>, ConeMember> dedup;
  for (const auto& rep : reps) {
    ConeMember m;
    m.base = rep;
    m.sig_outer = active_of(outer, rep);
    m.sig_inner = active_of(inner, rep);
    auto key = std::make_pair(m.sig_outer, m.sig_inner);
    if (dedup.count(key)) continue;
    m.cone = tangent_at(outer, rep).intersect(normal_at(inner, rep));
    dedup.emplace(std::move(key), std::move(m));
  }
  for (auto& [key, m] : dedup) u.members.push_back(std::move(m));
  return u;
}

}  // namespace caidgeo
