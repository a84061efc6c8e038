#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "caidgeo/cone.hpp"
#include "caidgeo/qp.hpp"
#include "caidgeo/subspace.hpp"
#include "caidgeo/types.hpp"

namespace caidgeo {

/// Affine subspace {x : E x = f}.
struct AffineSubspace {
  Mat E;
  Vec f;
  Index ambient() const { return E.cols(); }
  Subspace tangent() const { return Subspace::null_of_rows(E); }
  Subspace normal() const { return Subspace::span_of(E.transpose()); }
  bool contains(const Vec& x, double tolerance = tol::kActive) const {
    return E.rows() == 0 ||
           (E * x - f).cwiseAbs().maxCoeff() <= tolerance * std::max(1.0, x.norm());
  }
};

/// Relative-interior representative of a face together with its signature.
struct PolyFace {
  std::vector<int> active;        // inequality rows active on the whole face
  std::vector<int> vertex_ids;    // vertices spanning the face
  Vec rep;                        // barycenter of those vertices
  Index dim = 0;
};

/// Polyhedron {x : A x <= b, E x = f}. The geometry routines (vertices,
/// faces, feasible_point) assume a polytope, which covers every constraint
/// set handled here (subsets of the probability simplex).
class Polyhedron {
 public:
  Polyhedron() = default;  // placeholder; not usable until assigned
  Polyhedron(Mat A, Vec b, Mat E, Vec f);

  static Polyhedron simplex(Index n);
  /// Probability vectors with the given coordinates pinned to zero, reduced
  /// to the remaining coordinates.
  Polyhedron with_inequalities(const Mat& A2, const Vec& b2) const;
  Polyhedron with_equalities(const Mat& E2, const Vec& f2) const;

  Index ambient() const { return A_.cols(); }
  const Mat& A() const { return A_; }
  const Vec& b() const { return b_; }
  const Mat& E() const { return E_; }
  const Vec& f() const { return f_; }

  bool contains(const Vec& x, double tolerance = tol::kActive) const;
  /// Indices i with |a_i^T x - b_i| <= tol; throws if x is infeasible beyond
  /// tol. Equality rows are implicitly always active.
  std::vector<int> active_constraints(const Vec& x,
                                      double tolerance = tol::kActive) const;

  const std::vector<Vec>& vertices() const;
  bool empty() const { return vertices().empty(); }
  /// Barycenter of the vertex set: a relative-interior point.
  Vec feasible_point() const;

  QpResult project(const Vec& p) const;

  ConvexCone tangent_cone(const Vec& x) const;
  ConvexCone normal_cone(const Vec& x) const;

  /// All faces (including the polytope itself and its vertices), each with a
  /// canonical active set and barycentric representative.
  std::vector<PolyFace> faces(std::size_t cap = 10000) const;

 private:
  Mat A_, E_;
  Vec b_, f_;
  mutable std::shared_ptr<std::vector<Vec>> vertex_cache_;
};

}  // namespace caidgeo
