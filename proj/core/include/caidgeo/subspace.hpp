#pragma once

#include "caidgeo/types.hpp"

namespace caidgeo {

/// Linear subspace of R^n held as an orthonormal basis (columns). A zero
/// column count represents {0}.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Mat orthonormal_basis);

  static Subspace zero(Index n) { return Subspace(Mat::Zero(n, 0)); }
  static Subspace full(Index n) { return Subspace(Mat::Identity(n, n)); }
  /// Span of the given columns (rank-revealing, tol relative to largest
  /// singular value).
  static Subspace span_of(const Mat& columns, double rank_tol = tol::kRankRel);
  /// Null space of the row system `rows` (j x n).
  static Subspace null_of_rows(const Mat& rows,
                               double rank_tol = tol::kRankRel);

  Index ambient() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  const Mat& basis() const { return basis_; }

  Vec project(const Vec& v) const { return basis_ * (basis_.transpose() * v); }
  bool contains(const Vec& v, double tolerance = 1e-9) const;

  Subspace intersect(const Subspace& other) const;
  Subspace orthogonal_complement() const;

 private:
  Mat basis_;  // n x r, orthonormal columns
};

}  // namespace caidgeo
