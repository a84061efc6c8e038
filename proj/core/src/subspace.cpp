#include "caidgeo/subspace.hpp"

#include <Eigen/SVD>

namespace caidgeo {

Subspace::Subspace(Mat orthonormal_basis) : basis_(std::move(orthonormal_basis)) {
  if (basis_.cols() > 0) {
    Mat gram = basis_.transpose() * basis_;
    double err = (gram - Mat::Identity(basis_.cols(), basis_.cols()))
                     .cwiseAbs()
                     .maxCoeff();
    if (err > tol::kOrthonormal)
      throw numerical_error("Subspace: basis not orthonormal, error " +
                            std::to_string(err));
  }
}

Subspace Subspace::span_of(const Mat& columns, double rank_tol) {
  if (columns.cols() == 0) return zero(columns.rows());
  Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeThinU);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  Index r = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > rank_tol * std::max(smax, 1.0)) ++r;
  return Subspace(svd.matrixU().leftCols(r));
}

Subspace Subspace::null_of_rows(const Mat& rows, double rank_tol) {
  Index n = rows.cols();
  if (rows.rows() == 0) return full(n);
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  Index r = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > rank_tol * std::max(smax, 1.0)) ++r;
  return Subspace(svd.matrixV().rightCols(n - r));
}

bool Subspace::contains(const Vec& v, double tolerance) const {
  return (v - project(v)).norm() <= tolerance * std::max(1.0, v.norm());
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (ambient() != other.ambient())
    throw dimension_error("Subspace::intersect: ambient mismatch");
  // v in S1 and S2  <=>  v orthogonal to both complements.
  Mat rows(orthogonal_complement().dim() + other.orthogonal_complement().dim(),
           ambient());
  Mat c1 = orthogonal_complement().basis();
  Mat c2 = other.orthogonal_complement().basis();
  rows.topRows(c1.cols()) = c1.transpose();
  rows.bottomRows(c2.cols()) = c2.transpose();
  return null_of_rows(rows);
}

Subspace Subspace::orthogonal_complement() const {
  if (dim() == 0) return full(ambient());
  return null_of_rows(basis_.transpose());
}

}  // namespace caidgeo
