#include "caidgeo/cone.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <vector>

#include "caidgeo/qp.hpp"

namespace caidgeo {

namespace {

constexpr double kDdTol = 1e-11;

Mat columns_from(const std::vector<Vec>& cols, Index n) {
  Mat m(n, static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) m.col(static_cast<Index>(i)) = cols[i];
  return m;
}

std::vector<Vec> to_columns(const Mat& m) {
  std::vector<Vec> v;
  v.reserve(m.cols());
  for (Index i = 0; i < m.cols(); ++i) v.push_back(m.col(i));
  return v;
}

// Drops rays that are conic combinations of the remaining rays + lineality.
void reduce_rays(std::vector<Vec>& rays, const Mat& lin) {
  // Dedupe near-parallel rays first.
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = rays.size(); j-- > i + 1;)
      if (rays[i].dot(rays[j]) > 1.0 - 1e-12) rays.erase(rays.begin() + j);
  // Drop rays inside the lineality span.
  if (lin.cols() > 0)
    rays.erase(std::remove_if(rays.begin(), rays.end(),
                              [&](const Vec& r) {
                                Vec res = r - lin * (lin.transpose() * r);
                                return res.norm() < 1e-10;
                              }),
               rays.end());
  for (std::size_t i = rays.size(); i-- > 0;) {
    if (rays.size() <= 1) break;
    Mat A(rays[0].size(),
          static_cast<Index>(rays.size() - 1) + 2 * lin.cols());
    Index c = 0;
    for (std::size_t j = 0; j < rays.size(); ++j)
      if (j != i) A.col(c++) = rays[j];
    for (Index j = 0; j < lin.cols(); ++j) {
      A.col(c++) = lin.col(j);
      A.col(c++) = -lin.col(j);
    }
    Vec z = nnls(A, rays[i]);
    if ((A * z - rays[i]).norm() < 1e-10) rays.erase(rays.begin() + i);
  }
}

struct DdState {
  std::vector<Vec> lin;   // current lineality directions (reduced coords)
  std::vector<Vec> rays;  // current extreme-ray candidates
};

// Double description: V-form of {c : Gr c <= 0} starting from the full space.
DdState dd_insert_halfspaces(const Mat& Gr, Index r) {
  DdState st;
  for (Index i = 0; i < r; ++i) st.lin.push_back(Vec::Unit(r, i));
  for (Index k = 0; k < Gr.rows(); ++k) {
    Vec g = Gr.row(k).transpose();
    if (g.norm() < kDdTol) continue;
    g.normalize();
    // Split the lineality against g if it is not orthogonal to it.
    Index pivot = -1;
    double best = kDdTol;
    for (std::size_t i = 0; i < st.lin.size(); ++i)
      if (std::abs(g.dot(st.lin[i])) > best) {
        best = std::abs(g.dot(st.lin[i]));
        pivot = static_cast<Index>(i);
      }
    if (pivot >= 0) {
      Vec l = st.lin[static_cast<std::size_t>(pivot)];
      if (g.dot(l) < 0) l = -l;  // g^T l > 0
      double gl = g.dot(l);
      std::vector<Vec> nl;
      for (std::size_t i = 0; i < st.lin.size(); ++i) {
        if (static_cast<Index>(i) == pivot) continue;
        Vec w = st.lin[i] - (g.dot(st.lin[i]) / gl) * l;
        if (w.norm() > kDdTol) nl.push_back(w.normalized());
      }
      for (auto& ray : st.rays) {
        ray -= (g.dot(ray) / gl) * l;
        if (ray.norm() > kDdTol) ray.normalize();
      }
      st.rays.erase(std::remove_if(st.rays.begin(), st.rays.end(),
                                   [](const Vec& v) { return v.norm() < kDdTol; }),
                    st.rays.end());
      st.lin = std::move(nl);
      st.rays.push_back(-l);
      continue;
    }
    // g is orthogonal to the lineality: classic ray split.
    std::vector<Vec> keep, plus, minus;
    for (const auto& ray : st.rays) {
      double s = g.dot(ray);
      if (s > kDdTol)
        plus.push_back(ray);
      else if (s < -kDdTol)
        minus.push_back(ray), keep.push_back(ray);
      else
        keep.push_back(ray);
    }
    for (const auto& p : plus)
      for (const auto& m : minus) {
        Vec w = g.dot(p) * m - g.dot(m) * p;
        if (w.norm() > kDdTol) keep.push_back(w.normalized());
      }
    st.rays = std::move(keep);
    Mat lin_mat = columns_from(st.lin, r);
    reduce_rays(st.rays, lin_mat);
  }
  return st;
}

}  // namespace

Vec nnls(const Mat& A, const Vec& y, double tolerance) {
  const Index n = A.cols();
  Vec z = Vec::Zero(n);
  if (n == 0) return z;
  std::vector<bool> passive(n, false);
  Vec w = A.transpose() * (y - A * z);
  const double scale = std::max(1.0, y.norm());
  for (int outer = 0; outer < 8 * static_cast<int>(n) + 32; ++outer) {
    Index best = -1;
    double bw = tolerance * scale;
    for (Index i = 0; i < n; ++i)
      if (!passive[i] && w[i] > bw) {
        bw = w[i];
        best = i;
      }
    if (best < 0) break;
    passive[best] = true;
    for (int inner = 0; inner < 4 * static_cast<int>(n) + 16; ++inner) {
      std::vector<Index> idx;
      for (Index i = 0; i < n; ++i)
        if (passive[i]) idx.push_back(i);
      Mat Ap(A.rows(), static_cast<Index>(idx.size()));
      for (std::size_t i = 0; i < idx.size(); ++i) Ap.col(static_cast<Index>(i)) = A.col(idx[i]);
      Vec zp = Ap.completeOrthogonalDecomposition().solve(y);
      bool ok = true;
      for (Index i = 0; i < zp.size(); ++i)
        if (zp[i] <= 0.0) ok = false;
      if (ok) {
        z.setZero();
        for (std::size_t i = 0; i < idx.size(); ++i) z[idx[i]] = zp[static_cast<Index>(i)];
        break;
      }
      double alpha = 1.0;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        double zi = z[idx[i]], zpi = zp[static_cast<Index>(i)];
        if (zpi <= 0.0 && zi - zpi > 0) alpha = std::min(alpha, zi / (zi - zpi));
      }
      for (std::size_t i = 0; i < idx.size(); ++i) {
        z[idx[i]] += alpha * (zp[static_cast<Index>(i)] - z[idx[i]]);
        if (z[idx[i]] <= tolerance) {
          z[idx[i]] = 0.0;
          passive[idx[i]] = false;
        }
      }
    }
    w = A.transpose() * (y - A * z);
  }
  return z;
}

ConvexCone ConvexCone::from_halfspaces(Mat G, Mat E) {
  ConvexCone c;
  c.n_ = std::max(G.cols(), E.cols());
  if (G.rows() == 0) G = Mat::Zero(0, c.n_);
  if (E.rows() == 0) E = Mat::Zero(0, c.n_);
  if (G.cols() != c.n_ || E.cols() != c.n_)
    throw dimension_error("ConvexCone: halfspace row width mismatch");
  Subspace ns = Subspace::null_of_rows(E);
  const Mat B = ns.basis();
  const Index r = B.cols();
  DdState st = dd_insert_halfspaces(G * B, r);
  std::vector<Vec> rays, lin;
  for (const auto& ray : st.rays) rays.push_back((B * ray).normalized());
  for (const auto& l : st.lin) lin.push_back(B * l);
  c.R_ = columns_from(rays, c.n_);
  c.L_ = Subspace::span_of(columns_from(lin, c.n_)).basis();
  // Canonical H-form from the V-form: equality rows span the orthogonal
  // complement of the cone's span, and the inequality rows are the facet
  // normals, i.e. the extreme rays of the polar. This drops redundant input
  // rows, which otherwise poison the projection QPs with near-dependent
  // working sets.
  c.E_ = Subspace::null_of_rows(
             (Mat(c.R_.cols() + c.L_.cols(), c.n_) << c.R_.transpose(),
              c.L_.transpose())
                 .finished())
             .basis()
             .transpose();
  // Polar V-form: dd over {y : R^T y <= 0, L^T y = 0}.
  Subspace polar_null = Subspace::null_of_rows(c.L_.transpose());
  const Mat pb = polar_null.basis();
  DdState pst = dd_insert_halfspaces(c.R_.transpose() * pb, pb.cols());
  std::vector<Vec> grows;
  for (const auto& ray : pst.rays) {
    Vec g = pb * ray;
    if (c.E_.rows() > 0) g -= c.E_.transpose() * (c.E_ * g);  // mod equalities
    if (g.norm() > kDdTol) grows.push_back(g.normalized());
  }
  for (std::size_t i = 0; i < grows.size(); ++i)
    for (std::size_t j = grows.size(); j-- > i + 1;)
      if (grows[i].dot(grows[j]) > 1.0 - 1e-12) grows.erase(grows.begin() + j);
  c.G_ = columns_from(grows, c.n_).transpose();
  return c;
}

ConvexCone ConvexCone::from_generators(const Mat& ray_columns,
                                       const Mat& lineality_columns) {
  Index n = std::max(ray_columns.rows(), lineality_columns.rows());
  Mat R = ray_columns.rows() ? ray_columns : Mat::Zero(n, 0);
  Mat L = lineality_columns.rows() ? lineality_columns : Mat::Zero(n, 0);
  // Polar of the polar: the polar's H-form is immediate from the V-form,
  // and from_halfspaces canonicalizes both descriptions.
  ConvexCone polar_cone = from_halfspaces(R.transpose(), L.transpose());
  return from_halfspaces(polar_cone.rays().transpose(),
                         polar_cone.lineality().transpose());
}

ConvexCone ConvexCone::zero(Index n) {
  return from_halfspaces(Mat::Zero(0, n), Mat::Identity(n, n));
}

ConvexCone ConvexCone::full(Index n) {
  return from_halfspaces(Mat::Zero(0, n), Mat::Zero(0, n));
}

bool ConvexCone::contains(const Vec& v, double tolerance) const {
  double scale = std::max(1.0, v.norm());
  if (G_.rows() > 0 && (G_ * v).maxCoeff() > tolerance * scale) return false;
  if (E_.rows() > 0 && (E_ * v).cwiseAbs().maxCoeff() > tolerance * scale)
    return false;
  return true;
}

bool ConvexCone::is_zero(double) const {
  return R_.cols() == 0 && L_.cols() == 0;
}

ConvexCone ConvexCone::polar() const {
  return from_halfspaces(R_.transpose(), L_.transpose());
}

ConvexCone ConvexCone::intersect(const ConvexCone& other) const {
  if (ambient() != other.ambient())
    throw dimension_error("ConvexCone::intersect: ambient mismatch");
  Mat G(G_.rows() + other.G_.rows(), n_);
  G << G_, other.G_;
  Mat E(E_.rows() + other.E_.rows(), n_);
  E << E_, other.E_;
  return from_halfspaces(G, E);
}

Vec ConvexCone::project(const Vec& v) const {
  if (is_zero()) return Vec::Zero(n_);
  QpResult r = project_qp(G_, Vec::Zero(G_.rows()), E_, Vec::Zero(E_.rows()),
                          v, Vec::Zero(n_));
  if (!r.converged)
    throw numerical_error("ConvexCone::project: QP did not converge");
  return r.x;
}

std::vector<int> ConvexCone::active_rows(const Vec& v, double tolerance) const {
  std::vector<int> out;
  double scale = std::max(1.0, v.norm());
  for (Index i = 0; i < G_.rows(); ++i)
    if (std::abs(G_.row(i).dot(v)) <= tolerance * scale)
      out.push_back(static_cast<int>(i));
  return out;
}

std::pair<Vec, Vec> moreau_decompose(const Vec& v, const ConvexCone& c) {
  Vec vbar = c.project(v);
  return {vbar, v - vbar};
}

}  // namespace caidgeo
