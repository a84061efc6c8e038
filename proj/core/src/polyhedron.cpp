#include "caidgeo/polyhedron.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <map>
#include <set>

namespace caidgeo {

namespace {

// Enumerates size-r index subsets of [0, k), calling fn on each; stops early
// if fn returns false.
template <typename Fn>
void for_each_subset(int k, int r, Fn&& fn) {
  if (r < 0 || r > k) return;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return;
    int i = r - 1;
    while (i >= 0 && idx[i] == k - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double binomial(int k, int r) {
  double v = 1.0;
  for (int i = 0; i < r; ++i) v *= static_cast<double>(k - i) / (i + 1);
  return v;
}

}  // namespace

Polyhedron::Polyhedron(Mat A, Vec b, Mat E, Vec f)
    : A_(std::move(A)), E_(std::move(E)), b_(std::move(b)), f_(std::move(f)) {
  Index n = std::max(A_.cols(), E_.cols());
  if (A_.rows() == 0) A_ = Mat::Zero(0, n);
  if (E_.rows() == 0) E_ = Mat::Zero(0, n);
  if (A_.cols() != n || E_.cols() != n)
    throw dimension_error("Polyhedron: inconsistent row widths");
  if (b_.size() != A_.rows() || f_.size() != E_.rows())
    throw dimension_error("Polyhedron: rhs size mismatch");
}

Polyhedron Polyhedron::simplex(Index n) {
  Mat A = -Mat::Identity(n, n);
  Vec b = Vec::Zero(n);
  Mat E = Mat::Ones(1, n);
  Vec f = Vec::Ones(1);
  return Polyhedron(std::move(A), std::move(b), std::move(E), std::move(f));
}

Polyhedron Polyhedron::with_inequalities(const Mat& A2, const Vec& b2) const {
  Mat A(A_.rows() + A2.rows(), ambient());
  A << A_, A2;
  Vec b(b_.size() + b2.size());
  b << b_, b2;
  return Polyhedron(std::move(A), std::move(b), E_, f_);
}

Polyhedron Polyhedron::with_equalities(const Mat& E2, const Vec& f2) const {
  Mat E(E_.rows() + E2.rows(), ambient());
  E << E_, E2;
  Vec f(f_.size() + f2.size());
  f << f_, f2;
  return Polyhedron(A_, b_, std::move(E), std::move(f));
}

bool Polyhedron::contains(const Vec& x, double tolerance) const {
  double scale = std::max(1.0, x.norm());
  if (A_.rows() > 0 && (A_ * x - b_).maxCoeff() > tolerance * scale) return false;
  if (E_.rows() > 0 && (E_ * x - f_).cwiseAbs().maxCoeff() > tolerance * scale)
    return false;
  return true;
}

std::vector<int> Polyhedron::active_constraints(const Vec& x,
                                                double tolerance) const {
  if (!contains(x, std::max(tolerance, 1e-8)))
    throw std::invalid_argument("active_constraints: point is infeasible");
  std::vector<int> act;
  double scale = std::max(1.0, x.norm());
  for (Index i = 0; i < A_.rows(); ++i)
    if (std::abs(A_.row(i).dot(x) - b_[i]) <= tolerance * scale)
      act.push_back(static_cast<int>(i));
  return act;
}

const std::vector<Vec>& Polyhedron::vertices() const {
  if (vertex_cache_) return *vertex_cache_;
  auto verts = std::make_shared<std::vector<Vec>>();
  const Index n = ambient();
  Eigen::CompleteOrthogonalDecomposition<Mat> ecod(E_);
  ecod.setThreshold(tol::kRankRel);
  const int rank_e = E_.rows() ? static_cast<int>(ecod.rank()) : 0;
  const int need = static_cast<int>(n) - rank_e;
  const int k = static_cast<int>(A_.rows());
  if (binomial(k, need) > 2e6)
    throw enumeration_overflow("Polyhedron::vertices: too many candidate bases");
  for_each_subset(k, need, [&](const std::vector<int>& idx) {
    Mat M(E_.rows() + need, n);
    Vec d(E_.rows() + need);
    if (E_.rows() > 0) {
      M.topRows(E_.rows()) = E_;
      d.head(E_.rows()) = f_;
    }
    for (int i = 0; i < need; ++i) {
      M.row(E_.rows() + i) = A_.row(idx[i]);
      d[E_.rows() + i] = b_[idx[i]];
    }
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(M);
    cod.setThreshold(tol::kRankRel);
    if (static_cast<Index>(cod.rank()) < n) return true;
    Vec x = cod.solve(d);
    if ((M * x - d).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, x.norm()))
      return true;
    if (!contains(x, tol::kActive)) return true;
    for (const auto& v : *verts)
      if ((v - x).norm() < 1e-8 * std::max(1.0, x.norm())) return true;
    verts->push_back(x);
    return true;
  });
  vertex_cache_ = verts;
  return *vertex_cache_;
}

Vec Polyhedron::feasible_point() const {
  const auto& verts = vertices();
  if (verts.empty()) throw std::invalid_argument("Polyhedron: empty set");
  Vec c = Vec::Zero(ambient());
  for (const auto& v : verts) c += v;
  return c / static_cast<double>(verts.size());
}

namespace {

// Projection onto conv{vertices} by conditional gradient with away steps in
// weight space; used when the H-description is too ill-conditioned for the
// active-set certificate. The returned gap bounds f(x) - f* from above.
std::pair<Vec, double> project_onto_hull(const std::vector<Vec>& verts,
                                         const Vec& p) {
  const std::size_t nv = verts.size();
  std::vector<double> w(nv, 1.0 / static_cast<double>(nv));
  Vec x = Vec::Zero(p.size());
  for (std::size_t i = 0; i < nv; ++i) x += w[i] * verts[i];
  double gap = kInf;
  for (int it = 0; it < 20000; ++it) {
    Vec g = x - p;
    std::size_t fw = 0, away = nv;
    double fw_val = kInf, away_val = -kInf;
    for (std::size_t i = 0; i < nv; ++i) {
      double s = g.dot(verts[i]);
      if (s < fw_val) {
        fw_val = s;
        fw = i;
      }
      if (w[i] > 1e-16 && s > away_val) {
        away_val = s;
        away = i;
      }
    }
    gap = g.dot(x) - fw_val;
    if (gap <= 1e-14 * std::max(1.0, p.squaredNorm())) break;
    Vec d = verts[fw] - x;
    double tmax = 1.0;
    bool is_away = false;
    if (away < nv && g.dot(x - verts[away]) < g.dot(d)) {
      d = x - verts[away];
      tmax = w[away] / (1.0 - std::min(w[away], 1.0 - 1e-16));
      is_away = true;
    }
    double denom = d.squaredNorm();
    if (denom < 1e-30) break;
    double t = std::clamp(-g.dot(d) / denom, 0.0, tmax);
    if (t <= 0.0) break;
    if (is_away) {
      for (auto& wi : w) wi *= (1.0 + t);
      w[away] -= t;
      if (w[away] < 0) w[away] = 0;
    } else {
      for (auto& wi : w) wi *= (1.0 - t);
      w[fw] += t;
    }
    double ws = 0;
    for (double wi : w) ws += wi;
    x.setZero();
    for (std::size_t i = 0; i < nv; ++i) {
      w[i] /= ws;
      x += w[i] * verts[i];
    }
  }
  return {x, gap};
}

}  // namespace

QpResult Polyhedron::project(const Vec& p) const {
  QpResult r = project_qp(A_, b_, E_, f_, p, feasible_point());
  if (r.converged) return r;
  // Ill-conditioned H-description: same set, cleaner representation.
  auto [x, gap] = project_onto_hull(vertices(), p);
  if (gap > 1e-10 * std::max(1.0, p.squaredNorm()))
    throw numerical_error("Polyhedron::project: projection not certified");
  QpResult h;
  h.x = x;
  h.kkt_residual = std::sqrt(2.0 * std::max(gap, 0.0));
  h.converged = true;
  double scale = std::max(1.0, x.norm());
  for (Index i = 0; i < A_.rows(); ++i)
    if (std::abs(A_.row(i).dot(x) - b_[i]) <= tol::kActive * scale)
      h.active.push_back(static_cast<int>(i));
  return h;
}

ConvexCone Polyhedron::tangent_cone(const Vec& x) const {
  std::vector<int> act = active_constraints(x);
  Mat G(static_cast<Index>(act.size()), ambient());
  for (std::size_t i = 0; i < act.size(); ++i)
    G.row(static_cast<Index>(i)) = A_.row(act[i]);
  return ConvexCone::from_halfspaces(G, E_);
}

ConvexCone Polyhedron::normal_cone(const Vec& x) const {
  std::vector<int> act = active_constraints(x);
  Mat R(ambient(), static_cast<Index>(act.size()));
  for (std::size_t i = 0; i < act.size(); ++i)
    R.col(static_cast<Index>(i)) = A_.row(act[i]).transpose();
  return ConvexCone::from_generators(R, E_.transpose());
}

std::vector<PolyFace> Polyhedron::faces(std::size_t cap) const {
  const auto& verts = vertices();
  std::vector<std::set<int>> vertex_active;
  for (const auto& v : verts) {
    auto a = active_constraints(v);
    vertex_active.emplace_back(a.begin(), a.end());
  }

  // Canonical signature of the smallest face whose active set contains S.
  auto canonicalize = [&](const std::set<int>& s, std::vector<int>& members) {
    members.clear();
    std::set<int> canon;
    bool first = true;
    for (std::size_t i = 0; i < vertex_active.size(); ++i) {
      if (!std::includes(vertex_active[i].begin(), vertex_active[i].end(),
                         s.begin(), s.end()))
        continue;
      members.push_back(static_cast<int>(i));
      if (first) {
        canon = vertex_active[i];
        first = false;
      } else {
        std::set<int> tmp;
        std::set_intersection(canon.begin(), canon.end(),
                              vertex_active[i].begin(), vertex_active[i].end(),
                              std::inserter(tmp, tmp.begin()));
        canon = std::move(tmp);
      }
    }
    return canon;
  };

  std::map<std::set<int>, std::vector<int>> lattice;  // signature -> vertices
  std::vector<std::set<int>> frontier;
  std::vector<int> members;
  for (const auto& va : vertex_active) {
    auto canon = canonicalize(va, members);
    if (lattice.emplace(canon, members).second) frontier.push_back(canon);
  }
  // Close under pairwise intersection of signatures.
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::set<int> meet;
      std::set_intersection(frontier[i].begin(), frontier[i].end(),
                            frontier[j].begin(), frontier[j].end(),
                            std::inserter(meet, meet.begin()));
      auto canon = canonicalize(meet, members);
      if (lattice.emplace(canon, members).second) frontier.push_back(canon);
      if (lattice.size() > cap)
        throw enumeration_overflow("Polyhedron::faces: face cap exceeded");
    }
  }

  std::vector<PolyFace> out;
  for (const auto& [sig, ids] : lattice) {
    PolyFace face;
    face.active.assign(sig.begin(), sig.end());
    face.vertex_ids = ids;
    Vec rep = Vec::Zero(ambient());
    for (int id : ids) rep += verts[id];
    face.rep = rep / static_cast<double>(ids.size());
    Mat rows(E_.rows() + static_cast<Index>(face.active.size()), ambient());
    if (E_.rows() > 0) rows.topRows(E_.rows()) = E_;
    for (std::size_t i = 0; i < face.active.size(); ++i)
      rows.row(E_.rows() + static_cast<Index>(i)) = A_.row(face.active[i]);
    face.dim = Subspace::null_of_rows(rows).dim();
    out.push_back(std::move(face));
  }
  std::sort(out.begin(), out.end(), [](const PolyFace& a, const PolyFace& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.active < b.active;
  });
  return out;
}

}  // namespace caidgeo
