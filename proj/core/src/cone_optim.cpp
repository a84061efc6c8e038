#include "caidgeo/cone_optim.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "caidgeo/rng.hpp"

namespace caidgeo {

namespace {

// Face lattice of a polyhedral cone as spans: every face is the span of the
// rays it contains plus the lineality space. Signatures are active H-form
// rows, closed under intersection.
std::vector<Mat> cone_face_spans(const ConvexCone& cone, std::size_t cap) {
  const Mat& R = cone.rays();
  const Mat& L = cone.lineality();
  std::vector<std::set<int>> ray_active;
  for (Index i = 0; i < R.cols(); ++i) {
    auto a = cone.active_rows(R.col(i));
    ray_active.emplace_back(a.begin(), a.end());
  }
  auto members_of = [&](const std::set<int>& sig) {
    std::vector<int> ids;
    for (std::size_t i = 0; i < ray_active.size(); ++i)
      if (std::includes(ray_active[i].begin(), ray_active[i].end(), sig.begin(),
                        sig.end()))
        ids.push_back(static_cast<int>(i));
    return ids;
  };
  std::set<std::set<int>> sigs;
  std::vector<std::set<int>> frontier;
  for (const auto& a : ray_active)
    if (sigs.insert(a).second) frontier.push_back(a);
  for (std::size_t i = 0; i < frontier.size() && sigs.size() <= cap; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      std::set<int> meet;
      std::set_intersection(frontier[i].begin(), frontier[i].end(),
                            frontier[j].begin(), frontier[j].end(),
                            std::inserter(meet, meet.begin()));
      if (sigs.insert(meet).second) frontier.push_back(meet);
    }
  if (sigs.size() > cap)
    throw enumeration_overflow("cone_face_spans: face cap exceeded");

  std::vector<Mat> spans;
  for (const auto& sig : sigs) {
    auto ids = members_of(sig);
    Mat cols(cone.ambient(), static_cast<Index>(ids.size()) + L.cols());
    for (std::size_t i = 0; i < ids.size(); ++i)
      cols.col(static_cast<Index>(i)) = R.col(ids[i]);
    if (L.cols() > 0) cols.rightCols(L.cols()) = L;
    Mat basis = Subspace::span_of(cols).basis();
    if (basis.cols() > 0) spans.push_back(basis);
  }
  if (L.cols() > 0) spans.push_back(L);
  return spans;
}

double quad(const Mat& M, const Vec& v) { return v.dot(M * v); }

}  // namespace

ExtremalResult extremal_quadratic_on_cone(const Mat& M, const ConvexCone& cone,
                                          bool maximize, std::size_t face_cap) {
  ExtremalResult out;
  out.method = "face-eigen+pga";
  if (cone.is_zero()) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.arg = Vec::Zero(cone.ambient());
    return out;
  }
  const double sign = maximize ? 1.0 : -1.0;
  double best = -kInf;
  Vec best_arg;

  auto consider = [&](const Vec& v) {
    if (v.norm() < 1e-12) return;
    Vec u = v.normalized();
    if (!cone.contains(u, 1e-9)) {
      if (cone.contains(-u, 1e-9))
        u = -u;
      else
        return;
    }
    double val = sign * quad(M, u);
    if (val > best) {
      best = val;
      best_arg = u;
    }
  };

  // Multi-start projected gradient over the sphere slice of the cone.
  std::vector<Vec> starts;
  for (Index i = 0; i < cone.rays().cols(); ++i) {
    starts.push_back(cone.rays().col(i));
    Vec img = cone.project(M * cone.rays().col(i));
    if (img.norm() > 1e-12) starts.push_back(img.normalized());
  }
  for (Index i = 0; i < cone.lineality().cols(); ++i) {
    starts.push_back(cone.lineality().col(i));
    starts.push_back(-cone.lineality().col(i));
  }
  for (auto& s : starts) {
    Vec u = s.normalized();
    double step = 0.5;
    double cur = sign * quad(M, u);
    for (int it = 0; it < 300; ++it) {
      Vec g = 2.0 * sign * (M * u);
      Vec cand = cone.project(u + step * g);
      if (cand.norm() < 1e-14) break;
      cand.normalize();
      double val = sign * quad(M, cand);
      if (val > cur + 1e-15) {
        u = cand;
        cur = val;
        step *= 1.3;
      } else {
        step *= 0.5;
        if (step < 1e-12) break;
      }
    }
    consider(u);
  }

  // Exact completion: eigenvectors of M restricted to each face span.
  try {
    for (const Mat& B : cone_face_spans(cone, face_cap)) {
      Eigen::SelfAdjointEigenSolver<Mat> es(B.transpose() * M * B);
      for (Index i = 0; i < es.eigenvalues().size(); ++i)
        consider(B * es.eigenvectors().col(i));
    }
    out.certified = true;
  } catch (const enumeration_overflow&) {
    out.certified = false;
    out.method = "pga-multistart";
  }

  out.value = sign * best;
  out.arg = best_arg;
  return out;
}

ExtremalResult min_linear_on_cone(const Vec& l, const ConvexCone& cone) {
  ExtremalResult out;
  out.method = "extreme-ray-sweep";
  if (cone.is_zero())
    throw std::invalid_argument("min_linear_on_cone: zero cone");
  // A nontrivial lineality direction is orthogonal to l under the sign
  // condition, so it attains 0.
  if (cone.lineality().cols() > 0) {
    Vec u = cone.lineality().col(0);
    if (std::abs(l.dot(u)) > 1e-8 * std::max(1.0, l.norm()))
      throw numerical_error(
          "min_linear_on_cone: objective changes sign on the lineality space");
    out.value = 0.0;
    out.arg = u;
    out.certified = true;
    return out;
  }
  double best = kInf;
  Vec arg;
  for (Index i = 0; i < cone.rays().cols(); ++i) {
    double v = l.dot(cone.rays().col(i));
    if (v < -1e-8 * std::max(1.0, l.norm()))
      throw numerical_error(
          "min_linear_on_cone: objective negative on a generator");
    if (v < best) {
      best = v;
      arg = cone.rays().col(i);
    }
  }
  out.value = std::max(0.0, best);
  out.arg = arg;
  out.certified = true;
  return out;
}

ExtremalResult min_l1_on_subspace(const Mat& M, const Subspace& s,
                                  std::size_t subset_cap) {
  ExtremalResult out;
  out.method = "arrangement-1-faces";
  const Mat B = s.basis();
  const Index d = B.cols();
  if (d == 0) throw std::invalid_argument("min_l1_on_subspace: zero subspace");
  Mat Mt = M * B;  // m x d
  Subspace ns = Subspace::null_of_rows(Mt);
  if (ns.dim() > 0) {
    out.value = 0.0;
    out.arg = B * ns.basis().col(0);
    out.certified = true;
    return out;
  }
  if (d == 1) {
    out.value = Mt.col(0).lpNorm<1>();
    out.arg = B.col(0);
    out.certified = true;
    return out;
  }
  const int m = static_cast<int>(Mt.rows());
  const int r = static_cast<int>(d) - 1;
  double combos = 1.0;
  for (int i = 0; i < r; ++i) combos *= static_cast<double>(m - i) / (i + 1);
  if (combos > static_cast<double>(subset_cap))
    throw enumeration_overflow("min_l1_on_subspace: too many row subsets");

  double best = kInf;
  Vec arg;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    Mat rows(r, d);
    for (int i = 0; i < r; ++i) rows.row(i) = Mt.row(idx[i]);
    Subspace nr = Subspace::null_of_rows(rows);
    if (nr.dim() == 1) {
      Vec c = nr.basis().col(0);
      double v = (Mt * c).lpNorm<1>();
      if (v < best) {
        best = v;
        arg = B * c;
      }
    }
    int i = r - 1;
    while (i >= 0 && idx[i] == m - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  out.value = best;
  out.arg = arg;
  out.certified = true;
  return out;
}

ExtremalResult minimize_on_cone_sphere(
    const std::function<double(const Vec&)>& f,
    const std::function<Vec(const Vec&)>& subgrad, const ConvexCone& cone,
    const std::vector<Vec>& extra_starts, int restarts, int iters,
    unsigned seed) {
  ExtremalResult out;
  out.method = "projected-subgradient-multistart";
  if (cone.is_zero())
    throw std::invalid_argument("minimize_on_cone_sphere: zero cone");
  std::vector<Vec> starts = extra_starts;
  for (Index i = 0; i < cone.rays().cols(); ++i)
    starts.push_back(cone.rays().col(i));
  for (Index i = 0; i < cone.lineality().cols(); ++i) {
    starts.push_back(cone.lineality().col(i));
    starts.push_back(-cone.lineality().col(i));
  }
  Rng rng(seed);
  for (int i = 0; i < restarts; ++i) {
    Vec g = cone.project(rng.gaussian_vec(cone.ambient()));
    if (g.norm() > 1e-10) starts.push_back(g);
  }
  double best = kInf;
  Vec arg = Vec::Zero(cone.ambient());
  for (auto& s0 : starts) {
    if (s0.norm() < 1e-12) continue;
    Vec u = s0.normalized();
    double cur = f(u);
    double step = 0.3;
    for (int it = 0; it < iters; ++it) {
      Vec g = subgrad(u);
      g -= u * u.dot(g);  // tangent component on the sphere
      if (g.norm() < 1e-14) break;
      Vec cand = cone.project(u - step * g.normalized());
      if (cand.norm() < 1e-14) break;
      cand.normalize();
      double val = f(cand);
      if (val < cur - 1e-16) {
        u = cand;
        cur = val;
        step = std::min(step * 1.2, 0.5);
      } else {
        step *= 0.6;
        if (step < 1e-13) break;
      }
    }
    if (cur < best) {
      best = cur;
      arg = u;
    }
  }
  out.value = best;
  out.arg = arg;
  return out;
}

double angle_cone_subspace(const ConvexCone& c, const Subspace& s,
                           bool expect_positive) {
  if (c.is_zero() || s.dim() == 0) return M_PI / 2.0;
  Mat P = s.basis() * s.basis().transpose();
  ExtremalResult r = extremal_quadratic_on_cone(P, c, /*maximize=*/true);
  double cos2 = std::clamp(r.value, 0.0, 1.0);
  double angle = std::acos(std::sqrt(cos2));
  if (expect_positive && angle < 1e-9)
    throw numerical_error(
        "angle_cone_subspace: could not certify a positive angle");
  return angle;
}

double angle_union_subspace(const UnionOfCones& u, const Subspace& s,
                            bool expect_positive) {
  double angle = M_PI / 2.0;
  for (const auto& m : u.members) {
    if (m.cone.is_zero()) continue;
    angle = std::min(angle, angle_cone_subspace(m.cone, s, expect_positive));
  }
  return angle;
}

double angle_between_cones(const ConvexCone& u, const ConvexCone& v,
                           bool expect_positive) {
  if (u.is_zero() || v.is_zero()) return M_PI / 2.0;
  if (v.is_subspace())
    return angle_cone_subspace(u, Subspace::span_of(v.lineality()),
                               expect_positive);
  if (u.is_subspace())
    return angle_cone_subspace(v, Subspace::span_of(u.lineality()),
                               expect_positive);
  // Alternating maximization of u^T v from all generator pairs.
  auto gather = [](const ConvexCone& c) {
    std::vector<Vec> g;
    for (Index i = 0; i < c.rays().cols(); ++i) g.push_back(c.rays().col(i));
    for (Index i = 0; i < c.lineality().cols(); ++i) {
      g.push_back(c.lineality().col(i));
      g.push_back(-c.lineality().col(i));
    }
    return g;
  };
  double best = -1.0;
  for (const Vec& a0 : gather(u))
    for (const Vec& b0 : gather(v)) {
      Vec a = a0.normalized(), b = b0.normalized();
      for (int it = 0; it < 200; ++it) {
        Vec an = u.project(b);
        if (an.norm() > 1e-13) a = an.normalized();
        Vec bn = v.project(a);
        if (bn.norm() > 1e-13) b = bn.normalized();
        double c2 = a.dot(b);
        if (it > 4 && std::abs(c2 - best) < 1e-15) break;
      }
      best = std::max(best, a.dot(b));
    }
  double angle = std::acos(std::clamp(best, -1.0, 1.0));
  if (expect_positive && angle < 1e-9)
    throw numerical_error(
        "angle_between_cones: could not certify a positive angle");
  return angle;
}

}  // namespace caidgeo
