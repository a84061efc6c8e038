#include "caidgeo/capacity.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace caidgeo {

Subspace channel_kernel(const Channel& w) {
  Subspace k = Subspace::null_of_rows(w.matrix().transpose());
  for (Index i = 0; i < k.dim(); ++i) {
    if (std::abs(k.basis().col(i).sum()) > 1e-9)
      throw numerical_error("channel_kernel: member does not sum to zero");
  }
  return k;
}

Subspace gradient_kernel(const Vec& grad) {
  if (grad.norm() < 1e-14) return Subspace::full(grad.size());
  return Subspace::null_of_rows(grad.transpose());
}

Vec ClassicalChannelModel::divergence_vector(const Vec& p) const {
  Vec q = w_->matrix().transpose() * p;
  Vec d(w_->inputs());
  for (Index x = 0; x < w_->inputs(); ++x) d[x] = kl_divergence(w_->row(x), q);
  return d;
}

double ClassicalChannelModel::info(const Vec& p) const {
  Vec q = w_->matrix().transpose() * p;
  double s = 0.0;
  for (Index x = 0; x < w_->inputs(); ++x) {
    if (p[x] <= 0.0) continue;
    s += p[x] * kl_divergence(w_->row(x), q);
  }
  return s;
}

Mat ClassicalChannelModel::hessian(const Vec& p) const {
  Vec q = w_->matrix().transpose() * p;
  Vec inv = q.unaryExpr([](double v) { return v > 1e-300 ? 1.0 / v : 0.0; });
  return -(w_->matrix() * inv.asDiagonal() * w_->matrix().transpose());
}

namespace {

// Exact line search for I along x + t d on [0, tmax]: bisection on the
// directional derivative d^T D(W || q_t), 60 halvings.
double line_search(const ChannelModel& model, const Vec& x, const Vec& d,
                   double tmax) {
  auto deriv = [&](double t) {
    return d.dot(model.divergence_vector(x + t * d));
  };
  if (deriv(0.0) <= 0.0) return 0.0;
  double hi_probe = tmax * (1.0 - 1e-12);
  if (deriv(hi_probe) >= 0.0) return tmax;
  double lo = 0.0, hi = hi_probe;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (deriv(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Equality-constrained Newton ascent on the face identified by the active
// rows at x: snap onto the face, then take damped Newton steps in its null
// space. Flat (kernel) directions get no step through the pseudoinverse.
// `active_tol` controls the support identification: vertices the conditional
// gradient has not fully drained are treated as off-face when within it.
void polish_on_face(const ChannelModel& model, const Polyhedron& lam, Vec& x,
                    double active_tol) {
  double scale = std::max(1.0, x.norm());
  std::vector<int> act;
  for (Index i = 0; i < lam.A().rows(); ++i)
    if (lam.A().row(i).dot(x) > lam.b()[i] - active_tol * scale)
      act.push_back(static_cast<int>(i));
  Mat C(lam.E().rows() + static_cast<Index>(act.size()), lam.ambient());
  Vec d(C.rows());
  if (lam.E().rows() > 0) {
    C.topRows(lam.E().rows()) = lam.E();
    d.head(lam.E().rows()) = lam.f();
  }
  for (std::size_t i = 0; i < act.size(); ++i) {
    C.row(lam.E().rows() + static_cast<Index>(i)) = lam.A().row(act[i]);
    d[lam.E().rows() + static_cast<Index>(i)] = lam.b()[act[i]];
  }
  if (C.rows() > 0) {
    Mat gram = C * C.transpose();
    Vec lambda = gram.completeOrthogonalDecomposition().solve(C * x - d);
    Vec snapped = x - C.transpose() * lambda;
    if (lam.contains(snapped, 1e-9)) x = snapped;
  }
  Mat Z = Subspace::null_of_rows(C).basis();
  if (Z.cols() == 0) return;

  // Longest feasible step from x along a direction, for the rows kept
  // inactive.
  auto max_step = [&](const Vec& from, const Vec& dir) {
    double tmax = kInf;
    for (Index i = 0; i < lam.A().rows(); ++i) {
      double ad = lam.A().row(i).dot(dir);
      if (ad > 1e-14)
        tmax = std::min(tmax, (lam.b()[i] - lam.A().row(i).dot(from)) / ad);
    }
    return std::max(0.0, tmax);
  };
  auto ascend = [&](Vec& from, const Vec& dir, double cur) {
    double tmax = max_step(from, dir);
    if (!(tmax > 0.0) || !std::isfinite(tmax)) return cur;
    double t = tmax;
    for (int bt = 0; bt < 50; ++bt, t *= 0.5) {
      Vec cand = from + t * dir;
      if (!lam.contains(cand, 1e-12)) continue;
      double val = model.info(cand);
      if (val >= cur) {
        from = cand;
        return val;
      }
    }
    return cur;
  };

  double cur = model.info(x);
  for (int it = 0; it < 80; ++it) {
    Vec g = model.divergence_vector(x);
    Mat H = Z.transpose() * model.hessian(x) * Z;
    Vec gz = Z.transpose() * g;
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(H);
    cod.setThreshold(1e-9);
    Vec u = cod.solve(-gz);
    Vec residual = gz + H * u;  // gradient component the curvature misses
    double before = cur;

    if (u.norm() > 1e-15 * scale) {
      // Damped Newton step inside the face.
      Vec step = Z * u;
      double t = 1.0;
      for (int bt = 0; bt < 40; ++bt, t *= 0.5) {
        Vec cand = x + t * step;
        if (!lam.contains(cand, 1e-12)) continue;
        double val = model.info(cand);
        if (val >= cur) {
          x = cand;
          cur = val;
          break;
        }
      }
    }
    if (residual.norm() > 1e-14) {
      // Near-linear ascent directions: walk them to the boundary.
      cur = ascend(x, Z * residual.normalized(), cur);
    }
    if (cur - before < 1e-17 * std::max(1.0, std::abs(cur))) break;
  }

  // Objective comparisons flatten out near the optimum while the gradient
  // still carries sqrt(eps)-level spread; finish on the stationarity
  // residual itself, which Newton drives to machine precision.
  double res_norm = (Z.transpose() * model.divergence_vector(x)).norm();
  Vec ones_comp = Z.transpose() * Vec::Ones(lam.ambient());
  auto stat_residual = [&](const Vec& pt) {
    Vec gz = Z.transpose() * model.divergence_vector(pt);
    // Project out the constant ambiguity the simplex multiplier absorbs.
    if (ones_comp.norm() > 1e-12) {
      Vec oc = ones_comp.normalized();
      gz -= oc * oc.dot(gz);
    }
    return gz.norm();
  };
  res_norm = stat_residual(x);
  for (int it = 0; it < 25 && res_norm > 1e-14; ++it) {
    Vec g = model.divergence_vector(x);
    Mat H = Z.transpose() * model.hessian(x) * Z;
    Vec gz = Z.transpose() * g;
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(H);
    cod.setThreshold(1e-9);
    Vec step = Z * cod.solve(-gz);
    if (step.norm() < 1e-16 * scale) break;
    bool moved = false;
    double t = 1.0;
    for (int bt = 0; bt < 30; ++bt, t *= 0.5) {
      Vec cand = x + t * step;
      if (!lam.contains(cand, 1e-12)) continue;
      double r = stat_residual(cand);
      if (r < res_norm) {
        x = cand;
        res_norm = r;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
}

double fw_gap(const ChannelModel& model, const std::vector<Vec>& verts,
              const Vec& x) {
  Vec g = model.divergence_vector(x);
  if (!g.allFinite()) return kInf;  // cannot certify from this point
  double best = -kInf;
  for (const auto& v : verts) best = std::max(best, g.dot(v - x));
  if (!std::isfinite(best)) return kInf;
  return best;
}

}  // namespace

SolverOutput maximize_info(const ChannelModel& model, const Polyhedron& lam,
                           const SolverOptions& opts) {
  const auto& verts = lam.vertices();
  if (verts.empty()) throw solver_error("maximize_info: empty constraint set");
  const std::size_t nv = verts.size();

  std::vector<double> weight(nv, 1.0 / static_cast<double>(nv));
  auto combine = [&]() {
    Vec x = Vec::Zero(model.inputs());
    for (std::size_t i = 0; i < nv; ++i) x += weight[i] * verts[i];
    return x;
  };
  Vec x = combine();

  SolverOutput out;
  Vec best_x = x;
  double best_gap = fw_gap(model, verts, x);

  // Candidate refinements from the current iterate: Newton on the face the
  // active set suggests, and Newton on the argmax face of the gradient
  // functional (which contains every optimizer by the center inequality).
  auto consider = [&](Vec cand, double active_tol) {
    for (int round = 0; round < 3; ++round)
      polish_on_face(model, lam, cand, active_tol);
    double g = fw_gap(model, verts, cand);
    if (g < best_gap) {
      best_gap = g;
      best_x = cand;
    }
  };
  auto try_polish = [&]() {
    if (!opts.polish) return;
    for (double active_tol : {1e-9, 1e-6, 1e-3}) {
      consider(x, active_tol);
      if (best_gap <= opts.tol) return;
    }
    Vec g = model.divergence_vector(best_x);
    double cmax = -kInf;
    for (const auto& v : verts) cmax = std::max(cmax, g.dot(v));
    for (double grad_tol : {1e-12, 1e-9, 1e-6, 1e-4}) {
      Vec bary = Vec::Zero(model.inputs());
      int cnt = 0;
      for (const auto& v : verts)
        if (g.dot(v) >= cmax - grad_tol * std::max(1.0, std::abs(cmax))) {
          bary += v;
          ++cnt;
        }
      if (cnt == 0) continue;
      consider(bary / cnt, 1e-9);
      if (best_gap <= opts.tol) return;
    }
  };

  const int chunk = 2000;
  double gap_at_last_chunk = kInf;
  int stalled_chunks = 0;
  for (out.iterations = 0; out.iterations < opts.max_iter; ++out.iterations) {
    Vec g = model.divergence_vector(x);
    std::size_t fw = 0, away = nv;
    double fw_val = -kInf, away_val = kInf;
    for (std::size_t i = 0; i < nv; ++i) {
      double s = g.dot(verts[i]);
      if (s > fw_val) {
        fw_val = s;
        fw = i;
      }
      if (weight[i] > 1e-14 && s < away_val) {
        away_val = s;
        away = i;
      }
    }
    double gap = fw_val - g.dot(x);
    if (gap < best_gap) {
      best_gap = gap;
      best_x = x;
    }
    if (best_gap <= opts.tol) break;
    // Early and periodic polish attempts; large output alphabets often have
    // the optimal face identified long before the gap certifies.
    if (out.iterations == 200 ||
        (out.iterations > 0 && out.iterations % chunk == 0)) {
      try_polish();
      if (best_gap <= opts.tol) break;
      if (out.iterations % chunk == 0) {
        if (best_gap > 0.9 * gap_at_last_chunk) {
          if (++stalled_chunks >= 5) break;  // no longer making progress
        } else {
          stalled_chunks = 0;
        }
        gap_at_last_chunk = best_gap;
      }
    }
    Vec d_fw = verts[fw] - x;
    bool take_away = false;
    Vec d = d_fw;
    double tmax = 1.0;
    if (away < nv) {
      Vec d_away = x - verts[away];
      if (g.dot(d_away) > g.dot(d_fw) && weight[away] < 1.0 - 1e-12) {
        take_away = true;
        d = d_away;
        tmax = weight[away] / (1.0 - weight[away]);
      }
    }
    double t = line_search(model, x, d, tmax);
    if (t <= 0.0 && !take_away) break;  // no ascent left along FW directions
    if (take_away) {
      for (auto& wv : weight) wv *= (1.0 + t);
      weight[away] -= t;
      if (weight[away] < 0) weight[away] = 0;
    } else {
      for (auto& wv : weight) wv *= (1.0 - t);
      weight[fw] += t;
    }
    double wsum = 0;
    for (double wv : weight) wsum += wv;
    for (auto& wv : weight) wv /= wsum;
    x = combine();
  }

  if (best_gap > opts.tol) try_polish();

  if (opts.polish) {
    // Final stationarity refinement: the conditional gradient certifies the
    // value, but downstream geometry wants the gradient equalized to
    // machine precision on the optimal face.
    auto stationarity = [&](const Vec& pt) {
      Vec g = model.divergence_vector(pt);
      if (!g.allFinite()) return kInf;
      double c = g.dot(pt), worst = 0.0;
      for (Index i = 0; i < pt.size(); ++i)
        if (pt[i] > 1e-9) worst = std::max(worst, std::abs(g[i] - c));
      return worst;
    };
    Vec refined = best_x;
    for (int round = 0; round < 2; ++round) polish_on_face(model, lam, refined, 1e-9);
    double refined_gap = fw_gap(model, verts, refined);
    if (refined_gap <= std::max(best_gap, opts.tol) &&
        stationarity(refined) <= stationarity(best_x)) {
      best_x = refined;
      best_gap = std::min(best_gap, refined_gap);
    }
  }

  out.gap = best_gap;
  out.converged = best_gap <= opts.tol;
  out.maximizer = best_x;
  out.value = model.info(best_x);
  return out;
}

std::vector<int> support_set(const Channel& w, const Polyhedron& lam) {
  if (lam.ambient() != w.inputs())
    throw dimension_error("support_set: alphabet mismatch");
  const auto& verts = lam.vertices();
  if (verts.empty()) throw solver_error("support_set: empty constraint set");
  std::vector<int> sup;
  for (Index x = 0; x < w.inputs(); ++x) {
    double mx = 0.0;
    for (const auto& v : verts) mx = std::max(mx, v[x]);
    if (mx > 1e-10) sup.push_back(static_cast<int>(x));
  }
  return sup;
}

Polyhedron restrict_polytope_columns(const Polyhedron& lam,
                                     const std::vector<int>& keep) {
  Mat A(lam.A().rows(), static_cast<Index>(keep.size()));
  Mat E(lam.E().rows(), static_cast<Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    A.col(static_cast<Index>(j)) = lam.A().col(keep[j]);
    E.col(static_cast<Index>(j)) = lam.E().col(keep[j]);
  }
  return Polyhedron(std::move(A), lam.b(), std::move(E), lam.f());
}

void finish_solution_geometry(CapacitySolution& sol, const Mat& output_rows,
                              const Vec& output_rhs,
                              const std::function<double(const Vec&)>& info_of) {
  const Index n = sol.gradient.size();

  sol.saddle_margin = -kInf;
  for (const auto& v : sol.lam.vertices())
    sol.saddle_margin =
        std::max(sol.saddle_margin, (v - sol.maximizer).dot(sol.gradient));

  Mat rows(1 + output_rows.rows(), n);
  rows.row(0) = sol.gradient.transpose();
  rows.bottomRows(output_rows.rows()) = output_rows;
  Vec rhs(1 + output_rhs.size());
  rhs[0] = sol.capacity;
  rhs.tail(output_rhs.size()) = output_rhs;

  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smax = svd.singularValues()[0];
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol::kRankRel * std::max(smax, 1.0)) ++rank;
  Mat e_red = svd.matrixV().leftCols(rank).transpose();
  Vec f_red(rank);
  for (Index i = 0; i < rank; ++i)
    f_red[i] = svd.matrixU().col(i).dot(rhs) / svd.singularValues()[i];
  sol.affine = AffineSubspace{e_red, f_red};

  sol.ker_channel = Subspace::null_of_rows(output_rows);
  for (Index i = 0; i < sol.ker_channel.dim(); ++i)
    if (std::abs(sol.ker_channel.basis().col(i).sum()) > 1e-9)
      throw numerical_error("finish_solution_geometry: kernel member does not sum to zero");
  sol.ker_gradient = gradient_kernel(sol.gradient);
  sol.tangent_affine = Subspace::null_of_rows(rows);
  Subspace cross = sol.ker_gradient.intersect(sol.ker_channel);
  if (cross.dim() != sol.tangent_affine.dim())
    throw numerical_error(
        "finish_solution_geometry: T(A) does not match ker_d ∩ ker(W)");

  // Pi_Lambda as lam ∩ A_Lambda; falls back to the singleton {maximizer}
  // when the equality system misbehaves numerically.
  sol.caid_exact = sol.affine.contains(sol.maximizer, 1e-7);
  if (sol.caid_exact) {
    Polyhedron caid = sol.lam.with_equalities(e_red, f_red);
    bool ok = !caid.vertices().empty();
    for (const auto& v : caid.vertices()) {
      if (!ok) break;
      if (std::abs(info_of(v) - sol.capacity) > 1e-7) ok = false;
      if ((output_rows * v - output_rhs).lpNorm<1>() > 1e-7) ok = false;
    }
    if (ok) {
      sol.caid = std::move(caid);
    } else {
      sol.caid_exact = false;
    }
  }
  if (!sol.caid_exact) {
    Mat eye = Mat::Identity(n, n);
    sol.caid = sol.lam.with_equalities(eye, sol.maximizer);
  }
}

CapacitySolution solve_capacity(const Channel& w, const Polyhedron& lam,
                                double tol) {
  if (lam.ambient() != w.inputs())
    throw dimension_error("solve_capacity: alphabet mismatch");
  CapacitySolution sol;
  sol.support = support_set(w, lam);
  std::vector<int> all_outputs(w.outputs());
  for (Index y = 0; y < w.outputs(); ++y) all_outputs[static_cast<int>(y)] = static_cast<int>(y);

  Channel w_sup = w.restricted(sol.support, all_outputs);
  Polyhedron lam_sup = restrict_polytope_columns(lam, sol.support);

  ClassicalChannelModel model(w_sup);
  SolverOptions opts;
  opts.tol = tol;
  SolverOutput fw = maximize_info(model, lam_sup, opts);
  if (!fw.converged)
    throw solver_error("solve_capacity: duality gap " + std::to_string(fw.gap) +
                       " above tolerance after iteration cap");
  sol.capacity = fw.value;
  sol.duality_gap = fw.gap;
  sol.iterations = fw.iterations;

  Vec q_full = w_sup.matrix().transpose() * fw.maximizer;
  for (Index y = 0; y < q_full.size(); ++y)
    if (q_full[y] > 1e-15) sol.retained_outputs.push_back(static_cast<int>(y));
  sol.channel = w.restricted(sol.support, sol.retained_outputs);
  sol.lam = lam_sup;
  sol.maximizer = fw.maximizer;
  sol.center = Vec(static_cast<Index>(sol.retained_outputs.size()));
  for (std::size_t y = 0; y < sol.retained_outputs.size(); ++y)
    sol.center[static_cast<Index>(y)] = q_full[sol.retained_outputs[y]];

  const Index n = sol.channel.inputs();
  sol.gradient = Vec(n);
  for (Index x = 0; x < n; ++x)
    sol.gradient[x] = kl_divergence(sol.channel.row(x), sol.center);

  ClassicalChannelModel restricted_model(sol.channel);
  finish_solution_geometry(
      sol, sol.channel.matrix().transpose(), sol.center,
      [&](const Vec& p) { return restricted_model.info(p); });
  return sol;
}

}  // namespace caidgeo
