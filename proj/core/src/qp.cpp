#include "caidgeo/qp.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "caidgeo/cone.hpp"

namespace caidgeo {

namespace {

struct EqSolve {
  Vec x;
  Vec lambda;  // one multiplier per row of C
};

// min ||x - p||^2 s.t. C x = d, via x = p - C^T lambda, (C C^T) lambda = Cp - d.
EqSolve solve_equality(const Mat& C, const Vec& d, const Vec& p) {
  EqSolve s;
  if (C.rows() == 0) {
    s.x = p;
    s.lambda = Vec::Zero(0);
    return s;
  }
  Mat gram = C * C.transpose();
  s.lambda = gram.completeOrthogonalDecomposition().solve(C * p - d);
  s.x = p - C.transpose() * s.lambda;
  return s;
}

}  // namespace

QpResult project_qp(const Mat& A, const Vec& b, const Mat& E, const Vec& f,
                    const Vec& p, const Vec& start, double kkt_tol) {
  const Index n = p.size();
  const Index k = A.rows();
  QpResult res;
  Vec x = start;

  std::vector<int> working;  // active inequality rows
  double scale = std::max(1.0, x.norm());
  for (Index i = 0; i < k; ++i)
    if (A.row(i).dot(x) > b[i] - 1e-11 * scale) working.push_back(static_cast<int>(i));

  auto assemble = [&](const std::vector<int>& w, Mat& C, Vec& d) {
    C.resize(E.rows() + static_cast<Index>(w.size()), n);
    d.resize(C.rows());
    if (E.rows() > 0) {
      C.topRows(E.rows()) = E;
      d.head(E.rows()) = f;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      C.row(E.rows() + static_cast<Index>(i)) = A.row(w[i]);
      d[E.rows() + static_cast<Index>(i)] = b[w[i]];
    }
  };

  // Stationarity defect via the normal-cone certificate: distance from
  // p - x to cone{active rows} + span{equality rows}. Robust to redundant
  // working sets, unlike raw pseudoinverse multipliers.
  auto cone_defect = [&](const std::vector<int>& w, const Vec& xs) {
    Mat gen(n, static_cast<Index>(w.size()) + 2 * E.rows());
    for (std::size_t i = 0; i < w.size(); ++i)
      gen.col(static_cast<Index>(i)) = A.row(w[i]).transpose();
    for (Index i = 0; i < E.rows(); ++i) {
      gen.col(static_cast<Index>(w.size()) + 2 * i) = E.row(i).transpose();
      gen.col(static_cast<Index>(w.size()) + 2 * i + 1) = -E.row(i).transpose();
    }
    Vec resid = p - xs;
    if (gen.cols() > 0) resid -= gen * nnls(gen, p - xs);
    return resid.norm();
  };

  Vec best_x;
  double best_defect = kInf;
  std::vector<int> best_active;
  auto record_candidate = [&](const Vec& xs, const std::vector<int>& w,
                              double defect) {
    if (defect < best_defect) {
      best_defect = defect;
      best_x = xs;
      best_active = w;
    }
  };

  const int max_iter = 60 * static_cast<int>(k + n + 4);
  bool done = false;
  int last_dropped = -1, degenerate_pivots = 0;
  for (res.iterations = 0; res.iterations < max_iter && !done;
       ++res.iterations) {
    Mat C;
    Vec d;
    assemble(working, C, d);
    EqSolve eq = solve_equality(C, d, p);
    Vec delta = eq.x - x;
    scale = std::max(1.0, eq.x.norm());

    if (delta.norm() <= 1e-13 * scale) {
      double defect = cone_defect(working, eq.x);
      record_candidate(eq.x, working, defect);
      if (defect <= 1e-10 * std::max(1.0, (p - eq.x).norm())) {
        done = true;
        break;
      }
      int drop = -1;
      double most_negative = -1e-11;
      for (std::size_t i = 0; i < working.size(); ++i) {
        double lam = eq.lambda[E.rows() + static_cast<Index>(i)];
        if (lam < most_negative) {
          most_negative = lam;
          drop = static_cast<int>(i);
          break;  // lowest index rule
        }
      }
      if (drop < 0) {
        done = true;  // stationary up to the description's conditioning
        break;
      }
      last_dropped = working[drop];
      working.erase(working.begin() + drop);
      continue;
    }

    // Longest feasible step toward the subproblem solution.
    double alpha = 1.0;
    int blocker = -1;
    for (Index i = 0; i < k; ++i) {
      if (std::find(working.begin(), working.end(), static_cast<int>(i)) !=
          working.end())
        continue;
      double ad = A.row(i).dot(delta);
      if (ad > 1e-13) {
        double room = (b[i] - A.row(i).dot(x)) / ad;
        if (room < alpha) {
          alpha = std::max(0.0, room);
          blocker = static_cast<int>(i);
        }
      }
    }
    x += alpha * delta;
    if (blocker >= 0) {
      // A drop that immediately re-blocks with no movement signals a
      // degenerate description; stop early with the best candidate.
      if (blocker == last_dropped && alpha <= 1e-13 &&
          ++degenerate_pivots >= 3)
        break;
      working.push_back(blocker);
      std::sort(working.begin(), working.end());
    } else {
      x = eq.x;  // full step, re-test stationarity next round
    }
  }

  if (best_defect == kInf) {
    // Never reached a stationary subproblem; report the last iterate.
    res.x = x;
    res.active = working;
    res.kkt_residual = kInf;
    res.converged = false;
    return res;
  }

  res.x = best_x;
  res.active = best_active;
  double r = best_defect;
  if (k > 0) r = std::max(r, (A * res.x - b).maxCoeff());
  if (E.rows() > 0) r = std::max(r, (E * res.x - f).cwiseAbs().maxCoeff());
  res.kkt_residual = r;
  res.converged = r <= std::max(kkt_tol, 1e-9 * std::max(1.0, p.norm()));
  return res;
}

}  // namespace caidgeo
