#pragma once

#include <vector>

#include "caidgeo/types.hpp"

namespace caidgeo {

struct QpResult {
  Vec x;
  double kkt_residual = kInf;
  std::vector<int> active;  // inequality rows active at the solution
  bool converged = false;
  int iterations = 0;
};

/// Euclidean projection of p onto {x : A x <= b, E x = f} by a primal
/// active-set iteration started from the feasible point `start`.
QpResult project_qp(const Mat& A, const Vec& b, const Mat& E, const Vec& f,
                    const Vec& p, const Vec& start,
                    double kkt_tol = tol::kKkt);

}  // namespace caidgeo
