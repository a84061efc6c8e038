#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caidgeo/capacity.hpp"
#include "caidgeo/pushover.hpp"

namespace caidgeo {

/// Gram matrix of centered likelihood ratios under the center measure; the
/// Hessian surrogate of the divergence term.
struct FisherMatrix {
  Mat m;
  double seminorm_sq(const Vec& v) const { return v.dot(m * v); }
  double trace() const { return m.trace(); }
};

/// Sigma(x,x') = sum_y q(y) (W(y|x)/q(y) - 1)(W(y|x')/q(y) - 1); the channel
/// must already be restricted to support inputs and positive-mass outputs.
FisherMatrix fisher_matrix(const Channel& w, const Vec& q);

struct ACoefficient {
  double value = 0.0;        // cube root of the third-moment integral
  double lower_bound = 0.0;  // sqrt(tr Sigma)
  double upper_bound = 0.0;  // n^{1/6} (sum_x int (dW/dq)^3 dq)^{1/3}
};

/// Third-moment coefficient controlling the cubic remainder of the
/// divergence Taylor expansion; throws numerical_error if its own sandwich
/// bounds fail.
ACoefficient a_coefficient(const Channel& w, const Vec& q);

/// Certification record attached to every nonconvex minimization result.
struct CertRecord {
  double value = 0.0;
  std::string method;
  bool certified = false;
};

struct Theorem1Constants {
  double beta = 0.0;   // angle(D(lam|caid), T(A)) in (0, pi/2]
  double gamma = 0.0;  // nats per squared distance
  double delta = 0.0;  // neighborhood radius
  CertRecord angle_rec, l1_rec;
};

Theorem1Constants theorem1_constants(const CapacitySolution& sol,
                                     const UnionOfCones& dlp);

struct FaceReport {
  std::vector<int> sig_outer, sig_inner;
  double phi = 0.0;         // angle(D(D_pbar | W_pbar), ker_d)
  double delta_face = 0.0;  // per-face neighborhood radius
  bool w_cone_zero = false; // improved branch: W_pbar = {0}
};

struct Theorem2Constants {
  double gamma1 = 0.0;
  Vec gamma1_arg, gamma1_base;  // minimizer direction and its base point
  std::optional<double> gamma2; // present iff gamma1 == 0 and A finite
  Vec gamma2_arg, gamma2_base;
  std::optional<double> delta;
  std::vector<FaceReport> per_face;
  double a_value = kInf;
  bool a_finite = true;  // false: gamma2/delta withheld, a_value a lower bound
  CertRecord gamma1_rec, gamma2_rec;
};

Theorem2Constants theorem2_constants(const CapacitySolution& sol,
                                     const UnionOfCones& dlp,
                                     const FisherMatrix& sigma,
                                     const ACoefficient& a,
                                     bool a_finite = true);

struct TaylorCheck {
  double lhs = 0.0;       // |D(q_p || q) - 1/2 ||p - pbar||_Sigma^2|
  double envelope = 0.0;  // (A^3/2) ||p - pbar||^3
};

/// Evaluates the divergence Taylor remainder at (p, pbar) and asserts it
/// stays inside the cubic envelope; requires q_pbar = q within 1e-9.
TaylorCheck kld_taylor_check(const Channel& w, const Vec& q,
                             const FisherMatrix& sigma, double a, const Vec& p,
                             const Vec& pbar);

}  // namespace caidgeo
