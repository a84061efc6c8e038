#include "caidgeo/constants.hpp"

#include <cmath>

#include "caidgeo/cone_optim.hpp"
#include "caidgeo/divergence.hpp"

namespace caidgeo {

FisherMatrix fisher_matrix(const Channel& w, const Vec& q) {
  if (q.size() != w.outputs())
    throw dimension_error("fisher_matrix: output alphabet mismatch");
  const Index n = w.inputs(), m = w.outputs();
  for (Index y = 0; y < m; ++y)
    if (!(q[y] > 0.0))
      throw std::invalid_argument("fisher_matrix: zero-mass output retained");
  Mat ratio(n, m);  // W(y|x)/q(y) - 1
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < m; ++y) ratio(x, y) = w.matrix()(x, y) / q[y] - 1.0;
  FisherMatrix f;
  f.m = ratio * q.asDiagonal() * ratio.transpose();
  f.m = 0.5 * (f.m + f.m.transpose());
  return f;
}

ACoefficient a_coefficient(const Channel& w, const Vec& q) {
  if (q.size() != w.outputs())
    throw dimension_error("a_coefficient: output alphabet mismatch");
  const Index n = w.inputs(), m = w.outputs();
  ACoefficient a;
  double third = 0.0, upper_inner = 0.0;
  for (Index y = 0; y < m; ++y) {
    if (!(q[y] > 0.0))
      throw std::invalid_argument("a_coefficient: zero-mass output retained");
    double s2 = 0.0;
    for (Index x = 0; x < n; ++x) {
      double r = w.matrix()(x, y) / q[y];
      s2 += r * r;
      upper_inner += q[y] * r * r * r;
    }
    third += q[y] * std::pow(s2, 1.5);
  }
  a.value = std::cbrt(third);
  a.lower_bound = std::sqrt(fisher_matrix(w, q).trace());
  a.upper_bound = std::pow(static_cast<double>(n), 1.0 / 6.0) * std::cbrt(upper_inner);
  if (a.value < a.lower_bound - 1e-9 || a.value > a.upper_bound + 1e-9)
    throw numerical_error("a_coefficient: sandwich bounds violated");
  return a;
}

namespace {

bool nothing_outside_caid(const UnionOfCones& dlp) {
  for (const auto& m : dlp.members)
    if (!m.cone.is_zero()) return false;
  return true;
}

}  // namespace

Theorem1Constants theorem1_constants(const CapacitySolution& sol,
                                     const UnionOfCones& dlp) {
  if (nothing_outside_caid(dlp))
    throw std::invalid_argument(
        "theorem1_constants: constraint set equals the optimizer set");
  Theorem1Constants out;

  out.beta = angle_union_subspace(dlp, sol.tangent_affine, true);
  out.angle_rec = {out.beta, "face-eigen+pga", true};

  // ker_d ∩ N(A): nonzero whenever lam strictly contains the optimizer set.
  Subspace n_affine = Subspace::span_of(sol.affine.E.transpose());
  Subspace s = sol.ker_gradient.intersect(n_affine);
  if (s.dim() == 0)
    throw numerical_error("theorem1_constants: ker_d ∩ N(A) is trivial");
  ExtremalResult l1 =
      min_l1_on_subspace(sol.channel.matrix().transpose(), s);
  out.l1_rec = {l1.value, l1.method, l1.certified};

  double sin2 = std::sin(out.beta) * std::sin(out.beta);
  out.gamma = 0.5 * sin2 * l1.value * l1.value;
  out.delta = sol.gradient.norm() /
              (static_cast<double>(sol.channel.inputs()) + out.gamma / sin2);
  if (!(out.gamma > 0.0) || !(out.delta > 0.0))
    throw numerical_error("theorem1_constants: nonpositive gamma or delta");
  return out;
}

Theorem2Constants theorem2_constants(const CapacitySolution& sol,
                                     const UnionOfCones& dlp,
                                     const FisherMatrix& sigma,
                                     const ACoefficient& a, bool a_finite) {
  if (nothing_outside_caid(dlp))
    throw std::invalid_argument(
        "theorem2_constants: constraint set equals the optimizer set");
  Theorem2Constants out;
  out.a_value = a.value;
  out.a_finite = a_finite;

  // Gamma_1: slowest linear decrease of the gradient term over D(lam|caid).
  out.gamma1 = kInf;
  Vec neg_grad = -sol.gradient;
  bool g1_cert = true;
  for (const auto& m : dlp.members) {
    if (m.cone.is_zero()) continue;
    ExtremalResult r = min_linear_on_cone(neg_grad, m.cone);
    g1_cert = g1_cert && r.certified;
    if (r.value < out.gamma1) {
      out.gamma1 = r.value;
      out.gamma1_arg = r.arg;
      out.gamma1_base = m.base;
    }
  }
  out.gamma1_rec = {out.gamma1, "extreme-ray-sweep", g1_cert};
  if (out.gamma1 > 1e-12) return out;  // linear branch; quadratic data absent
  out.gamma1 = 0.0;

  ConvexCone kerd_cone = ConvexCone::from_halfspaces(
      Mat::Zero(0, sol.gradient.size()), sol.gradient.transpose());

  // Per-face geometry: W_pbar = D_pbar ∩ ker_d, its pushover inside D_pbar,
  // and the face angle against ker_d.
  double grad_norm = sol.gradient.norm();
  Subspace kerd_sub = sol.ker_gradient;
  double gamma2 = kInf;
  bool g2_cert = true;
  for (const auto& m : dlp.members) {
    if (m.cone.is_zero()) continue;
    ConvexCone w_cone = m.cone.intersect(kerd_cone);
    FaceReport fr;
    fr.sig_outer = m.sig_outer;
    fr.sig_inner = m.sig_inner;
    fr.w_cone_zero = w_cone.is_zero();
    if (!fr.w_cone_zero) {
      ExtremalResult r = extremal_quadratic_on_cone(sigma.m, w_cone, false);
      g2_cert = g2_cert && r.certified;
      if (0.5 * r.value < gamma2) {
        gamma2 = 0.5 * r.value;
        out.gamma2_arg = r.arg;
        out.gamma2_base = m.base;
      }
    }
    UnionOfCones nested = pushover_union_cones(m.cone, w_cone);
    fr.phi = M_PI / 2.0;
    for (const auto& nm : nested.members) {
      if (nm.cone.is_zero()) continue;
      fr.phi = std::min(fr.phi, angle_cone_subspace(nm.cone, kerd_sub, true));
    }
    out.per_face.push_back(std::move(fr));
  }
  if (!(gamma2 < kInf))
    throw numerical_error(
        "theorem2_constants: gamma1 = 0 but D(lam|caid) ∩ ker_d is trivial");
  out.gamma2_rec = {gamma2, "face-eigen+pga", g2_cert};
  if (!(gamma2 > 0.0))
    throw numerical_error("theorem2_constants: gamma2 is not positive");

  if (!a_finite) return out;  // quadratic constants withheld

  out.gamma2 = gamma2;
  double delta = kInf;
  for (auto& fr : out.per_face) {
    double denom = fr.w_cone_zero ? gamma2 : sigma.trace() + gamma2;
    fr.delta_face = std::sin(fr.phi) / denom * grad_norm;
    delta = std::min(delta, fr.delta_face);
  }
  out.delta = delta;
  if (!(delta > 0.0))
    throw numerical_error("theorem2_constants: delta is not positive");
  return out;
}

TaylorCheck kld_taylor_check(const Channel& w, const Vec& q,
                             const FisherMatrix& sigma, double a, const Vec& p,
                             const Vec& pbar) {
  Vec q_pbar = w.matrix().transpose() * pbar;
  if ((q_pbar - q).lpNorm<1>() > 1e-9)
    throw std::invalid_argument("kld_taylor_check: pbar does not induce q");
  TaylorCheck t;
  Vec qp = w.matrix().transpose() * p;
  Vec d = p - pbar;
  t.lhs = std::abs(kl_divergence(qp, q) - 0.5 * sigma.seminorm_sq(d));
  t.envelope = 0.5 * a * a * a * std::pow(d.norm(), 3.0);
  if (t.lhs > t.envelope + 1e-12)
    throw numerical_error("kld_taylor_check: cubic envelope violated");
  return t;
}

}  // namespace caidgeo
