#include "caidgeo/divergence.hpp"

#include <cmath>

namespace caidgeo {

double kl_divergence(const Vec& w, const Vec& q) {
  require_same_size(w, q, "kl_divergence");
  double d = 0.0;
  for (Index y = 0; y < w.size(); ++y) {
    if (w[y] == 0.0) continue;
    if (w[y] < 0.0)
      throw std::invalid_argument("kl_divergence: negative first argument");
    if (q[y] <= 0.0) return kInf;  // absolute continuity fails
    d += w[y] * std::log(w[y] / q[y]);
  }
  return d;
}

double total_variation(const Vec& mu) { return mu.lpNorm<1>(); }

double chi_alpha(const Vec& w, const Vec& q, double alpha) {
  require_same_size(w, q, "chi_alpha");
  if (!(alpha > 1.0)) throw std::invalid_argument("chi_alpha: alpha must be > 1");
  double d = 0.0;
  for (Index y = 0; y < w.size(); ++y) {
    if (q[y] <= 0.0) {
      if (w[y] != 0.0) return kInf;
      continue;  // 0 against 0 contributes nothing
    }
    d += q[y] * std::pow(std::abs(w[y] / q[y] - 1.0), alpha);
  }
  return d;
}

OutputMeasure output_distribution(const SignedVector& v, const Channel& w) {
  if (v.size() != w.inputs())
    throw dimension_error("output_distribution: input alphabet mismatch");
  return w.matrix().transpose() * v;
}

double conditional_kl(const Vec& p, const Channel& w, const Vec& q) {
  if (p.size() != w.inputs())
    throw dimension_error("conditional_kl: input alphabet mismatch");
  double s = 0.0;
  for (Index x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    double d = kl_divergence(w.row(x), q);
    if (d == kInf) return kInf;
    s += p[x] * d;
  }
  return s;
}

double mutual_information(const Distribution& p, const Channel& w) {
  Vec q = output_distribution(p.weights(), w);
  return conditional_kl(p.weights(), w, q);
}

TopsoeExpansion topsoe_expansion(const Distribution& p,
                                 const Distribution& pbar, double c,
                                 const Distribution& q, const Channel& w) {
  Vec grad(w.inputs());
  for (Index x = 0; x < w.inputs(); ++x)
    grad[x] = kl_divergence(w.row(x), q.weights());
  TopsoeExpansion out;
  out.linear_term = (p.weights() - pbar.weights()).dot(grad);
  out.kl_term =
      kl_divergence(output_distribution(p.weights(), w), q.weights());
  double info = mutual_information(p, w);
  double residual = std::abs(info - (c + out.linear_term - out.kl_term));
  if (residual > 1e-8)
    throw numerical_error("topsoe_expansion: inconsistent inputs, residual " +
                          std::to_string(residual));
  return out;
}

}  // namespace caidgeo
