#pragma once

#include "caidgeo/channel.hpp"
#include "caidgeo/types.hpp"

namespace caidgeo {

// All divergences are in nats. Conventions: 0·ln 0 := 0, 0·ln(0/0) := 0; any
// w(y) > 0 against q(y) = 0 yields +inf (a value, not an error).

/// Kullback-Leibler divergence D(w || q). `w` must be entrywise nonnegative;
/// `q` is a probability vector.
double kl_divergence(const Vec& w, const Vec& q);

/// Total variation (l1) norm of a finite signed measure.
double total_variation(const Vec& mu);

/// Vajda chi^alpha divergence: sum_y q(y) |w(y)/q(y) - 1|^alpha, alpha > 1.
double chi_alpha(const Vec& w, const Vec& q, double alpha);

/// Output measure induced by a signed input vector: q_v = sum_x v(x) W(x).
OutputMeasure output_distribution(const SignedVector& v, const Channel& w);

/// I(p; W) = sum_x p(x) D(W(x) || q_p).
double mutual_information(const Distribution& p, const Channel& w);

/// Conditional divergence sum_x p(x) D(W(x) || q).
double conditional_kl(const Vec& p, const Channel& w, const Vec& q);

struct TopsoeExpansion {
  double linear_term;  // (p - pbar)^T D(W || q)
  double kl_term;      // D(q_p || q)
};

/// Splits I(p;W) = c + linear_term - kl_term around a capacity-achieving
/// pbar with center q and capacity c. Throws numerical_error if the
/// reconstruction residual exceeds 1e-8.
TopsoeExpansion topsoe_expansion(const Distribution& p,
                                 const Distribution& pbar, double c,
                                 const Distribution& q, const Channel& w);

}  // namespace caidgeo
