#pragma once

#include <complex>
#include <vector>

#include "caidgeo/certify.hpp"
#include "caidgeo/constants.hpp"

namespace caidgeo {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Eigensystem of a Hermitian operator, eigenvalues sorted descending;
/// reconstruction is validated to 1e-10.
struct SpectralForm {
  Vec eigenvalues;
  CMat eigenvectors;
  CMat apply(const std::function<double(double)>& fn) const;
};

SpectralForm spectral(const CMat& hermitian);

/// Positive semi-definite unit-trace operator on a finite-dimensional space.
class DensityOperator {
 public:
  DensityOperator() = default;
  explicit DensityOperator(CMat matrix);
  static DensityOperator pure(const CVec& state);
  static DensityOperator diagonal(const Vec& probabilities);

  const CMat& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  CMat m_;
};

/// Classical-quantum channel: one density operator per input letter, all on
/// a shared output space.
class CQChannel {
 public:
  CQChannel() = default;
  explicit CQChannel(std::vector<DensityOperator> outputs);

  Index inputs() const { return static_cast<Index>(outs_.size()); }
  Index dim() const { return outs_.empty() ? 0 : outs_[0].dim(); }
  const DensityOperator& output(Index x) const { return outs_[x]; }
  CMat mix(const Vec& p) const;

  /// Compresses onto the span of the output supports, so the center is
  /// positive definite downstream.
  CQChannel restrict_support() const;

  /// Common-eigenbasis reduction when all outputs commute; empty optional
  /// otherwise.
  std::optional<Channel> commuting_reduction(double tolerance = 1e-11) const;

 private:
  std::vector<DensityOperator> outs_;
};

// -- divergences and inner products -----------------------------------------

double q_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

/// Trace norm of a Hermitian operator: the sum of absolute eigenvalues.
double trace_norm(const CMat& t);

/// Vajda alpha-divergence via the resolvent integral; alpha in {2, 3}.
/// alpha = 2 uses the two-eigenvalue kernel in closed form; alpha = 3 uses
/// the three-eigenvalue kernel when rho - sigma is semi-definite (the trace
/// of the absolute value then coincides with the signed trace) and adaptive
/// quadrature otherwise.
double q_chi_alpha(const DensityOperator& rho, const DensityOperator& sigma,
                   int alpha);

/// Quadrature evaluation of the same integral; the independent cross-check.
double q_chi_alpha_quadrature(const DensityOperator& rho,
                              const DensityOperator& sigma, int alpha);

/// <rho, omega>_sigma = int_0^inf tr[rho (sigma+s)^-1 omega (sigma+s)^-1] ds
/// for Hermitian rho, omega and positive definite sigma.
double bkm_inner(const CMat& rho, const CMat& omega, const DensityOperator& sigma);
double bkm_inner_quadrature(const CMat& rho, const CMat& omega,
                            const DensityOperator& sigma);

/// Gram matrix of the centered channel outputs under the BKM pairing.
FisherMatrix q_fisher_matrix(const CQChannel& w, const DensityOperator& center);

/// Cube root of int tr[(M/(sigma+s))^3] ds with M the operator square root
/// of sum_x W(x)^2.
double q_a_coefficient(const CQChannel& w, const DensityOperator& center);
double q_a_coefficient_quadrature(const CQChannel& w,
                                  const DensityOperator& center);

// -- capacity and theorems ---------------------------------------------------

class QuantumChannelModel final : public ChannelModel {
 public:
  explicit QuantumChannelModel(const CQChannel& w);
  Index inputs() const override { return w_->inputs(); }
  Vec divergence_vector(const Vec& p) const override;
  double info(const Vec& p) const override;
  Mat hessian(const Vec& p) const override;

 private:
  const CQChannel* w_;
  std::vector<double> self_entropy_;  // tr[W(x) ln W(x)]
};

/// Classical-side geometry identical to solve_capacity, with the output map
/// realized by vectorized operators; the center is a density operator.
struct QCapacitySolution {
  CapacitySolution geo;    // channel/center fields unused; geometry is filled
  CQChannel channel;       // restricted to support inputs, compressed space
  DensityOperator center;  // Shannon center sigma_Lambda
};

QCapacitySolution q_solve_capacity(const CQChannel& w, const Polyhedron& lam,
                                   double tol = 1e-10);

struct QPipeline {
  QCapacitySolution sol;
  UnionOfCones dlp;
  FisherMatrix sigma;
  ACoefficient a;
  Theorem1Constants t1;
  Theorem2Constants t2;
};

/// Full quantum pipeline: capacity, both theorems' constants, and the data
/// shared with the certifier. The theorem-1 trace-norm minimization runs on
/// the exact classical path when the outputs commute and by multi-start
/// projected subgradient otherwise.
QPipeline q_capacity_and_theorems(const CQChannel& w, const Polyhedron& lam,
                                  double tol = 1e-10);

}  // namespace caidgeo

namespace caidgeo::corpus {

struct QuantumInstance {
  CQChannel channel;
  Polyhedron lam;
  std::string name;
  std::string note;
};

/// Two pure states with overlap angle theta (pi/4 by default).
QuantumInstance cq_pure_pair(double theta = M_PI / 4.0);
/// Commuting qutrit channel carrying a fixed classical matrix on the
/// diagonal.
QuantumInstance cq_commuting();

}  // namespace caidgeo::corpus
