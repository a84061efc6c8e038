#pragma once

#include <functional>
#include <vector>

#include "caidgeo/channel.hpp"
#include "caidgeo/divergence.hpp"
#include "caidgeo/polyhedron.hpp"
#include "caidgeo/subspace.hpp"

namespace caidgeo {

/// ker(W) = {v : sum_x v(x) W(x) = 0}; every member sums to zero.
Subspace channel_kernel(const Channel& w);

/// ker_d = {v : v^T grad = 0}. A zero gradient yields the full space.
Subspace gradient_kernel(const Vec& grad);

/// What the concave maximizer needs from a channel: the divergence vector
/// doubles as the gradient of I up to an additive constant that cancels over
/// zero-sum directions.
class ChannelModel {
 public:
  virtual ~ChannelModel() = default;
  virtual Index inputs() const = 0;
  virtual Vec divergence_vector(const Vec& p) const = 0;  // D(W(x) || q_p)
  virtual double info(const Vec& p) const = 0;
  virtual Mat hessian(const Vec& p) const = 0;  // of info; negative semi-definite
};

class ClassicalChannelModel final : public ChannelModel {
 public:
  explicit ClassicalChannelModel(const Channel& w) : w_(&w) {}
  Index inputs() const override { return w_->inputs(); }
  Vec divergence_vector(const Vec& p) const override;
  double info(const Vec& p) const override;
  Mat hessian(const Vec& p) const override;

 private:
  const Channel* w_;
};

struct SolverOptions {
  double tol = 1e-10;   // duality-gap target
  int max_iter = 200000;
  bool polish = true;   // Newton refinement on the identified face
};

struct SolverOutput {
  Vec maximizer;
  double value = 0.0;
  double gap = kInf;  // Frank-Wolfe certificate: max_s grad^T (s - x)
  int iterations = 0;
  bool converged = false;
};

/// Maximizes I over the polytope by conditional gradient with away steps and
/// exact line search (bisection on the directional derivative), then polishes
/// with equality-constrained Newton steps on the active face. The returned
/// gap is always the honest Frank-Wolfe certificate over all vertices.
SolverOutput maximize_info(const ChannelModel& model, const Polyhedron& lam,
                           const SolverOptions& opts = {});

/// Everything downstream consumes: all geometry is expressed on the support
/// coordinates X_Lambda, with index maps back to the original alphabets.
struct CapacitySolution {
  double capacity = 0.0;
  double duality_gap = kInf;
  int iterations = 0;

  std::vector<int> support;           // X_Lambda, original input indices
  std::vector<int> retained_outputs;  // outputs with positive center mass

  Channel channel;     // restricted to support x retained outputs
  Polyhedron lam;      // constraint set on support coordinates
  Vec maximizer;       // a capacity achiever (support coordinates)
  Vec center;          // q_Lambda over retained outputs
  Vec gradient;        // D(W(x) || q_Lambda), support coordinates

  AffineSubspace affine;    // reduced A_Lambda equality system
  Polyhedron caid;          // Pi_Lambda = lam ∩ affine
  bool caid_exact = true;   // false: rank trouble, caid is the singleton {maximizer}

  Subspace ker_channel;     // ker(W)
  Subspace ker_gradient;    // ker_d
  Subspace tangent_affine;  // T(A_Lambda) = ker_d ∩ ker(W)

  double saddle_margin = 0.0;  // max over vertices of (v - pbar)^T grad
};

/// {x : exists P in lam with P(x) > 0}, by maximizing each coordinate over
/// the polytope (attained at a vertex).
std::vector<int> support_set(const Channel& w, const Polyhedron& lam);

CapacitySolution solve_capacity(const Channel& w, const Polyhedron& lam,
                                double tol = 1e-10);

/// Shared assembly of the optimizer-set geometry: rank-reduces the stacked
/// system [gradient^T; output_rows] against [capacity; output_rhs] into the
/// affine subspace, intersects it with lam into the caid polytope, and
/// derives the kernels. `lam`, `maximizer`, `capacity`, and `gradient` must
/// already be filled; `info_of` evaluates the objective for validation.
/// The output map is any linear realization of v -> (output of v): the
/// transition matrix transpose classically, vectorized operators otherwise.
void finish_solution_geometry(CapacitySolution& sol, const Mat& output_rows,
                              const Vec& output_rhs,
                              const std::function<double(const Vec&)>& info_of);

/// Restriction of a constraint polytope to the given coordinates (the
/// dropped ones carry no mass anywhere in the set).
Polyhedron restrict_polytope_columns(const Polyhedron& lam,
                                     const std::vector<int>& keep);

}  // namespace caidgeo
