#pragma once

#include <string>

#include "caidgeo/channel.hpp"
#include "caidgeo/polyhedron.hpp"

namespace caidgeo::corpus {

struct ClassicalInstance {
  Channel channel;
  Polyhedron lam;
  std::string name;
  std::string note;
};

ClassicalInstance identity(Index n);
ClassicalInstance bsc(double p);

/// Three-input Z-like channel whose constraint ball is replaced by an
/// inscribed regular polygon with one vertex pinned at the optimizer
/// [1/2, 1/4, 1/4]; the polygon keeps the constraint set polyhedral while
/// approaching the ball as the side count grows.
ClassicalInstance example1(int polygon_sides = 24);
/// Center and radius of the underlying constraint disc.
Vec example1_ball_center();
double example1_ball_radius();
/// Boundary curve of the disc: p_tau, its output distribution, its distance
/// to the optimizer, and the induced mutual information (closed forms).
Vec example1_ptau(double tau);
Vec example1_qtau(double tau);
double example1_distance(double tau);
double example1_info(double tau);

/// Integer-input two-output channel truncated to letters {-K..K}, ordered
/// [1, -1, 0, 2, -2, ...]; capacity ln 2 with the unique optimizer uniform
/// on {1, -1}.
ClassicalInstance example2(int max_index = 10);

/// Inverse-square / inverse-cube tail channel with n inputs, outputs
/// {1..n-1} followed by negatives -1..-T (rows renormalized after
/// truncation).
ClassicalInstance zeta(int n = 64, int output_truncation = 1000);
/// Smallest input count for which the tail input stays strictly below
/// capacity.
double zeta_threshold();

/// The 9x8 channel whose kernel direction is orthogonal to the (constant)
/// capacity gradient; refutes a linear decrease of the gradient term along
/// kernel projections.
ClassicalInstance appendix_b();
double appendix_b_epsilon();

}  // namespace caidgeo::corpus
