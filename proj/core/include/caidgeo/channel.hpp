#pragma once

#include <string>
#include <vector>

#include "caidgeo/types.hpp"

namespace caidgeo {

// Vector over the input alphabet; no sign constraint.
using SignedVector = Vec;
// Finite signed measure over the output alphabet.
using OutputMeasure = Vec;

/// Probability mass function over a finite alphabet. Construction validates
/// nonnegativity and normalization within tol::kDistributionSum; inputs
/// outside tolerance are rejected rather than renormalized.
class Distribution {
 public:
  explicit Distribution(Vec weights);

  static Distribution uniform(Index n);
  static Distribution point_mass(Index n, Index x);

  const Vec& weights() const { return w_; }
  Index size() const { return w_.size(); }
  double operator[](Index i) const { return w_[i]; }
  operator const Vec&() const { return w_; }

 private:
  Vec w_;
};

/// Row-stochastic channel matrix; row x is the output distribution W(x).
class Channel {
 public:
  Channel() = default;  // placeholder; not usable until assigned
  explicit Channel(Mat matrix, std::vector<std::string> input_labels = {},
                   std::vector<std::string> output_labels = {});

  Index inputs() const { return m_.rows(); }
  Index outputs() const { return m_.cols(); }
  const Mat& matrix() const { return m_; }
  Vec row(Index x) const { return m_.row(x).transpose(); }

  const std::vector<std::string>& input_labels() const { return in_labels_; }
  const std::vector<std::string>& output_labels() const { return out_labels_; }

  /// Keeps the given input rows and the output columns with positive mass
  /// under `reference_output`; used to work on support coordinates only.
  Channel restricted(const std::vector<int>& input_rows,
                     const std::vector<int>& output_cols) const;

 private:
  Mat m_;
  std::vector<std::string> in_labels_, out_labels_;
};

}  // namespace caidgeo
