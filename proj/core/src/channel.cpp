#include "caidgeo/channel.hpp"

#include <cmath>

namespace caidgeo {

Distribution::Distribution(Vec weights) : w_(std::move(weights)) {
  if (w_.size() < 1) throw dimension_error("Distribution: empty alphabet");
  for (Index i = 0; i < w_.size(); ++i) {
    if (!(w_[i] >= 0.0) || !std::isfinite(w_[i]))
      throw std::invalid_argument("Distribution: entry " + std::to_string(i) +
                                  " is negative or non-finite");
  }
  double s = w_.sum();
  if (std::abs(s - 1.0) > tol::kDistributionSum)
    throw std::invalid_argument("Distribution: entries sum to " +
                                std::to_string(s) + ", not 1");
}

Distribution Distribution::uniform(Index n) {
  return Distribution(Vec::Constant(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::point_mass(Index n, Index x) {
  Vec w = Vec::Zero(n);
  w[x] = 1.0;
  return Distribution(std::move(w));
}

Channel::Channel(Mat matrix, std::vector<std::string> input_labels,
                 std::vector<std::string> output_labels)
    : m_(std::move(matrix)),
      in_labels_(std::move(input_labels)),
      out_labels_(std::move(output_labels)) {
  if (m_.rows() < 1 || m_.cols() < 1)
    throw dimension_error("Channel: needs at least one input and one output");
  for (Index x = 0; x < m_.rows(); ++x)
    Distribution{m_.row(x).transpose()};  // validates each row
  if (!in_labels_.empty() && static_cast<Index>(in_labels_.size()) != m_.rows())
    throw dimension_error("Channel: input label count mismatch");
  if (!out_labels_.empty() &&
      static_cast<Index>(out_labels_.size()) != m_.cols())
    throw dimension_error("Channel: output label count mismatch");
}

Channel Channel::restricted(const std::vector<int>& input_rows,
                            const std::vector<int>& output_cols) const {
  Mat r(static_cast<Index>(input_rows.size()),
        static_cast<Index>(output_cols.size()));
  for (std::size_t i = 0; i < input_rows.size(); ++i)
    for (std::size_t j = 0; j < output_cols.size(); ++j)
      r(static_cast<Index>(i), static_cast<Index>(j)) =
          m_(input_rows[i], output_cols[j]);
  std::vector<std::string> il, ol;
  if (!in_labels_.empty())
    for (int i : input_rows) il.push_back(in_labels_[i]);
  if (!out_labels_.empty())
    for (int j : output_cols) ol.push_back(out_labels_[j]);
  return Channel(std::move(r), std::move(il), std::move(ol));
}

}  // namespace caidgeo
