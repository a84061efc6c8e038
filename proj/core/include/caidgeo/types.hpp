#pragma once

#include <Eigen/Dense>
#include <limits>
#include <stdexcept>
#include <string>

namespace caidgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared tolerances. All inequality certification uses kCertSlack; breaches
// below kWarnSlack count as warnings, above as hard violations.
namespace tol {
inline constexpr double kDistributionSum = 1e-12;
inline constexpr double kActive = 1e-9;
inline constexpr double kRankRel = 1e-10;
inline constexpr double kKkt = 1e-10;
inline constexpr double kCertSlack = 1e-9;
inline constexpr double kWarnSlack = 1e-6;
inline constexpr double kOrthonormal = 1e-10;
}  // namespace tol

class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class enumeration_overflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_same_size(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size())
    throw dimension_error(std::string(what) + ": size mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
}

}  // namespace caidgeo
