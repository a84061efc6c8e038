#include "caidgeo/corpus.hpp"

#include <cmath>

namespace caidgeo::corpus {

namespace {

double zeta_fn(double s, long terms = 2000000) {
  // Direct sum plus integral tail bound; plenty for s in {2, 3}.
  double acc = 0.0;
  for (long j = 1; j <= terms; ++j) acc += std::pow(static_cast<double>(j), -s);
  double t = static_cast<double>(terms);
  acc += std::pow(t, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(t, -s);
  return acc;
}

const double kZeta2 = zeta_fn(2.0);
const double kZeta3 = zeta_fn(3.0);

}  // namespace

ClassicalInstance identity(Index n) {
  return {Channel(Mat::Identity(n, n)), Polyhedron::simplex(n),
          "identity-" + std::to_string(n), "noiseless channel"};
}

ClassicalInstance bsc(double p) {
  Mat m(2, 2);
  m << 1 - p, p, p, 1 - p;
  return {Channel(std::move(m)), Polyhedron::simplex(2),
          "bsc-" + std::to_string(p), "binary symmetric channel"};
}

Vec example1_ball_center() {
  Vec u(3);
  u << 2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0;
  return u;
}

double example1_ball_radius() { return std::sqrt(6.0) / 12.0; }

Vec example1_ptau(double tau) {
  Vec p(3);
  p << 8.0 - 2.0 * std::cos(tau), 2.0 + std::cos(tau) + std::sqrt(3.0) * std::sin(tau),
      2.0 + std::cos(tau) - std::sqrt(3.0) * std::sin(tau);
  return p / 12.0;
}

Vec example1_qtau(double tau) {
  Vec q(2);
  q << (4.0 - std::cos(tau)) / 6.0, (2.0 + std::cos(tau)) / 6.0;
  return q;
}

double example1_distance(double tau) {
  return std::sqrt(6.0) / 6.0 * std::abs(std::sin(tau / 2.0));
}

double example1_info(double tau) {
  Vec q = example1_qtau(tau);
  double kl = q[0] * std::log(2.0 * q[0]) + q[1] * std::log(2.0 * q[1]);
  return std::log(2.0) - kl;
}

ClassicalInstance example1(int polygon_sides) {
  Mat w(3, 2);
  w << 1, 0, 0, 1, 0, 1;
  Vec center = example1_ball_center();
  double radius = example1_ball_radius();
  // In-plane orthonormal frame anchored so that theta = 0 is the optimizer.
  Vec pbar(3);
  pbar << 0.5, 0.25, 0.25;
  Vec u1 = (pbar - center).normalized();
  Vec u2(3);
  u2 << 0, 1, -1;
  u2 = (u2 - u1 * u1.dot(u2)).normalized();
  const int k = std::max(3, polygon_sides);
  Mat A(k, 3);
  Vec b(k);
  double apothem = radius * std::cos(M_PI / k);
  for (int j = 0; j < k; ++j) {
    double phi = (2.0 * j + 1.0) * M_PI / k;  // edge normals between vertices
    Vec a = std::cos(phi) * u1 + std::sin(phi) * u2;
    A.row(j) = a.transpose();
    b[j] = a.dot(center) + apothem;
  }
  Polyhedron lam = Polyhedron::simplex(3).with_inequalities(A, b);
  return {Channel(std::move(w)), std::move(lam),
          "example-1", "inscribed " + std::to_string(k) + "-gon surrogate"};
}

ClassicalInstance example2(int max_index) {
  const int K = std::max(2, max_index);
  const Index n = static_cast<Index>(2 * K + 1);
  Mat w(n, 2);
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  auto row_of = [](double letter) {
    Vec r(2);
    r << (1.0 + std::tanh(letter)) / 2.0, (1.0 - std::tanh(letter)) / 2.0;
    return r;
  };
  w.row(0) << 1.0, 0.0;
  labels[0] = "1";
  w.row(1) << 0.0, 1.0;
  labels[1] = "-1";
  w.row(2) = row_of(0.0).transpose();
  labels[2] = "0";
  Index idx = 3;
  for (int kk = 2; kk <= K; ++kk) {
    w.row(idx) = row_of(kk).transpose();
    labels[static_cast<std::size_t>(idx++)] = std::to_string(kk);
    w.row(idx) = row_of(-kk).transpose();
    labels[static_cast<std::size_t>(idx++)] = std::to_string(-kk);
  }
  // Letters beyond |x| ~ 11 are indistinguishable from the extremes at
  // double precision (tanh saturation), which would merge the optimizer set.
  return {Channel(std::move(w), std::move(labels)), Polyhedron::simplex(n),
          "example-2", "integer-input channel truncated at |x| <= " + std::to_string(K)};
}

double zeta_threshold() {
  // 1 + (2 zeta(3)/zeta(2))^2 exp(2 sum_j j^-2 ln j / zeta(2)).
  double s = 0.0;
  for (long j = 2; j < 4000000; ++j)
    s += std::log(static_cast<double>(j)) / (static_cast<double>(j) * j);
  double ratio = 2.0 * kZeta3 / kZeta2;
  return 1.0 + ratio * ratio * std::exp(2.0 * s / kZeta2);
}

ClassicalInstance zeta(int n, int output_truncation) {
  if (n < 2) throw std::invalid_argument("zeta corpus: n must be >= 2");
  const int T = std::max(2, output_truncation);
  const Index m = static_cast<Index>(n - 1 + T);
  Mat w = Mat::Zero(n, m);
  // Input 0: inverse-square tail over the negative letters.
  for (int j = 1; j <= T; ++j)
    w(0, n - 2 + j) = 1.0 / (static_cast<double>(j) * j) / kZeta2;
  // Inputs 1..n-1: half a point mass plus a shared inverse-cube tail.
  for (int x = 1; x < n; ++x) {
    w(x, x - 1) = 0.5;
    for (int j = 1; j <= T; ++j)
      w(x, n - 2 + j) = 0.5 / (static_cast<double>(j) * j * j) / kZeta3;
  }
  for (Index x = 0; x < w.rows(); ++x) w.row(x) /= w.row(x).sum();
  return {Channel(std::move(w)), Polyhedron::simplex(n), "zeta",
          "outputs truncated at " + std::to_string(T) + " tail letters"};
}

double appendix_b_epsilon() {
  const double target = std::sqrt(3.0) * std::cbrt(2.0) / 10.0;
  double lo = 0.0, hi = 1.0 / std::log(5.0);
  // eps * 5^-eps is increasing on (0, 1/ln 5); the bracket must straddle.
  if (!(0.0 < target && target < hi * std::pow(5.0, -hi)))
    throw numerical_error("appendix_b_epsilon: root not bracketed");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (mid * std::pow(5.0, -mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ClassicalInstance appendix_b() {
  const double eps = appendix_b_epsilon();
  Mat w = Mat::Zero(9, 8);
  for (int x = 0; x < 5; ++x) {
    w(x, 0) = w(x, 1) = w(x, 2) = eps / 3.0;
    w(x, 3 + x) = 1.0 - eps;
  }
  auto set_row = [&](int x, double a, double b, double c) {
    w(x, 0) = a;
    w(x, 1) = b;
    w(x, 2) = c;
  };
  set_row(5, 1.0 / 2, 1.0 / 3, 1.0 / 6);
  set_row(6, 1.0 / 6, 1.0 / 2, 1.0 / 3);
  set_row(7, 1.0 / 3, 1.0 / 6, 1.0 / 2);
  set_row(8, 1.0 / 3, 1.0 / 2, 1.0 / 6);
  return {Channel(std::move(w)), Polyhedron::simplex(9), "appendix-b",
          "9x8 counterexample channel"};
}

}  // namespace caidgeo::corpus
