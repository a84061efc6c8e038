#include "caidgeo/quantum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "caidgeo/cone_optim.hpp"

namespace caidgeo {

namespace {

bool close_eig(double u, double v) {
  return std::abs(u - v) < 1e-12 * std::max({std::abs(u), std::abs(v), 1e-300});
}

// Resolvent kernels in the eigenbasis of sigma: integrals of
// 1/prod(lambda_i + s) over s >= 0, with limit forms at coinciding
// eigenvalues.
double k2(double a, double b) {
  if (close_eig(a, b)) return 2.0 / (a + b);
  return (std::log(a) - std::log(b)) / (a - b);
}

// int_0^inf ds / ((m+s)^2 (c+s)) for c away from m.
double k3_pair(double m, double c) {
  double d = c - m;
  return 1.0 / (m * d) + (std::log(m) - std::log(c)) / (d * d);
}

double k3(double a, double b, double c) {
  double v[3] = {a, b, c};
  std::sort(v, v + 3);
  if (close_eig(v[0], v[2])) {
    double m = (v[0] + v[1] + v[2]) / 3.0;
    return 1.0 / (2.0 * m * m);
  }
  if (close_eig(v[0], v[1])) return k3_pair(0.5 * (v[0] + v[1]), v[2]);
  if (close_eig(v[1], v[2])) return k3_pair(0.5 * (v[1] + v[2]), v[0]);
  return -(std::log(v[0]) / ((v[1] - v[0]) * (v[2] - v[0])) +
           std::log(v[1]) / ((v[0] - v[1]) * (v[2] - v[1])) +
           std::log(v[2]) / ((v[0] - v[2]) * (v[1] - v[2])));
}

// Adaptive composite Gauss-Legendre of f over [0, inf) through s = t/(1-t).
double integrate_halfline(const std::function<double(double)>& f, double tol) {
  static const double nodes[8] = {-0.9602898564975363, -0.7966664774136267,
                                  -0.5255324099163290, -0.1834346424956498,
                                  0.1834346424956498,  0.5255324099163290,
                                  0.7966664774136267,  0.9602898564975363};
  static const double weights[8] = {0.1012285362903763, 0.2223810344533745,
                                    0.3137066458778873, 0.3626837833783620,
                                    0.3626837833783620, 0.3137066458778873,
                                    0.2223810344533745, 0.1012285362903763};
  auto g = [&](double t) {
    double omt = 1.0 - t;
    return f(t / omt) / (omt * omt);
  };
  auto panel = [&](double lo, double hi) {
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo), acc = 0.0;
    for (int i = 0; i < 8; ++i) acc += weights[i] * g(mid + half * nodes[i]);
    return acc * half;
  };
  int parts = 8;
  double prev = kInf, cur = 0.0;
  for (int round = 0; round < 9; ++round, parts *= 2) {
    cur = 0.0;
    for (int i = 0; i < parts; ++i)
      cur += panel(static_cast<double>(i) / parts,
                   static_cast<double>(i + 1) / parts);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) break;
    prev = cur;
  }
  return cur;
}

CMat compress(const CMat& m, const CMat& isometry) {
  return isometry.adjoint() * m * isometry;
}

// Isometry onto the support of sigma; identity-width when positive definite.
CMat support_isometry(const SpectralForm& s, double tolerance = 1e-12) {
  Index r = 0;
  for (Index i = 0; i < s.eigenvalues.size(); ++i)
    if (s.eigenvalues[i] > tolerance) ++r;
  return s.eigenvectors.leftCols(r);
}

}  // namespace

SpectralForm spectral(const CMat& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian);
  if (es.info() != Eigen::Success)
    throw numerical_error("spectral: eigendecomposition failed");
  SpectralForm f;
  const Index d = hermitian.rows();
  f.eigenvalues = Vec(d);
  f.eigenvectors = CMat(d, d);
  for (Index i = 0; i < d; ++i) {  // descending order
    f.eigenvalues[i] = es.eigenvalues()[d - 1 - i];
    f.eigenvectors.col(i) = es.eigenvectors().col(d - 1 - i);
  }
  CMat recon = f.eigenvectors * f.eigenvalues.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
               f.eigenvectors.adjoint();
  if ((recon - hermitian).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, hermitian.cwiseAbs().maxCoeff()))
    throw numerical_error("spectral: reconstruction residual too large");
  return f;
}

CMat SpectralForm::apply(const std::function<double(double)>& fn) const {
  Vec mapped(eigenvalues.size());
  for (Index i = 0; i < eigenvalues.size(); ++i) mapped[i] = fn(eigenvalues[i]);
  return eigenvectors * mapped.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
         eigenvectors.adjoint();
}

DensityOperator::DensityOperator(CMat matrix) : m_(std::move(matrix)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw dimension_error("DensityOperator: matrix must be square");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m_.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("DensityOperator: not Hermitian");
  m_ = 0.5 * (m_ + m_.adjoint().eval());
  if (std::abs(m_.trace().real() - 1.0) > 1e-12 || std::abs(m_.trace().imag()) > 1e-12)
    throw std::invalid_argument("DensityOperator: trace is not one");
  Eigen::SelfAdjointEigenSolver<CMat> es(m_);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("DensityOperator: negative eigenvalue");
}

DensityOperator DensityOperator::pure(const CVec& state) {
  CVec psi = state / state.norm();
  return DensityOperator(psi * psi.adjoint());
}

DensityOperator DensityOperator::diagonal(const Vec& probabilities) {
  return DensityOperator(
      probabilities.asDiagonal().toDenseMatrix().cast<std::complex<double>>());
}

CQChannel::CQChannel(std::vector<DensityOperator> outputs) : outs_(std::move(outputs)) {
  if (outs_.empty()) throw dimension_error("CQChannel: needs at least one input");
  for (const auto& o : outs_)
    if (o.dim() != outs_[0].dim())
      throw dimension_error("CQChannel: outputs on different spaces");
}

CMat CQChannel::mix(const Vec& p) const {
  if (p.size() != inputs()) throw dimension_error("CQChannel::mix: size mismatch");
  CMat m = CMat::Zero(dim(), dim());
  for (Index x = 0; x < inputs(); ++x) m += p[x] * outs_[x].matrix();
  return m;
}

CQChannel CQChannel::restrict_support() const {
  CMat sum = mix(Vec::Constant(inputs(), 1.0 / static_cast<double>(inputs())));
  SpectralForm s = spectral(sum);
  CMat v = support_isometry(s);
  if (v.cols() == dim()) return *this;
  std::vector<DensityOperator> outs;
  for (const auto& o : outs_) outs.emplace_back(compress(o.matrix(), v));
  return CQChannel(std::move(outs));
}

std::optional<Channel> CQChannel::commuting_reduction(double tolerance) const {
  // Simultaneous diagonalization by refining eigenspaces operator by
  // operator; fails fast on the first surviving off-diagonal block.
  const Index d = dim();
  CMat basis = CMat::Identity(d, d);
  std::vector<std::pair<Index, Index>> blocks{{0, d}};
  auto refine = [&](const CMat& op) {
    std::vector<std::pair<Index, Index>> next;
    for (auto [lo, hi] : blocks) {
      CMat sub = (basis.middleCols(lo, hi - lo).adjoint() * op *
                  basis.middleCols(lo, hi - lo));
      SpectralForm s = spectral(sub);
      basis.middleCols(lo, hi - lo) = basis.middleCols(lo, hi - lo) * s.eigenvectors;
      Index start = lo;
      for (Index i = 1; i <= s.eigenvalues.size(); ++i) {
        if (i == s.eigenvalues.size() ||
            std::abs(s.eigenvalues[i] - s.eigenvalues[i - 1]) > 1e-10) {
          next.emplace_back(start, lo + i);
          start = lo + i;
        }
      }
    }
    blocks = std::move(next);
  };
  for (const auto& o : outs_) refine(o.matrix());
  Mat classical(inputs(), d);
  for (Index x = 0; x < inputs(); ++x) {
    CMat rotated = basis.adjoint() * outs_[x].matrix() * basis;
    double off = 0.0;
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        if (i != j) off = std::max(off, std::abs(rotated(i, j)));
    if (off > tolerance) return std::nullopt;
    for (Index y = 0; y < d; ++y)
      classical(x, y) = std::max(0.0, rotated(y, y).real());
    classical.row(x) /= classical.row(x).sum();
  }
  return Channel(std::move(classical));
}

double q_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim())
    throw dimension_error("q_relative_entropy: dimension mismatch");
  SpectralForm ss = spectral(sigma.matrix());
  CMat v = support_isometry(ss);
  // Support check: mass of rho outside supp(sigma).
  CMat full = CMat::Identity(rho.dim(), rho.dim());
  CMat pnull = full - v * v.adjoint();
  if ((pnull * rho.matrix() * pnull).trace().real() > 1e-12) return kInf;
  CMat rho_c = compress(rho.matrix(), v);
  CMat sig_c = compress(sigma.matrix(), v);
  SpectralForm rs = spectral(rho_c);
  double h_rho = 0.0;
  for (Index i = 0; i < rs.eigenvalues.size(); ++i) {
    double a = std::max(rs.eigenvalues[i], 0.0);
    if (a > 0.0) h_rho += a * std::log(a);
  }
  SpectralForm sc = spectral(sig_c);
  CMat log_sigma = sc.apply([](double t) { return std::log(std::max(t, 1e-300)); });
  return h_rho - (rho_c * log_sigma).trace().real();
}

double trace_norm(const CMat& t) {
  SpectralForm s = spectral(t);
  return s.eigenvalues.cwiseAbs().sum();
}

namespace {

// Shared setup for resolvent integrals: compress to supp(sigma), transform
// the difference into sigma's eigenbasis. Returns false when absolute
// continuity fails.
struct ResolventFrame {
  Vec lambda;   // eigenvalues of sigma on its support
  CMat delta;   // rho - sigma in that eigenbasis
  bool finite = false;
};

ResolventFrame resolvent_frame(const DensityOperator& rho,
                               const DensityOperator& sigma) {
  ResolventFrame fr;
  SpectralForm ss = spectral(sigma.matrix());
  CMat v = support_isometry(ss);
  CMat full = CMat::Identity(rho.dim(), rho.dim());
  CMat pnull = full - v * v.adjoint();
  if ((pnull * rho.matrix() * pnull).trace().real() > 1e-12) return fr;
  CMat sig_c = compress(sigma.matrix(), v);
  CMat rho_c = compress(rho.matrix(), v);
  SpectralForm sc = spectral(sig_c);
  fr.lambda = sc.eigenvalues;
  fr.delta = sc.eigenvectors.adjoint() * (rho_c - sig_c) * sc.eigenvectors;
  fr.finite = true;
  return fr;
}

double chi2_from_frame(const ResolventFrame& fr) {
  double acc = 0.0;
  const Index r = fr.lambda.size();
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < r; ++j)
      acc += k2(fr.lambda[i], fr.lambda[j]) * std::norm(fr.delta(i, j));
  return acc;
}

double chi3_signed_from_frame(const ResolventFrame& fr) {
  const Index r = fr.lambda.size();
  std::complex<double> acc = 0.0;
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < r; ++j)
      for (Index l = 0; l < r; ++l)
        acc += fr.delta(i, j) * fr.delta(j, l) * fr.delta(l, i) *
               k3(fr.lambda[i], fr.lambda[j], fr.lambda[l]);
  return acc.real();
}

double chi3_quadrature_from_frame(const ResolventFrame& fr, double tol) {
  return integrate_halfline(
      [&](double s) {
        Vec scale = (fr.lambda.array() + s).cwiseSqrt().cwiseInverse();
        CMat q = scale.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
                 fr.delta *
                 scale.asDiagonal().toDenseMatrix().cast<std::complex<double>>();
        SpectralForm sq = spectral(q);
        return sq.eigenvalues.array().abs().pow(3).sum();
      },
      tol);
}

}  // namespace

double q_chi_alpha(const DensityOperator& rho, const DensityOperator& sigma,
                   int alpha) {
  if (alpha != 2 && alpha != 3)
    throw std::invalid_argument("q_chi_alpha: alpha must be 2 or 3");
  ResolventFrame fr = resolvent_frame(rho, sigma);
  if (!fr.finite) return kInf;
  if (alpha == 2) return chi2_from_frame(fr);
  // alpha = 3: the signed triple kernel equals the absolute-value integrand
  // for semi-definite differences; otherwise fall back to quadrature.
  SpectralForm ds = spectral(fr.delta);
  double lo = ds.eigenvalues.minCoeff(), hi = ds.eigenvalues.maxCoeff();
  if (lo >= -1e-13) return 2.0 * chi3_signed_from_frame(fr);
  if (hi <= 1e-13) return -2.0 * chi3_signed_from_frame(fr);
  return 2.0 * chi3_quadrature_from_frame(fr, 1e-11);
}

double q_chi_alpha_quadrature(const DensityOperator& rho,
                              const DensityOperator& sigma, int alpha) {
  ResolventFrame fr = resolvent_frame(rho, sigma);
  if (!fr.finite) return kInf;
  if (alpha == 2)
    return integrate_halfline(
        [&](double s) {
          Vec scale = (fr.lambda.array() + s).inverse();
          double acc = 0.0;
          for (Index i = 0; i < fr.lambda.size(); ++i)
            for (Index j = 0; j < fr.lambda.size(); ++j)
              acc += scale[i] * scale[j] * std::norm(fr.delta(i, j));
          return acc;
        },
        1e-11);
  return 2.0 * chi3_quadrature_from_frame(fr, 1e-11);
}

double bkm_inner(const CMat& rho, const CMat& omega, const DensityOperator& sigma) {
  SpectralForm sc = spectral(sigma.matrix());
  if (sc.eigenvalues.minCoeff() <= 1e-12)
    throw std::invalid_argument("bkm_inner: sigma must be positive definite");
  CMat rt = sc.eigenvectors.adjoint() * rho * sc.eigenvectors;
  CMat ot = sc.eigenvectors.adjoint() * omega * sc.eigenvectors;
  std::complex<double> acc = 0.0;
  for (Index i = 0; i < sc.eigenvalues.size(); ++i)
    for (Index j = 0; j < sc.eigenvalues.size(); ++j)
      acc += k2(sc.eigenvalues[i], sc.eigenvalues[j]) * std::conj(rt(i, j)) * ot(i, j);
  return acc.real();
}

double bkm_inner_quadrature(const CMat& rho, const CMat& omega,
                            const DensityOperator& sigma) {
  SpectralForm sc = spectral(sigma.matrix());
  CMat rt = sc.eigenvectors.adjoint() * rho * sc.eigenvectors;
  CMat ot = sc.eigenvectors.adjoint() * omega * sc.eigenvectors;
  return integrate_halfline(
      [&](double s) {
        Vec scale = (sc.eigenvalues.array() + s).inverse();
        std::complex<double> acc = 0.0;
        for (Index i = 0; i < sc.eigenvalues.size(); ++i)
          for (Index j = 0; j < sc.eigenvalues.size(); ++j)
            acc += scale[i] * scale[j] * std::conj(rt(i, j)) * ot(i, j);
        return acc.real();
      },
      1e-11);
}

FisherMatrix q_fisher_matrix(const CQChannel& w, const DensityOperator& center) {
  SpectralForm sc = spectral(center.matrix());
  if (sc.eigenvalues.minCoeff() <= 1e-12)
    throw std::invalid_argument(
        "q_fisher_matrix: center singular after support restriction");
  const Index n = w.inputs();
  std::vector<CMat> centered(n);
  for (Index x = 0; x < n; ++x)
    centered[x] = sc.eigenvectors.adjoint() *
                  (w.output(x).matrix() - center.matrix()) * sc.eigenvectors;
  FisherMatrix f;
  f.m = Mat(n, n);
  for (Index x = 0; x < n; ++x)
    for (Index y = x; y < n; ++y) {
      std::complex<double> acc = 0.0;
      for (Index i = 0; i < sc.eigenvalues.size(); ++i)
        for (Index j = 0; j < sc.eigenvalues.size(); ++j)
          acc += k2(sc.eigenvalues[i], sc.eigenvalues[j]) *
                 std::conj(centered[x](i, j)) * centered[y](i, j);
      f.m(x, y) = f.m(y, x) = acc.real();
    }
  return f;
}

namespace {

CMat channel_second_moment_root(const CQChannel& w) {
  CMat sum = CMat::Zero(w.dim(), w.dim());
  for (Index x = 0; x < w.inputs(); ++x)
    sum += w.output(x).matrix() * w.output(x).matrix();
  return spectral(sum).apply([](double t) { return std::sqrt(std::max(t, 0.0)); });
}

}  // namespace

double q_a_coefficient(const CQChannel& w, const DensityOperator& center) {
  SpectralForm sc = spectral(center.matrix());
  if (sc.eigenvalues.minCoeff() <= 1e-12)
    throw std::invalid_argument("q_a_coefficient: center singular");
  CMat m = sc.eigenvectors.adjoint() * channel_second_moment_root(w) * sc.eigenvectors;
  std::complex<double> acc = 0.0;
  for (Index i = 0; i < sc.eigenvalues.size(); ++i)
    for (Index j = 0; j < sc.eigenvalues.size(); ++j)
      for (Index l = 0; l < sc.eigenvalues.size(); ++l)
        acc += m(i, j) * m(j, l) * m(l, i) *
               k3(sc.eigenvalues[i], sc.eigenvalues[j], sc.eigenvalues[l]);
  // The factor 2 mirrors the chi^3 resolvent prefactor; it makes the
  // coefficient agree with the finite-alphabet formula on commuting
  // channels and keeps the cubic envelope conservative.
  return std::cbrt(2.0 * acc.real());
}

double q_a_coefficient_quadrature(const CQChannel& w,
                                  const DensityOperator& center) {
  SpectralForm sc = spectral(center.matrix());
  CMat m = sc.eigenvectors.adjoint() * channel_second_moment_root(w) * sc.eigenvectors;
  double third = integrate_halfline(
      [&](double s) {
        Vec scale = (sc.eigenvalues.array() + s).cwiseSqrt().cwiseInverse();
        CMat q = scale.asDiagonal().toDenseMatrix().cast<std::complex<double>>() * m *
                 scale.asDiagonal().toDenseMatrix().cast<std::complex<double>>();
        return (q * q * q).trace().real();
      },
      1e-11);
  return std::cbrt(2.0 * third);
}

QuantumChannelModel::QuantumChannelModel(const CQChannel& w) : w_(&w) {
  for (Index x = 0; x < w.inputs(); ++x) {
    SpectralForm s = spectral(w.output(x).matrix());
    double h = 0.0;
    for (Index i = 0; i < s.eigenvalues.size(); ++i) {
      double a = std::max(s.eigenvalues[i], 0.0);
      if (a > 0.0) h += a * std::log(a);
    }
    self_entropy_.push_back(h);
  }
}

Vec QuantumChannelModel::divergence_vector(const Vec& p) const {
  CMat sig = w_->mix(p);
  SpectralForm s = spectral(sig);
  const Index n = w_->inputs();
  Vec d(n);
  // tr[W(x) ln sigma] with +inf when W(x) has mass off supp(sigma).
  for (Index x = 0; x < n; ++x) {
    double v = self_entropy_[static_cast<std::size_t>(x)];
    const CMat& wx = w_->output(x).matrix();
    CMat rotated = s.eigenvectors.adjoint() * wx * s.eigenvectors;
    bool infinite = false;
    for (Index i = 0; i < s.eigenvalues.size(); ++i) {
      double diag = rotated(i, i).real();
      if (s.eigenvalues[i] <= 1e-14) {
        if (diag > 1e-12) infinite = true;
        continue;
      }
      v -= diag * std::log(s.eigenvalues[i]);
    }
    d[x] = infinite ? kInf : v;
  }
  return d;
}

double QuantumChannelModel::info(const Vec& p) const {
  Vec d = divergence_vector(p);
  double acc = 0.0;
  for (Index x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    if (d[x] == kInf) return kInf;
    acc += p[x] * d[x];
  }
  return acc;
}

Mat QuantumChannelModel::hessian(const Vec& p) const {
  // d^2 I / dp_x dp_x' = -<W(x), W(x')>_BKM at sigma_p.
  CMat sig = w_->mix(p);
  SpectralForm s = spectral(sig);
  const Index n = w_->inputs();
  std::vector<CMat> rotated(n);
  for (Index x = 0; x < n; ++x)
    rotated[x] = s.eigenvectors.adjoint() * w_->output(x).matrix() * s.eigenvectors;
  Mat h(n, n);
  for (Index x = 0; x < n; ++x)
    for (Index y = x; y < n; ++y) {
      std::complex<double> acc = 0.0;
      for (Index i = 0; i < s.eigenvalues.size(); ++i)
        for (Index j = 0; j < s.eigenvalues.size(); ++j) {
          double li = std::max(s.eigenvalues[i], 1e-14);
          double lj = std::max(s.eigenvalues[j], 1e-14);
          acc += k2(li, lj) * std::conj(rotated[x](i, j)) * rotated[y](i, j);
        }
      h(x, y) = h(y, x) = -acc.real();
    }
  return h;
}

QCapacitySolution q_solve_capacity(const CQChannel& w_in, const Polyhedron& lam,
                                   double tol) {
  if (lam.ambient() != w_in.inputs())
    throw dimension_error("q_solve_capacity: alphabet mismatch");
  CQChannel w = w_in.restrict_support();
  QCapacitySolution out;
  CapacitySolution& sol = out.geo;

  // Support of the constraint set, as in the classical path.
  const auto& verts = lam.vertices();
  if (verts.empty()) throw solver_error("q_solve_capacity: empty constraint set");
  for (Index x = 0; x < w.inputs(); ++x) {
    double mx = 0.0;
    for (const auto& v : verts) mx = std::max(mx, v[x]);
    if (mx > 1e-10) sol.support.push_back(static_cast<int>(x));
  }
  std::vector<DensityOperator> kept;
  for (int x : sol.support) kept.push_back(w.output(x));
  out.channel = CQChannel(std::move(kept)).restrict_support();
  sol.lam = restrict_polytope_columns(lam, sol.support);

  QuantumChannelModel model(out.channel);
  SolverOptions opts;
  opts.tol = tol;
  SolverOutput fw = maximize_info(model, sol.lam, opts);
  if (!fw.converged)
    throw solver_error("q_solve_capacity: duality gap " + std::to_string(fw.gap) +
                       " above tolerance after iteration cap");
  sol.capacity = fw.value;
  sol.duality_gap = fw.gap;
  sol.iterations = fw.iterations;
  sol.maximizer = fw.maximizer;
  out.center = DensityOperator(out.channel.mix(fw.maximizer));
  sol.gradient = model.divergence_vector(fw.maximizer);

  // Output map: stacked real and imaginary parts of the vectorized outputs.
  const Index n = out.channel.inputs();
  const Index d = out.channel.dim();
  Mat rows(2 * d * d, n);
  Vec rhs(2 * d * d);
  for (Index x = 0; x < n; ++x) {
    const CMat& wx = out.channel.output(x).matrix();
    Index r = 0;
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        rows(r++, x) = wx(i, j).real();
        rows(r++, x) = wx(i, j).imag();
      }
  }
  {
    Index r = 0;
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        rhs[r++] = out.center.matrix()(i, j).real();
        rhs[r++] = out.center.matrix()(i, j).imag();
      }
  }
  finish_solution_geometry(sol, rows, rhs,
                           [&](const Vec& p) { return model.info(p); });
  return out;
}

namespace {

Theorem1Constants q_theorem1_constants(const QCapacitySolution& qsol,
                                       const UnionOfCones& dlp) {
  const CapacitySolution& sol = qsol.geo;
  Theorem1Constants out;
  out.beta = angle_union_subspace(dlp, sol.tangent_affine, true);
  out.angle_rec = {out.beta, "face-eigen+pga", true};

  Subspace n_affine = Subspace::span_of(sol.affine.E.transpose());
  Subspace s = sol.ker_gradient.intersect(n_affine);
  if (s.dim() == 0)
    throw numerical_error("q_theorem1_constants: ker_d ∩ N(A) is trivial");

  double min_tv = 0.0;
  if (auto classical = qsol.channel.commuting_reduction()) {
    ExtremalResult l1 = min_l1_on_subspace(classical->matrix().transpose(), s);
    min_tv = l1.value;
    out.l1_rec = {l1.value, l1.method, l1.certified};
  } else {
    // Trace norm of sigma_v over the unit sphere of the subspace.
    ConvexCone sub = ConvexCone::from_generators(Mat::Zero(s.ambient(), 0), s.basis());
    auto f = [&](const Vec& v) { return trace_norm(qsol.channel.mix(v)); };
    auto sg = [&](const Vec& v) {
      SpectralForm sf = spectral(qsol.channel.mix(v));
      CMat sign_op = sf.apply([](double t) { return t >= 0 ? 1.0 : -1.0; });
      Vec g(v.size());
      for (Index x = 0; x < v.size(); ++x)
        g[x] = (qsol.channel.output(x).matrix() * sign_op).trace().real();
      return g;
    };
    ExtremalResult r = minimize_on_cone_sphere(f, sg, sub, {}, 24, 600);
    min_tv = r.value;
    out.l1_rec = {r.value, r.method, false};
  }

  double sin2 = std::sin(out.beta) * std::sin(out.beta);
  out.gamma = 0.5 * sin2 * min_tv * min_tv;
  out.delta = sol.gradient.norm() /
              (static_cast<double>(qsol.channel.inputs()) + out.gamma / sin2);
  if (!(out.gamma > 0.0) || !(out.delta > 0.0))
    throw numerical_error("q_theorem1_constants: nonpositive gamma or delta");
  return out;
}

}  // namespace

QPipeline q_capacity_and_theorems(const CQChannel& w, const Polyhedron& lam,
                                  double tol) {
  QPipeline p;
  p.sol = q_solve_capacity(w, lam, tol);
  p.dlp = pushover_union(p.sol.geo.lam, p.sol.geo.caid);
  p.sigma = q_fisher_matrix(p.sol.channel, p.sol.center);
  double a_val = q_a_coefficient(p.sol.channel, p.sol.center);
  p.a = ACoefficient{a_val, std::sqrt(std::max(p.sigma.trace(), 0.0)), kInf};
  p.t1 = q_theorem1_constants(p.sol, p.dlp);
  p.t2 = theorem2_constants(p.sol.geo, p.dlp, p.sigma, p.a);
  return p;
}

}  // namespace caidgeo

namespace caidgeo::corpus {

QuantumInstance cq_pure_pair(double theta) {
  CVec a(2), b(2);
  a << 1.0, 0.0;
  b << std::cos(theta), std::sin(theta);
  std::vector<DensityOperator> outs{DensityOperator::pure(a),
                                    DensityOperator::pure(b)};
  return {CQChannel(std::move(outs)), Polyhedron::simplex(2), "cq-pure-pair",
          "two pure states at overlap angle " + std::to_string(theta)};
}

QuantumInstance cq_commuting() {
  Mat rows(3, 3);
  rows << 0.7, 0.2, 0.1, 0.1, 0.6, 0.3, 0.25, 0.25, 0.5;
  std::vector<DensityOperator> outs;
  for (Index x = 0; x < 3; ++x)
    outs.push_back(DensityOperator::diagonal(rows.row(x).transpose()));
  return {CQChannel(std::move(outs)), Polyhedron::simplex(3), "cq-commuting",
          "diagonal qutrit channel"};
}

}  // namespace caidgeo::corpus
