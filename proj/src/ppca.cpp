#include "ppn/ppca.hpp"

#include <cmath>

#include "ppn/error.hpp"

namespace ppn {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

void validate_params(const PpcaParams& p) {
  if (p.loading.cols() < 1) throw DimensionError("ppca: latent dimension must be >= 1");
  if (p.loading.rows() != p.mean.size()) throw DimensionError("ppca: loading and mean dimensions differ");
  if (!(p.sigma2 > 0.0) || !std::isfinite(p.sigma2)) throw StateError("ppca: sigma2 must be positive");
  if (!p.loading.allFinite() || !p.mean.allFinite()) throw StateError("ppca: parameters must be finite");
}

// Log-likelihood from the sample covariance S of n centered rows.
double loglik_from_cov(const Matrix& S, double n, const Matrix& W, double sigma2) {
  const auto G = W.rows();
  const Matrix C = W * W.transpose() + sigma2 * Matrix::Identity(G, G);
  const Eigen::LLT<Matrix> llt(C);
  if (llt.info() != Eigen::Success) throw StateError("ppca: model covariance not positive definite");
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < G; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  const double trace = llt.solve(S).trace();
  return -0.5 * n * (static_cast<double>(G) * kLog2Pi + logdet + trace);
}

}  // namespace

Matrix PpcaParams::covariance() const {
  return loading * loading.transpose() + sigma2 * Matrix::Identity(loading.rows(), loading.rows());
}

PpcaFit ppca_em_fit(const Dataset& x, std::size_t latent_dims, double tol, std::size_t max_iters) {
  if (x.kind() != DataKind::continuous) throw DataError("ppca: data must be continuous");
  const Matrix& X = x.values();
  if (!X.allFinite()) throw DataError("ppca: data must be finite");
  const auto G = X.cols();
  const auto K = static_cast<Eigen::Index>(latent_dims);
  if (K < 1) throw DimensionError("ppca: latent dimension must be >= 1");
  if (K >= G) throw DimensionError("ppca: latent dimension must be smaller than the observed dimension");
  if (X.rows() <= K) throw DimensionError("ppca: need more rows than latent dimensions");

  const double n = static_cast<double>(X.rows());
  PpcaFit fit;
  fit.params.mean = X.colwise().mean().transpose();
  const Matrix Xc = X.rowwise() - fit.params.mean.transpose();
  const Matrix S = (Xc.transpose() * Xc) / n;

  // Deterministic start: S applied to a fixed pseudo-random matrix.
  VariateStream init(Seed(0x9E3779B97F4A7C15ULL).child("ppca-init"));
  Matrix W(G, K);
  for (Eigen::Index i = 0; i < G; ++i)
    for (Eigen::Index k = 0; k < K; ++k) W(i, k) = init.normal();
  // Orthonormal directions from S times a fixed matrix, scaled to the
  // average variance.
  const double avg_var = S.trace() / static_cast<double>(G);
  double sigma2 = std::max(avg_var, 1e-12);
  W = S * W;
  if (!W.allFinite() || W.norm() == 0.0) W = Matrix::Identity(G, K);
  W = Eigen::HouseholderQR<Matrix>(W).householderQ() * Matrix::Identity(G, K) * std::sqrt(sigma2);

  // Keeps the model covariance numerically positive definite on noiseless data.
  const double sigma2_floor = 1e-14 * std::max(S.trace() / static_cast<double>(G), 1e-300);
  double prev = loglik_from_cov(S, n, W, sigma2);
  for (std::size_t it = 0; it < max_iters; ++it) {
    const Matrix M = W.transpose() * W + sigma2 * Matrix::Identity(K, K);
    const Eigen::LDLT<Matrix> Minv(M);
    const Matrix SW = S * W;
    // E-step moments per row: <z z'> averages to Psi = sigma2 M^-1 + M^-1 W'SW M^-1.
    const Matrix MinvWtSW = Minv.solve(W.transpose() * SW);
    Matrix psi = sigma2 * Minv.solve(Matrix::Identity(K, K)) + Minv.solve(MinvWtSW.transpose());
    psi = 0.5 * (psi + psi.transpose());
    const Matrix SWMinv = Minv.solve(SW.transpose()).transpose();
    const Matrix W_star = psi.llt().solve(SWMinv.transpose()).transpose();
    sigma2 = std::max((S.trace() - (W_star.transpose() * SWMinv).trace()) / static_cast<double>(G), sigma2_floor);
    // Parameter expansion: z ~ N(0, Psi) in the M-step, folded back into W.
    const Eigen::LLT<Matrix> psi_llt(psi);
    W = W_star * Matrix(psi_llt.matrixL());

    const double ll = loglik_from_cov(S, n, W, sigma2);
    fit.log_likelihood_trace.push_back(ll);
    fit.iterations = it + 1;
    const bool small_change = std::abs(ll - prev) <= tol * std::max(1.0, std::abs(prev));
    prev = ll;
    if (small_change) {
      fit.converged = true;
      break;
    }
  }
  fit.params.loading = std::move(W);
  fit.params.sigma2 = sigma2;
  return fit;
}

double ppca_log_likelihood(const Matrix& x, const PpcaParams& params) {
  validate_params(params);
  if (x.cols() != params.loading.rows()) throw DimensionError("ppca: data dimension mismatch");
  const Matrix Xc = x.rowwise() - params.mean.transpose();
  const double n = static_cast<double>(x.rows());
  return loglik_from_cov((Xc.transpose() * Xc) / n, n, params.loading, params.sigma2);
}

Matrix ppca_sample_rows(const PpcaParams& params, std::size_t n_rep, VariateStream& stream) {
  validate_params(params);
  const auto G = params.loading.rows();
  const auto K = params.loading.cols();
  const double sd = std::sqrt(params.sigma2);
  Matrix out(static_cast<Eigen::Index>(n_rep), G);
  Vector z(K);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index k = 0; k < K; ++k) z(k) = stream.normal();
    const Vector mu = params.mean + params.loading * z;
    for (Eigen::Index g = 0; g < G; ++g) out(i, g) = mu(g) + sd * stream.normal();
  }
  return out;
}

std::vector<Dataset> ppca_predictive(const PpcaParams& params, std::size_t n_rep, std::size_t R, Seed seed) {
  validate_params(params);
  if (R < 1) throw ParameterError("ppca_predictive: R must be >= 1");
  if (n_rep < 1) throw ParameterError("ppca_predictive: n_rep must be >= 1");
  std::vector<Dataset> out;
  out.reserve(R);
  for (std::size_t r = 0; r < R; ++r) {
    VariateStream stream(seed.child(r));
    out.push_back(Dataset::continuous(ppca_sample_rows(params, n_rep, stream)));
  }
  return out;
}

Matrix ppca_reconstruct(const Matrix& x, const PpcaParams& params) {
  validate_params(params);
  if (x.cols() != params.loading.rows()) throw DimensionError("ppca: data dimension mismatch");
  const auto K = params.loading.cols();
  const Matrix& W = params.loading;
  const Matrix M = W.transpose() * W + params.sigma2 * Matrix::Identity(K, K);
  // Projection P = W M^{-1} W', applied to centered rows.
  const Matrix P = W * M.ldlt().solve(W.transpose());
  const Matrix Xc = x.rowwise() - params.mean.transpose();
  return (Xc * P.transpose()).rowwise() + params.mean.transpose();
}

double ppca_reconstruction_diagnostic(const Matrix& x, const PpcaParams& params) {
  return (x - ppca_reconstruct(x, params)).squaredNorm();
}

}  // namespace ppn
