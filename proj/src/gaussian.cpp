#include "cvnet/gaussian.hpp"

#include <algorithm>
#include <string>

namespace cvnet {

namespace {

Real max_abs(const Matrix& m) {
  Real out = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out = std::max(out, Real(abs(m(i, j))));
  return out;
}

void require_modes(const GaussianState& state, std::size_t expected, const char* what) {
  if (state.n_modes() != expected)
    throw std::invalid_argument(std::string(what) + ": expected a " + std::to_string(expected) +
                                "-mode state, got " + std::to_string(state.n_modes()));
}

}  // namespace

SymplecticForm::SymplecticForm(std::size_t n_modes)
    : n_modes_(n_modes), omega_(Matrix::Zero(2 * n_modes, 2 * n_modes)) {
  for (std::size_t k = 0; k < n_modes; ++k) {
    omega_(2 * k, 2 * k + 1) = 1;
    omega_(2 * k + 1, 2 * k) = -1;
  }
}

bool satisfies_uncertainty(const Matrix& cm, const Real& nu, const Real& tol) {
  const Eigen::Index d = cm.rows();
  const Matrix b = nu * SymplecticForm(static_cast<std::size_t>(d / 2)).matrix();
  // Real embedding of the Hermitian matrix cm + i*b.
  Matrix h(2 * d, 2 * d);
  h.topLeftCorner(d, d) = cm;
  h.topRightCorner(d, d) = -b;
  h.bottomLeftCorner(d, d) = b;
  h.bottomRightCorner(d, d) = cm;
  h.diagonal().array() += tol;
  Eigen::LLT<Matrix> llt(h);
  return llt.info() == Eigen::Success;
}

GaussianState::GaussianState(Vector mean, Matrix cm)
    : n_modes_(static_cast<std::size_t>(cm.rows() / 2)), mean_(std::move(mean)), cm_(std::move(cm)) {
  if (cm_.rows() == 0 || cm_.rows() % 2 != 0 || cm_.rows() != cm_.cols())
    throw std::invalid_argument("covariance matrix must be square with even, nonzero dimension");
  if (mean_.size() != cm_.rows())
    throw std::invalid_argument("mean vector length does not match covariance dimension");
  for (Eigen::Index i = 0; i < cm_.rows(); ++i) {
    if (!is_finite(mean_(i))) throw std::invalid_argument("mean vector has non-finite entries");
    for (Eigen::Index j = 0; j < cm_.cols(); ++j)
      if (!is_finite(cm_(i, j))) throw std::invalid_argument("covariance has non-finite entries");
  }
  const Real scale = std::max(Real(1), max_abs(cm_));
  for (Eigen::Index i = 0; i < cm_.rows(); ++i)
    for (Eigen::Index j = i + 1; j < cm_.cols(); ++j)
      if (abs(cm_(i, j) - cm_(j, i)) > kSymmetryTol * scale)
        throw std::invalid_argument("covariance matrix is not symmetric");
  // Symmetrize so that downstream factorizations see an exactly symmetric matrix.
  cm_ = (cm_ + cm_.transpose()) / 2;
  if (!satisfies_uncertainty(cm_))
    throw std::invalid_argument("covariance violates the uncertainty relation cm + i/2 Omega >= 0");
}

GaussianState GaussianState::zero_mean(Matrix cm) {
  Vector mean = Vector::Zero(cm.rows());
  return GaussianState(std::move(mean), std::move(cm));
}

Matrix2 GaussianState::block(std::size_t a, std::size_t b) const {
  if (a >= n_modes_ || b >= n_modes_) throw std::out_of_range("mode index out of range");
  return cm_.block<2, 2>(2 * a, 2 * b);
}

Vector2 GaussianState::mode_mean(std::size_t a) const {
  if (a >= n_modes_) throw std::out_of_range("mode index out of range");
  return mean_.segment<2>(2 * a);
}

Vector2 quadratures_of(const Amplitude& a) {
  const Real root2 = sqrt2();
  return Vector2(root2 * a.re, root2 * a.im);
}

GaussianState make_initial_state(const Real& nbar) {
  if (!is_finite(nbar) || nbar < 0)
    throw std::domain_error("mean thermal occupation must be finite and non-negative");
  Matrix cm = Matrix::Identity(6, 6) / 2;
  cm(0, 0) = nbar + Real(0.5);
  cm(1, 1) = nbar + Real(0.5);
  return GaussianState::zero_mean(std::move(cm));
}

GaussianState partial_trace(const GaussianState& state, std::span<const std::size_t> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<bool> seen(state.n_modes(), false);
  for (std::size_t m : keep) {
    if (m >= state.n_modes()) throw std::out_of_range("partial_trace: mode index out of range");
    if (seen[m]) throw std::invalid_argument("partial_trace: duplicate mode index");
    seen[m] = true;
  }
  const auto n = static_cast<Eigen::Index>(keep.size());
  Vector mean(2 * n);
  Matrix cm(2 * n, 2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    mean.segment<2>(2 * a) = state.mode_mean(keep[a]);
    for (Eigen::Index b = 0; b < n; ++b) cm.block<2, 2>(2 * a, 2 * b) = state.block(keep[a], keep[b]);
  }
  return GaussianState(std::move(mean), std::move(cm));
}

GaussianState partial_trace(const GaussianState& state, std::initializer_list<std::size_t> keep) {
  return partial_trace(state, std::span<const std::size_t>(keep.begin(), keep.size()));
}

GaussianState heterodyne_condition(const GaussianState& state, std::size_t k,
                                   const Amplitude& alpha) {
  if (state.n_modes() < 2) throw std::invalid_argument("heterodyne_condition: need at least 2 modes");
  if (k >= state.n_modes()) throw std::out_of_range("heterodyne_condition: mode index out of range");
  if (!is_finite(alpha)) throw std::invalid_argument("heterodyne_condition: non-finite outcome");

  std::vector<std::size_t> kept;
  for (std::size_t m = 0; m < state.n_modes(); ++m)
    if (m != k) kept.push_back(m);
  const auto n = static_cast<Eigen::Index>(kept.size());

  Matrix a(2 * n, 2 * n);
  Matrix c(2 * n, 2);
  Vector mean_kept(2 * n);
  for (Eigen::Index p = 0; p < n; ++p) {
    mean_kept.segment<2>(2 * p) = state.mode_mean(kept[p]);
    c.block<2, 2>(2 * p, 0) = state.block(kept[p], k);
    for (Eigen::Index q = 0; q < n; ++q) a.block<2, 2>(2 * p, 2 * q) = state.block(kept[p], kept[q]);
  }
  // Projection onto a coherent state adds the vacuum covariance I/2.
  const Matrix2 w = state.block(k, k) + Matrix2::Identity() / 2;
  Eigen::LLT<Matrix2> llt(w);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("heterodyne_condition: measured block is not positive definite");
  const Matrix gain = llt.solve(c.transpose()).transpose();  // C W^-1

  Matrix cm = a - gain * c.transpose();
  const Vector2 innovation = quadratures_of(alpha) - state.mode_mean(k);
  Vector mean = mean_kept + gain * innovation;
  return GaussianState(std::move(mean), std::move(cm));
}

EprReport epr_variances(const GaussianState& state) {
  require_modes(state, 2, "epr_variances");
  const Matrix& v = state.cm();
  EprReport out;
  out.var_x_plus = v(0, 0) + v(2, 2) + 2 * v(0, 2);
  out.var_x_minus = v(0, 0) + v(2, 2) - 2 * v(0, 2);
  out.var_p_plus = v(1, 1) + v(3, 3) + 2 * v(1, 3);
  out.var_p_minus = v(1, 1) + v(3, 3) - 2 * v(1, 3);
  out.epr_plus = out.var_x_plus + out.var_p_minus < 2;
  out.epr_minus = out.var_x_minus + out.var_p_plus < 2;
  return out;
}

std::vector<Real> symplectic_spectrum(const Matrix& cm) {
  const Eigen::Index d = cm.rows();
  if (d == 0 || d % 2 != 0 || cm.cols() != d)
    throw std::invalid_argument("symplectic_spectrum: matrix must be square with even dimension");
  Eigen::LLT<Matrix> llt(cm);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("symplectic_spectrum: matrix is not positive definite");
  // With cm = L L^T, the antisymmetric L^T Omega L has eigenvalues +-i nu_k,
  // so M^T M carries each nu_k^2 twice.
  const Matrix l = llt.matrixL();
  const Matrix m = l.transpose() * SymplecticForm(static_cast<std::size_t>(d / 2)).matrix() * l;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.transpose() * m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("symplectic_spectrum: eigensolver failed");
  std::vector<Real> squares(es.eigenvalues().data(), es.eigenvalues().data() + d);
  std::sort(squares.begin(), squares.end());
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(d / 2));
  for (Eigen::Index i = 0; i < d; i += 2) {
    const Real pair_mean = (squares[i] + squares[i + 1]) / 2;
    out.push_back(sqrt(std::max(Real(0), pair_mean)));
  }
  return out;
}

std::vector<Real> symplectic_eigenvalues(const GaussianState& state) {
  return symplectic_spectrum(state.cm());
}

bool ppt_separable(const GaussianState& state) {
  require_modes(state, 2, "ppt_separable");
  // Partial transposition of mode 1 flips the sign of P1.
  Matrix flipped = state.cm();
  flipped.row(3) *= -1;
  flipped.col(3) *= -1;
  const std::vector<Real> nu = symplectic_spectrum(flipped);
  return nu.front() >= Real(0.5) - Real(kPsdTol);
}

}  // namespace cvnet
