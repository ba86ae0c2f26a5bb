#pragma once

// Multimode Gaussian states in symmetric ordering.
//
// Quadratures are interleaved (X0, P0, X1, P1, ...) with [X, P] = i, so the
// vacuum has covariance I/2 and the covariance entries are the quadrature
// variances themselves.

#include "cvnet/real.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace cvnet {

/// Raised when a dynamics or distillation result breaks a structural
/// identity that holds for every valid input. Signals a bug, not bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Block-diagonal symplectic form with [[0, 1], [-1, 0]] blocks.
class SymplecticForm {
 public:
  explicit SymplecticForm(std::size_t n_modes);

  std::size_t n_modes() const { return n_modes_; }
  const Matrix& matrix() const { return omega_; }

 private:
  std::size_t n_modes_;
  Matrix omega_;
};

class GaussianState {
 public:
  /// Validates shape, finiteness, symmetry and the uncertainty relation
  /// cm + (i/2) Omega >= 0. Throws std::invalid_argument on failure.
  GaussianState(Vector mean, Matrix cm);

  /// Zero-mean state with the given covariance.
  static GaussianState zero_mean(Matrix cm);

  std::size_t n_modes() const { return n_modes_; }
  const Vector& mean() const { return mean_; }
  const Matrix& cm() const { return cm_; }

  /// 2x2 covariance block between modes a and b.
  Matrix2 block(std::size_t a, std::size_t b) const;
  Vector2 mode_mean(std::size_t a) const;

 private:
  std::size_t n_modes_;
  Vector mean_;
  Matrix cm_;
};

struct EprReport {
  Real var_x_plus;
  Real var_x_minus;
  Real var_p_plus;
  Real var_p_minus;
  bool epr_plus;
  bool epr_minus;
};

/// Thermal state on mode 0 (mean occupation nbar) and vacua on modes 1, 2.
GaussianState make_initial_state(const Real& nbar);

/// Reduced state over `keep`, in the order given.
GaussianState partial_trace(const GaussianState& state, std::span<const std::size_t> keep);
GaussianState partial_trace(const GaussianState& state, std::initializer_list<std::size_t> keep);

/// Conditional state of the remaining modes (ascending order) after a
/// heterodyne measurement of mode k with outcome alpha.
GaussianState heterodyne_condition(const GaussianState& state, std::size_t k,
                                   const Amplitude& alpha);

EprReport epr_variances(const GaussianState& state);

/// Peres-Horodecki test for two-mode states.
bool ppt_separable(const GaussianState& state);

/// Symplectic eigenvalues in ascending order.
std::vector<Real> symplectic_eigenvalues(const GaussianState& state);

/// Same, for an arbitrary positive definite matrix (used on partial
/// transposes, which need not be physical).
std::vector<Real> symplectic_spectrum(const Matrix& cm);

/// True iff cm + i*nu*Omega is positive semidefinite up to `tol`.
bool satisfies_uncertainty(const Matrix& cm, const Real& nu = Real(0.5),
                           const Real& tol = Real(kPsdTol));

/// Real quadrature pair (sqrt2 Re a, sqrt2 Im a) of a coherent amplitude.
Vector2 quadratures_of(const Amplitude& a);

}  // namespace cvnet
