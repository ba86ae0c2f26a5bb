#pragma once

// Evolution of the mirror (0), Stokes (1) and anti-Stokes (2) modes under
//
//   H = -i chi (a1 a0 - a1^+ a0^+) - i theta (a2 a0^+ - a2^+ a0).
//
// Only the ratio r = theta / chi and the scaled time t' = t sqrt(theta^2 - chi^2)
// enter. With c = 1/sqrt(r^2 - 1) and s = r/sqrt(r^2 - 1) the quadratures obey
//
//   dX0 = c X1 - s X2     dP0 = -c P1 - s P2
//   dX1 = c X0            dP1 = -c P0
//   dX2 = s X0            dP2 =  s P0
//
// The generator G satisfies G^3 = -G, so exp(G t') = I + G sin t' + G^2 (1 - cos t').

#include "cvnet/gaussian.hpp"
#include "cvnet/real.hpp"

namespace cvnet {

struct CouplingParams {
  Real r;     // theta / chi, strictly greater than 1
  Real nbar;  // thermal occupation of the mirror mode

  /// Throws std::domain_error unless r > 1 and nbar >= 0 (both finite).
  CouplingParams(Real r, Real nbar);
};

/// Entries of the three-mode covariance: Q's on the diagonal, T's off it.
struct CmCoefficients {
  Real q0, q1, q2;
  Real t0, t1, t2;
};

class SymplecticTransform {
 public:
  explicit SymplecticTransform(Matrix s) : s_(std::move(s)) {}

  const Matrix& matrix() const { return s_; }

  /// S V S^T and S m.
  GaussianState apply(const GaussianState& state) const;

 private:
  Matrix s_;
};

/// sqrt((omega0 + omega_m) / (omega0 - omega_m)) for carrier omega0 and
/// mechanical frequency omega_m.
Real coupling_ratio(const Real& omega0, const Real& omega_m);

/// Drift matrix of the scaled linear quadrature equations.
Matrix generator(const Real& r);

SymplecticTransform transfer_matrix(const Real& t_prime, const Real& r);

/// Three-mode state at scaled time t', starting from make_initial_state(nbar).
GaussianState evolve(const Real& t_prime, const CouplingParams& params);

/// Q/T entries of an evolved three-mode covariance. Throws ConsistencyError
/// if the covariance departs from the expected sign pattern.
CmCoefficients coefficients(const GaussianState& state);
CmCoefficients coefficients(const Real& t_prime, const CouplingParams& params);

/// Rebuilds the three-mode covariance from its Q/T entries.
Matrix assemble_cm(const CmCoefficients& q);

}  // namespace cvnet
