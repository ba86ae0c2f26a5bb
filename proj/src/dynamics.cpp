#include "cvnet/dynamics.hpp"

#include <string>

namespace cvnet {

namespace {

// Off-pattern entries of an evolved covariance must vanish to this level.
constexpr double kPatternTol = 1e-9;

struct RateConstants {
  Real c;  // chi / sqrt(theta^2 - chi^2)
  Real s;  // theta / sqrt(theta^2 - chi^2)
};

RateConstants rate_constants(const Real& r) {
  if (!is_finite(r) || r <= 1) throw std::domain_error("coupling ratio r must be finite and > 1");
  // (r - 1)(r + 1) rather than r^2 - 1 keeps the small difference exact.
  const Real root = sqrt((r - 1) * (r + 1));
  return {1 / root, r / root};
}

}  // namespace

CouplingParams::CouplingParams(Real r_in, Real nbar_in) : r(std::move(r_in)), nbar(std::move(nbar_in)) {
  if (!is_finite(r) || r <= 1) throw std::domain_error("coupling ratio r must be finite and > 1");
  if (!is_finite(nbar) || nbar < 0)
    throw std::domain_error("mean thermal occupation must be finite and non-negative");
}

GaussianState SymplecticTransform::apply(const GaussianState& state) const {
  if (s_.rows() != state.cm().rows()) throw std::invalid_argument("transform dimension mismatch");
  return GaussianState(s_ * state.mean(), s_ * state.cm() * s_.transpose());
}

Real coupling_ratio(const Real& omega0, const Real& omega_m) {
  if (!is_finite(omega0) || !is_finite(omega_m) || omega_m <= 0 || omega0 <= omega_m)
    throw std::domain_error("coupling_ratio requires omega0 > omega_m > 0");
  return sqrt((omega0 + omega_m) / (omega0 - omega_m));
}

Matrix generator(const Real& r) {
  const auto [c, s] = rate_constants(r);
  Matrix g = Matrix::Zero(6, 6);
  // X rows
  g(0, 2) = c;
  g(0, 4) = -s;
  g(2, 0) = c;
  g(4, 0) = s;
  // P rows
  g(1, 3) = -c;
  g(1, 5) = -s;
  g(3, 1) = -c;
  g(5, 1) = s;
  return g;
}

SymplecticTransform transfer_matrix(const Real& t_prime, const Real& r) {
  if (!is_finite(t_prime)) throw std::domain_error("scaled time must be finite");
  const Matrix g = generator(r);
  const Real period = two_pi();
  const Real reduced = t_prime - period * floor(t_prime / period);
  const Real sin_t = sin(reduced);
  const Real half_sin = sin(reduced / 2);
  const Real one_minus_cos = 2 * half_sin * half_sin;
  Matrix s = Matrix::Identity(6, 6) + g * sin_t + (g * g) * one_minus_cos;
  return SymplecticTransform(std::move(s));
}

GaussianState evolve(const Real& t_prime, const CouplingParams& params) {
  return transfer_matrix(t_prime, params.r).apply(make_initial_state(params.nbar));
}

CmCoefficients coefficients(const GaussianState& state) {
  if (state.n_modes() != 3) throw std::invalid_argument("coefficients: expected a 3-mode state");
  const Matrix& v = state.cm();
  CmCoefficients q{v(0, 0), v(2, 2), v(4, 4), v(2, 4), -v(0, 4), v(0, 2)};
  const Matrix expected = assemble_cm(q);
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 6; ++j)
      if (abs(v(i, j) - expected(i, j)) > kPatternTol)
        throw ConsistencyError("covariance entry (" + std::to_string(i) + "," + std::to_string(j) +
                               ") departs from the three-mode sign pattern");
  return q;
}

CmCoefficients coefficients(const Real& t_prime, const CouplingParams& params) {
  return coefficients(evolve(t_prime, params));
}

Matrix assemble_cm(const CmCoefficients& q) {
  Matrix v = Matrix::Zero(6, 6);
  v(0, 0) = v(1, 1) = q.q0;
  v(2, 2) = v(3, 3) = q.q1;
  v(4, 4) = v(5, 5) = q.q2;
  v(0, 2) = v(2, 0) = q.t2;
  v(1, 3) = v(3, 1) = -q.t2;
  v(0, 4) = v(4, 0) = -q.t1;
  v(1, 5) = v(5, 1) = -q.t1;
  v(2, 4) = v(4, 2) = q.t0;
  v(3, 5) = v(5, 3) = -q.t0;
  return v;
}

}  // namespace cvnet
