#include "cvnet/teleportation.hpp"

#include <algorithm>

namespace cvnet {

namespace {

// Relative tolerance for recognizing the standard-form block pattern.
constexpr double kStandardFormTol = 1e-30;
// Relative tolerance for c' = +-c in classify_channel.
constexpr double kClassTol = 1e-10;

std::optional<StandardForm> detect_standard_form(const Matrix& v) {
  Real scale = 1;
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) scale = std::max(scale, Real(abs(v(i, j))));
  const Real tol = kStandardFormTol * scale;
  auto close = [&](const Real& x, const Real& y) { return abs(x - y) <= tol; };
  auto zero = [&](const Real& x) { return abs(x) <= tol; };
  if (!close(v(0, 0), v(1, 1)) || !close(v(2, 2), v(3, 3))) return std::nullopt;
  if (!zero(v(0, 1)) || !zero(v(2, 3)) || !zero(v(0, 3)) || !zero(v(1, 2))) return std::nullopt;
  return StandardForm{v(0, 0), v(2, 2), v(0, 2), v(1, 3)};
}

Matrix standard_form_cm(const StandardForm& f) {
  Matrix v = Matrix::Zero(4, 4);
  v(0, 0) = v(1, 1) = f.a;
  v(2, 2) = v(3, 3) = f.b;
  v(0, 2) = v(2, 0) = f.c;
  v(1, 3) = v(3, 1) = f.c_prime;
  return v;
}

Real sign_value(EprSign sign) { return sign == EprSign::plus ? Real(1) : Real(-1); }

Matrix2 reflection() {
  Matrix2 r = Matrix2::Identity();
  r(1, 1) = -1;
  return r;
}

}  // namespace

const char* to_string(EprSign sign) { return sign == EprSign::plus ? "plus" : "minus"; }

const char* to_string(ChannelClass cls) {
  switch (cls) {
    case ChannelClass::epr_channel:
      return "epr_channel";
    case ChannelClass::symmetric_classical:
      return "symmetric_classical";
    case ChannelClass::general:
      return "general";
  }
  return "general";
}

Channel::Channel(GaussianState state, std::size_t alice_mode, std::size_t bob_mode)
    : state_(std::move(state)), alice_mode_(alice_mode), bob_mode_(bob_mode) {
  if (state_.n_modes() != 2) throw std::invalid_argument("a channel is a two-mode state");
  if (alice_mode_ == bob_mode_) throw std::invalid_argument("Alice and Bob must hold different modes");
  standard_form_ = detect_standard_form(state_.cm());
  if (standard_form_) {
    // Snap to the exact pattern so both representations agree bit for bit.
    state_ = GaussianState(state_.mean(), standard_form_cm(*standard_form_));
  }
}

Channel Channel::from_standard_form(const StandardForm& form, std::size_t alice_mode,
                                    std::size_t bob_mode, const Vector4& mean) {
  return Channel(GaussianState(Vector(mean), standard_form_cm(form)), alice_mode, bob_mode);
}

Vector4 Channel::drift() const { return Vector4(state_.mean()) / sqrt2(); }

Channel Channel::swapped() const {
  const Matrix& v = state_.cm();
  Matrix w(4, 4);
  w.block<2, 2>(0, 0) = v.block<2, 2>(2, 2);
  w.block<2, 2>(2, 2) = v.block<2, 2>(0, 0);
  w.block<2, 2>(0, 2) = v.block<2, 2>(2, 0);
  w.block<2, 2>(2, 0) = v.block<2, 2>(0, 2);
  Vector m(4);
  m.segment<2>(0) = state_.mean().segment<2>(2);
  m.segment<2>(2) = state_.mean().segment<2>(0);
  return Channel(GaussianState(std::move(m), std::move(w)), bob_mode_, alice_mode_);
}

Amplitude optimal_displacement(const Channel& channel, EprSign sign) {
  const Vector4 d = channel.drift();
  const Real pm = sign_value(sign);
  return {-pm * d(0) - d(2), pm * d(1) - d(3)};
}

FidelityResult fidelity_general(const Matrix2& input_cm, const Channel& channel, EprSign sign,
                                const Amplitude& delta) {
  if (!is_finite(delta)) throw std::invalid_argument("fidelity_general: non-finite displacement");
  if (abs(input_cm(0, 1) - input_cm(1, 0)) > kSymmetryTol * std::max(Real(1), Real(abs(input_cm(0, 0)))))
    throw std::invalid_argument("fidelity_general: input covariance is not symmetric");
  if (abs(input_cm.determinant() - Real(0.25)) > Real(1e-9) || input_cm(0, 0) <= 0)
    throw std::invalid_argument("fidelity_general: input must be a pure Gaussian state (det = 1/4)");

  const Matrix2 r = reflection();
  const Matrix2 a = channel.alice_block();
  const Matrix2 b = channel.bob_block();
  const Matrix2 c = channel.cross_block();
  const Real pm = sign_value(sign);

  Matrix2 e = 2 * input_cm + r * a * r + b + pm * (r * c + c.transpose() * r.transpose());
  e = (e + e.transpose()) / 2;
  const Real det = e.determinant();
  if (!(det > 0) || !(e(0, 0) > 0))
    throw std::invalid_argument("fidelity_general: E matrix is not positive definite");

  const Vector4 d = channel.drift();
  const Vector2 dv(-delta.re - pm * d(0) - d(2), -delta.im + pm * d(1) - d(3));
  const Real q = dv.dot(e.inverse() * dv);

  return {exp(-q) / sqrt(det), e, q, delta};
}

Real fidelity_coherent_standard(const Channel& channel, EprSign sign) {
  const auto& form = channel.standard_form();
  if (!form) throw std::invalid_argument("fidelity_coherent_standard: channel is not in standard form");
  const Real pm = sign_value(sign);
  const Real var_x = form->a + form->b + 2 * pm * form->c;        // <dX+-^2>
  const Real var_p = form->a + form->b - 2 * pm * form->c_prime;  // <dP-+^2>
  return 1 / sqrt((1 + var_x) * (1 + var_p));
}

ChannelClass classify_channel(const Channel& channel) {
  const auto& form = channel.standard_form();
  if (!form) return ChannelClass::general;
  const Real scale = std::max({Real(1), Real(abs(form->c)), Real(abs(form->c_prime))});
  const Real tol = kClassTol * scale;
  const bool c_zero = abs(form->c) <= tol && abs(form->c_prime) <= tol;
  if (c_zero) return ChannelClass::general;
  if (abs(form->c + form->c_prime) <= tol) {
    for (EprSign sign : {EprSign::plus, EprSign::minus}) {
      const Real var_x = form->a + form->b + 2 * sign_value(sign) * form->c;
      if (abs(var_x - 1) <= Real(1e-20)) continue;
      const bool epr = var_x < 1;
      const bool quantum = fidelity_coherent_standard(channel, sign) > Real(0.5);
      if (epr != quantum)
        throw ConsistencyError("EPR channel with EPR variance/fidelity mismatch");
    }
    return ChannelClass::epr_channel;
  }
  if (abs(form->c - form->c_prime) <= tol) return ChannelClass::symmetric_classical;
  return ChannelClass::general;
}

}  // namespace cvnet
