#pragma once

// Continuous-variable teleportation through a two-mode Gaussian channel with
// known drift.
//
// Alice (mode i) mixes the input with her half of the channel on a 50:50 beam
// splitter. With EPR+ correlations she measures (x+, p-), with EPR- she
// measures (x-, p+); Bob (mode j) displaces by her result plus an extra
// delta that compensates the channel drift. For a pure Gaussian input the
// averaged fidelity is
//
//   F = exp(-Q) / sqrt(det E),
//   E = 2 V_in + R A R + B +- (R C + C^T R),   R = diag(1, -1),
//   Q = D E^-1 D^T,
//   D = (-delta_re -+ d1 - d3, -delta_im +- d2 - d4),
//
// where (A, B, C) are the channel covariance blocks and (d1..d4) its drift,
// expressed as the coherent amplitudes of the two mode means.

#include "cvnet/gaussian.hpp"
#include "cvnet/real.hpp"

#include <cstddef>
#include <optional>

namespace cvnet {

enum class EprSign { plus, minus };

const char* to_string(EprSign sign);

/// Covariance [[a, 0, c, 0], [0, a, 0, c'], [c, 0, b, 0], [0, c', 0, b]].
struct StandardForm {
  Real a;
  Real b;
  Real c;
  Real c_prime;
};

class Channel {
 public:
  /// Two-mode state shared by Alice (first mode) and Bob (second mode).
  /// The labels record which network modes they are.
  Channel(GaussianState state, std::size_t alice_mode, std::size_t bob_mode);

  static Channel from_standard_form(const StandardForm& form, std::size_t alice_mode = 0,
                                    std::size_t bob_mode = 1, const Vector4& mean = Vector4::Zero());

  std::size_t alice_mode() const { return alice_mode_; }
  std::size_t bob_mode() const { return bob_mode_; }
  const GaussianState& state() const { return state_; }
  const Matrix& cm() const { return state_.cm(); }

  Matrix2 alice_block() const { return state_.block(0, 0); }
  Matrix2 bob_block() const { return state_.block(1, 1); }
  Matrix2 cross_block() const { return state_.block(0, 1); }

  /// Real quadrature means (X_i, P_i, X_j, P_j).
  const Vector& mean() const { return state_.mean(); }

  /// (d1, d2, d3, d4): Re/Im of Alice's and Bob's mean amplitudes. The
  /// characteristic function carries these as the drift 2i (d1, d2, d3, d4).
  Vector4 drift() const;

  /// Present iff the covariance has the standard-form block pattern.
  const std::optional<StandardForm>& standard_form() const { return standard_form_; }

  /// Same channel with Alice and Bob exchanged.
  Channel swapped() const;

 private:
  GaussianState state_;
  std::size_t alice_mode_;
  std::size_t bob_mode_;
  std::optional<StandardForm> standard_form_;
};

struct FidelityResult {
  Real fidelity;
  Matrix2 e_matrix;
  Real q_term;
  Amplitude delta_used;
};

/// Bob's extra displacement that cancels the channel drift (D = 0).
Amplitude optimal_displacement(const Channel& channel, EprSign sign);

/// Fidelity for a pure Gaussian input with covariance `input_cm`. The input
/// mean does not enter. Throws std::invalid_argument for mixed inputs.
FidelityResult fidelity_general(const Matrix2& input_cm, const Channel& channel, EprSign sign,
                                const Amplitude& delta);

/// Coherent-input fidelity of a standard-form channel with the drift
/// compensated: [(1 + <dX+-^2>)(1 + <dP-+^2>)]^(-1/2).
Real fidelity_coherent_standard(const Channel& channel, EprSign sign);

enum class ChannelClass { epr_channel, symmetric_classical, general };

const char* to_string(ChannelClass cls);

/// EPR channel iff c' = -c, symmetric classical iff c' = c != 0. For EPR
/// channels also checks that <dX+-^2> < 1 exactly when F+- > 1/2.
ChannelClass classify_channel(const Channel& channel);

}  // namespace cvnet
