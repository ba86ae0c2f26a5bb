#pragma once

// Three-mode teleportation network: distill a two-mode channel by tracing
// out or heterodyning the third mode, sweep fidelity curves, and evaluate
// the closed-form milestones of the trace-out curves near t' = 2 pi.

#include "cvnet/dynamics.hpp"
#include "cvnet/teleportation.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace cvnet {

enum class DistillMethod { trace, heterodyne };

const char* to_string(DistillMethod method);

struct DistillConfig {
  std::size_t discarded_mode = 0;
  DistillMethod method = DistillMethod::trace;
  Amplitude alpha{};  // heterodyne outcome; ignored for trace
  CouplingParams params{Real(2), Real(0)};
  /// Give Alice the higher-numbered remaining mode instead of the lower one.
  bool swap_roles = false;
};

/// The two modes left after discarding k, ascending.
std::pair<std::size_t, std::size_t> remaining_modes(std::size_t k);

Channel distill_trace(const Real& t_prime, const CouplingParams& params, std::size_t k);
Channel distill_heterodyne(const Real& t_prime, const CouplingParams& params, std::size_t k,
                           const Amplitude& alpha);
Channel distill(const Real& t_prime, const DistillConfig& config);

/// Coherent-input fidelity with the drift-compensating displacement.
Real distilled_fidelity(const Real& t_prime, const DistillConfig& config, EprSign sign);

struct FidelityCurve {
  DistillConfig config;
  std::vector<Real> grid;
  std::vector<Real> f_plus;
  std::vector<Real> f_minus;
};

/// n evenly spaced points from lo to hi inclusive (n >= 1; n == 1 gives lo).
std::vector<Real> linear_grid(const Real& lo, const Real& hi, std::size_t n);

/// 2001 points over [2 pi - 1.5, 2 pi + 1.5].
std::vector<Real> default_grid();

/// Grid points are evaluated in parallel; output order follows the grid.
FidelityCurve fidelity_curve(const DistillConfig& config, const std::vector<Real>& grid);

struct Milestones {
  Real f2_max;          // peak of F-^(2) (trace) after 2 pi
  Real t_max;           // its location, 2 pi + varsigma / 2
  Real varsigma;        // arccos(2 / r^2 - 1)
  Real f0_at_pi;        // F-^(0) (trace) at t' = pi
  Real boundary_value;  // F-^(2) at t_max -+ varsigma / 2, i.e. 1 / (2 + nbar)
};

Milestones milestones(const CouplingParams& params);

struct Extremum {
  Real t_prime;
  Real value;
};

/// Maximum of a distilled fidelity over [lo, hi]: a scan of `scan_points`
/// samples followed by golden-section refinement around the best one.
Extremum maximize_fidelity(const DistillConfig& config, EprSign sign, const Real& lo, const Real& hi,
                           std::size_t scan_points = 2001);

struct TimeInterval {
  Real lo;
  Real hi;
};

/// Roots of F-^(2) = F-^(0) (trace-out curves) on either side of t_max,
/// bisected to 1e-9. Empty if either side of the bracket shows no sign change.
std::optional<TimeInterval> telecloning_interval(const CouplingParams& params, const Real& bracket_lo,
                                                 const Real& bracket_hi);
std::optional<TimeInterval> telecloning_interval(const CouplingParams& params);

struct TelecloneFidelities {
  Real f_bob0;      // port 1 -> receiver 0, F-^(2)
  Real f_charlie2;  // port 1 -> receiver 2, F-^(0)
};

/// Alice holds the Stokes mode and measures (x-, p+); the mirror and the
/// anti-Stokes mode both displace by her result.
TelecloneFidelities teleclone(const Real& t_prime, const CouplingParams& params);

}  // namespace cvnet
