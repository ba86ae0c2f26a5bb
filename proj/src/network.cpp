#include "cvnet/network.hpp"

#include "cvnet/parallel.hpp"

#include <array>

namespace cvnet {

namespace {

constexpr double kBisectionTol = 1e-9;
constexpr double kGoldenTol = 1e-18;

void require_mode(std::size_t k) {
  if (k > 2) throw std::out_of_range("discarded mode must be 0, 1 or 2");
}

Channel as_channel(GaussianState two_mode, std::size_t k) {
  const auto [i, j] = remaining_modes(k);
  return Channel(std::move(two_mode), i, j);
}

Real trace_minus(const Real& t, const CouplingParams& params, std::size_t k) {
  return fidelity_coherent_standard(distill_trace(t, params, k), EprSign::minus);
}

}  // namespace

const char* to_string(DistillMethod method) {
  return method == DistillMethod::trace ? "trace" : "het";
}

std::pair<std::size_t, std::size_t> remaining_modes(std::size_t k) {
  require_mode(k);
  static constexpr std::array<std::pair<std::size_t, std::size_t>, 3> pairs{{{1, 2}, {0, 2}, {0, 1}}};
  return pairs[k];
}

Channel distill_trace(const Real& t_prime, const CouplingParams& params, std::size_t k) {
  const auto [i, j] = remaining_modes(k);
  return as_channel(partial_trace(evolve(t_prime, params), {i, j}), k);
}

Channel distill_heterodyne(const Real& t_prime, const CouplingParams& params, std::size_t k,
                           const Amplitude& alpha) {
  require_mode(k);
  return as_channel(heterodyne_condition(evolve(t_prime, params), k, alpha), k);
}

Channel distill(const Real& t_prime, const DistillConfig& config) {
  Channel channel = config.method == DistillMethod::trace
                        ? distill_trace(t_prime, config.params, config.discarded_mode)
                        : distill_heterodyne(t_prime, config.params, config.discarded_mode, config.alpha);
  return config.swap_roles ? channel.swapped() : channel;
}

Real distilled_fidelity(const Real& t_prime, const DistillConfig& config, EprSign sign) {
  return fidelity_coherent_standard(distill(t_prime, config), sign);
}

std::vector<Real> linear_grid(const Real& lo, const Real& hi, std::size_t n) {
  if (n == 0) throw std::invalid_argument("grid needs at least one point");
  if (!is_finite(lo) || !is_finite(hi) || hi < lo)
    throw std::invalid_argument("grid bounds must be finite with lo <= hi");
  std::vector<Real> grid(n);
  if (n == 1) {
    grid[0] = lo;
    return grid;
  }
  for (std::size_t i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * Real(i) / Real(n - 1);
  return grid;
}

std::vector<Real> default_grid() {
  const Real centre = two_pi();
  return linear_grid(centre - Real(1.5), centre + Real(1.5), 2001);
}

FidelityCurve fidelity_curve(const DistillConfig& config, const std::vector<Real>& grid) {
  if (grid.empty()) throw std::invalid_argument("fidelity_curve: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i - 1] < grid[i])) throw std::invalid_argument("fidelity_curve: grid must be ascending");
  require_mode(config.discarded_mode);

  FidelityCurve curve{config, grid, std::vector<Real>(grid.size()), std::vector<Real>(grid.size())};
  parallel_for(grid.size(), [&](std::size_t i) {
    const Channel channel = distill(grid[i], config);
    curve.f_plus[i] = fidelity_coherent_standard(channel, EprSign::plus);
    curve.f_minus[i] = fidelity_coherent_standard(channel, EprSign::minus);
  });
  return curve;
}

Milestones milestones(const CouplingParams& params) {
  const Real& r = params.r;
  Milestones m;
  m.f2_max = (1 + r) * (1 + r) / (1 + 2 * r * (1 + r));
  m.varsigma = acos(2 / (r * r) - 1);
  m.t_max = m.varsigma / 2 + two_pi();
  m.f0_at_pi = Real(0.5) + r / (r * r + 1);
  m.boundary_value = 1 / (2 + params.nbar);
  return m;
}

Extremum maximize_fidelity(const DistillConfig& config, EprSign sign, const Real& lo, const Real& hi,
                           std::size_t scan_points) {
  if (scan_points < 3) throw std::invalid_argument("maximize_fidelity: need at least 3 scan points");
  const std::vector<Real> grid = linear_grid(lo, hi, scan_points);
  std::vector<Real> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { values[i] = distilled_fidelity(grid[i], config, sign); });

  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;

  Real a = grid[best == 0 ? 0 : best - 1];
  Real b = grid[best + 1 == grid.size() ? best : best + 1];
  const Real inv_phi = (sqrt(Real(5)) - 1) / 2;
  Real x1 = b - inv_phi * (b - a);
  Real x2 = a + inv_phi * (b - a);
  Real f1 = distilled_fidelity(x1, config, sign);
  Real f2 = distilled_fidelity(x2, config, sign);
  while (b - a > kGoldenTol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = distilled_fidelity(x2, config, sign);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = distilled_fidelity(x1, config, sign);
    }
  }
  Extremum out{(a + b) / 2, distilled_fidelity((a + b) / 2, config, sign)};
  if (values[best] > out.value) out = {grid[best], values[best]};
  return out;
}

std::optional<TimeInterval> telecloning_interval(const CouplingParams& params, const Real& bracket_lo,
                                                 const Real& bracket_hi) {
  const Real centre = two_pi();
  if (!(bracket_lo < centre && centre < bracket_hi))
    throw std::invalid_argument("telecloning_interval: bracket must contain 2 pi");
  const Real t_max = milestones(params).t_max;
  if (!(t_max < bracket_hi)) throw std::invalid_argument("telecloning_interval: bracket ends before t_max");

  auto gap = [&](const Real& t) { return trace_minus(t, params, 2) - trace_minus(t, params, 0); };
  if (!(gap(t_max) > 0)) return std::nullopt;

  // Bisects with gap(negative_end) < 0 < gap(positive_end).
  auto bisect = [&](Real negative_end, Real positive_end) -> std::optional<Real> {
    if (!(gap(negative_end) < 0)) return std::nullopt;
    while (abs(positive_end - negative_end) > kBisectionTol) {
      const Real mid = (negative_end + positive_end) / 2;
      const Real g = gap(mid);
      if (g == 0) return mid;
      (g < 0 ? negative_end : positive_end) = mid;
    }
    return (negative_end + positive_end) / 2;
  };
  const auto lower = bisect(bracket_lo, t_max);
  const auto upper = bisect(bracket_hi, t_max);
  if (!lower || !upper) return std::nullopt;
  return TimeInterval{*lower, *upper};
}

std::optional<TimeInterval> telecloning_interval(const CouplingParams& params) {
  const Real centre = two_pi();
  return telecloning_interval(params, centre - Real(0.5), centre + Real(0.5));
}

TelecloneFidelities teleclone(const Real& t_prime, const CouplingParams& params) {
  // Port is the Stokes mode 1 in both channels.
  const Channel to_mirror = distill_trace(t_prime, params, 2).swapped();
  const Channel to_anti_stokes = distill_trace(t_prime, params, 0);
  return {fidelity_coherent_standard(to_mirror, EprSign::minus),
          fidelity_coherent_standard(to_anti_stokes, EprSign::minus)};
}

}  // namespace cvnet
